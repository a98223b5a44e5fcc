#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace pw::kern {

namespace {

void pad_vec(avec& v, std::size_t padded, double fill) { v.resize(padded, fill); }

#if defined(__x86_64__) || defined(_M_X64)
void cpuid(int leaf, int sub, uint32_t out[4]) {
  uint32_t a, b, c, d;
  asm volatile("cpuid" : "=a"(a), "=b"(b), "=c"(c), "=d"(d) : "a"(leaf), "c"(sub));
  out[0] = a;
  out[1] = b;
  out[2] = c;
  out[3] = d;
}

uint64_t xgetbv0() {
  uint32_t eax, edx;
  asm volatile(".byte 0x0f, 0x01, 0xd0" : "=a"(eax), "=d"(edx) : "c"(0u));
  return (static_cast<uint64_t>(edx) << 32) | eax;
}

bool cpu_has_avx2() {
  uint32_t r[4];
  cpuid(1, 0, r);
  const bool osxsave = r[2] & (1u << 27);
  const bool avx = r[2] & (1u << 28);
  const bool fma = r[2] & (1u << 12);
  if (!(osxsave && avx && fma)) return false;
  if ((xgetbv0() & 0x6) != 0x6) return false;  // xmm+ymm state
  cpuid(7, 0, r);
  return (r[1] & (1u << 5)) != 0;
}

bool cpu_has_avx512f() {
  if (!cpu_has_avx2()) return false;
  if ((xgetbv0() & 0xe6) != 0xe6) return false;  // +opmask, zmm state
  uint32_t r[4];
  cpuid(7, 0, r);
  return (r[1] & (1u << 16)) != 0;
}
#else
bool cpu_has_avx2() { return false; }
bool cpu_has_avx512f() { return false; }
#endif

const KernelSet* lookup(std::string_view name) {
  if (name == "scalar") return &scalar_kernels_impl();
#ifdef PW_WITH_AVX2
  if (name == "avx2" && cpu_has_avx2()) return &avx2_kernels_impl();
#endif
#ifdef PW_WITH_AVX512
  if (name == "avx512" && cpu_has_avx512f()) return &avx512_kernels_impl();
#endif
  return nullptr;
}

const KernelSet* best_available() {
#ifdef PW_WITH_AVX512
  if (cpu_has_avx512f()) return &avx512_kernels_impl();
#endif
#ifdef PW_WITH_AVX2
  if (cpu_has_avx2()) return &avx2_kernels_impl();
#endif
  return &scalar_kernels_impl();
}

const KernelSet* initial_choice() {
  if (const char* env = std::getenv("PW_KERNEL_ISA")) {
    if (const KernelSet* ks = lookup(env)) return ks;
  }
  return best_available();
}

std::atomic<const KernelSet*>& active_slot() {
  static std::atomic<const KernelSet*> slot{initial_choice()};
  return slot;
}

}  // namespace

void NodeGrid::pad(std::size_t multiple) {
  padded = (n + multiple - 1) / multiple * multiple;
  pad_vec(k, padded, 1.0);
  pad_vec(ek_hbar, padded, 0.0);
  pad_vec(coeff_re, padded, 0.0);
  pad_vec(coeff_im, padded, 0.0);
}

void RegionTable::pad(std::size_t multiple) {
  padded = (n + multiple - 1) / multiple * multiple;
  pad_vec(a_re, padded, 1.0);
  pad_vec(a_im, padded, 0.0);
  pad_vec(c1_re, padded, 0.0);
  pad_vec(c1_im, padded, 0.0);
  pad_vec(c2_re, padded, 0.0);
  pad_vec(c2_im, padded, 0.0);
}

void RegionTable::finalize() {
  s_re.resize(padded);
  s_im.resize(padded);
  d_re.resize(padded);
  d_im.resize(padded);
  oscillatory = true;
  for (std::size_t i = 0; i < padded; ++i) {
    s_re[i] = c1_re[i] + c2_re[i];
    s_im[i] = c1_im[i] + c2_im[i];
    d_re[i] = c1_re[i] - c2_re[i];
    d_im[i] = c1_im[i] - c2_im[i];
    if (a_im[i] != 0.0) oscillatory = false;
  }
}

const KernelSet& scalar_kernels() { return scalar_kernels_impl(); }

std::vector<const KernelSet*> available_kernels() {
  std::vector<const KernelSet*> out{&scalar_kernels_impl()};
#ifdef PW_WITH_AVX2
  if (cpu_has_avx2()) out.push_back(&avx2_kernels_impl());
#endif
#ifdef PW_WITH_AVX512
  if (cpu_has_avx512f()) out.push_back(&avx512_kernels_impl());
#endif
  return out;
}

const KernelSet& active_kernels() { return *active_slot().load(std::memory_order_relaxed); }

bool set_active_kernels(std::string_view name) {
  const KernelSet* ks = (name == "auto") ? best_available() : lookup(name);
  if (!ks) return false;
  active_slot().store(ks, std::memory_order_relaxed);
  return true;
}

}  // namespace pw::kern
