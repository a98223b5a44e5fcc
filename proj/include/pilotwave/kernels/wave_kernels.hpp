#pragma once

#include <complex>
#include <cstddef>
#include <cstdlib>
#include <new>
#include <string_view>
#include <vector>

namespace pw::kern {

/// 64-byte-aligned allocator so kernel tables can use aligned loads.
template <class T, std::size_t Align = 64>
struct AlignedAllocator {
  using value_type = T;
  template <class U>
  struct rebind {
    using other = AlignedAllocator<U, Align>;
  };
  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U, Align>&) {}

  T* allocate(std::size_t n) {
    void* p = ::operator new(n * sizeof(T), std::align_val_t{Align});
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, std::align_val_t{Align}); }

  template <class U>
  bool operator==(const AlignedAllocator<U, Align>&) const { return true; }
};

using avec = std::vector<double, AlignedAllocator<double>>;

/// Per-node quantities shared by all spatial regions of a synthesized wave:
/// quadrature node k, E_k/hbar, and the combined weight w_k psitilde(k)
/// (normalization folded in).  Arrays are padded with zero-weight nodes to a
/// lane-width multiple so kernels run full vectors only.
struct NodeGrid {
  avec k, ek_hbar, coeff_re, coeff_im;
  std::size_t n = 0;         // logical node count
  std::size_t padded = 0;

  void pad(std::size_t multiple);
};

/// Region-specific exponential-sum table: each node contributes
///   c1 e^{i alpha x} + c2 e^{-i alpha x},  alpha = a_re + i a_im.
/// Sum/difference coefficient forms are precomputed for the oscillatory
/// (a_im == 0) fast path.
struct RegionTable {
  avec a_re, a_im;
  avec c1_re, c1_im, c2_re, c2_im;
  avec s_re, s_im, d_re, d_im;  // c1 +/- c2
  std::size_t n = 0;
  std::size_t padded = 0;
  bool oscillatory = true;

  void pad(std::size_t multiple);
  void finalize();  // fills sum/diff arrays and the oscillatory flag
};

struct WaveEval {
  std::complex<double> value{0.0, 0.0};
  std::complex<double> deriv{0.0, 0.0};
};

/// One ISA variant of the inner-loop kernels.
struct KernelSet {
  const char* name;
  int width;
  /// p = coeff * e^{-i (E_k/hbar) t} per node.
  void (*phase_weights)(const NodeGrid&, double t, double* p_re, double* p_im);
  /// Accumulated (value, d/dx) of sum_k p_k (c1 e^{iax} + c2 e^{-iax}), a real.
  WaveEval (*exp_sum_osc)(const RegionTable&, const double* p_re, const double* p_im, double x);
  /// Same with complex alpha (evanescent interior nodes).
  WaveEval (*exp_sum_mixed)(const RegionTable&, const double* p_re, const double* p_im, double x);
};

const KernelSet& scalar_kernels();

/// All variants the running CPU supports, scalar first.
std::vector<const KernelSet*> available_kernels();

/// Best supported variant; PW_KERNEL_ISA=scalar|avx2|avx512 overrides once at
/// startup.
const KernelSet& active_kernels();

/// Force a variant by name ("auto" re-dispatches).  Returns false if the
/// variant is not available on this CPU.
bool set_active_kernels(std::string_view name);

}  // namespace pw::kern
