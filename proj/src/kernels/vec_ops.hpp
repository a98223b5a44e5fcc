// Minimal double-precision SIMD wrappers for the wave kernels.  One struct
// per ISA; each kernel TU is compiled with the matching -m flags and
// instantiates the shared body against one of these.
#pragma once

#include <cmath>
#include <cstdint>

#if defined(__AVX2__) || defined(__AVX512F__)
#include <immintrin.h>
#endif

namespace pw::kern {

struct OpsScalar {
  using V = double;
  using M = bool;
  static constexpr int W = 1;
  static const char* name() { return "scalar"; }

  static V load(const double* p) { return *p; }
  static void store(double* p, V v) { *p = v; }
  static V set1(double x) { return x; }
  static V zero() { return 0.0; }
  static V add(V a, V b) { return a + b; }
  static V sub(V a, V b) { return a - b; }
  static V mul(V a, V b) { return a * b; }
  static V div(V a, V b) { return a / b; }
  static V neg(V a) { return -a; }
  static V fmadd(V a, V b, V c) { return a * b + c; }
  static V fnmadd(V a, V b, V c) { return c - a * b; }
  static V rint(V a) { return std::nearbyint(a); }
  static V floor_(V a) { return std::floor(a); }
  static M eq(V a, V b) { return a == b; }
  static M or_(M a, M b) { return a || b; }
  static V blend(M m, V a, V b) { return m ? a : b; }
  static V pow2i(V n) { return std::ldexp(1.0, static_cast<int>(n)); }
  static double reduce(V a) { return a; }
};

#ifdef __AVX2__
struct OpsAvx2 {
  using V = __m256d;
  using M = __m256d;
  static constexpr int W = 4;
  static const char* name() { return "avx2"; }

  static V load(const double* p) { return _mm256_load_pd(p); }
  static void store(double* p, V v) { _mm256_store_pd(p, v); }
  static V set1(double x) { return _mm256_set1_pd(x); }
  static V zero() { return _mm256_setzero_pd(); }
  static V add(V a, V b) { return _mm256_add_pd(a, b); }
  static V sub(V a, V b) { return _mm256_sub_pd(a, b); }
  static V mul(V a, V b) { return _mm256_mul_pd(a, b); }
  static V div(V a, V b) { return _mm256_div_pd(a, b); }
  static V neg(V a) { return _mm256_xor_pd(a, _mm256_set1_pd(-0.0)); }
  static V fmadd(V a, V b, V c) { return _mm256_fmadd_pd(a, b, c); }
  static V fnmadd(V a, V b, V c) { return _mm256_fnmadd_pd(a, b, c); }
  static V rint(V a) { return _mm256_round_pd(a, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC); }
  static V floor_(V a) { return _mm256_floor_pd(a); }
  static M eq(V a, V b) { return _mm256_cmp_pd(a, b, _CMP_EQ_OQ); }
  static M or_(M a, M b) { return _mm256_or_pd(a, b); }
  static V blend(M m, V a, V b) { return _mm256_blendv_pd(b, a, m); }
  static V pow2i(V n) {
    __m128i i32 = _mm256_cvtpd_epi32(n);
    __m256i i64 = _mm256_cvtepi32_epi64(i32);
    i64 = _mm256_add_epi64(i64, _mm256_set1_epi64x(1023));
    i64 = _mm256_slli_epi64(i64, 52);
    return _mm256_castsi256_pd(i64);
  }
  static double reduce(V a) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, a);
    return ((lane[0] + lane[1]) + lane[2]) + lane[3];
  }
};
#endif  // __AVX2__

#ifdef __AVX512F__
struct OpsAvx512 {
  using V = __m512d;
  using M = __mmask8;
  static constexpr int W = 8;
  static const char* name() { return "avx512"; }

  static V load(const double* p) { return _mm512_load_pd(p); }
  static void store(double* p, V v) { _mm512_store_pd(p, v); }
  static V set1(double x) { return _mm512_set1_pd(x); }
  static V zero() { return _mm512_setzero_pd(); }
  static V add(V a, V b) { return _mm512_add_pd(a, b); }
  static V sub(V a, V b) { return _mm512_sub_pd(a, b); }
  static V mul(V a, V b) { return _mm512_mul_pd(a, b); }
  static V div(V a, V b) { return _mm512_div_pd(a, b); }
  static V neg(V a) {
    return _mm512_castsi512_pd(
        _mm512_xor_si512(_mm512_castpd_si512(a), _mm512_castpd_si512(_mm512_set1_pd(-0.0))));
  }
  static V fmadd(V a, V b, V c) { return _mm512_fmadd_pd(a, b, c); }
  static V fnmadd(V a, V b, V c) { return _mm512_fnmadd_pd(a, b, c); }
  static V rint(V a) { return _mm512_roundscale_pd(a, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC); }
  static V floor_(V a) { return _mm512_roundscale_pd(a, _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC); }
  static M eq(V a, V b) { return _mm512_cmp_pd_mask(a, b, _CMP_EQ_OQ); }
  static M or_(M a, M b) { return static_cast<M>(a | b); }
  static V blend(M m, V a, V b) { return _mm512_mask_blend_pd(m, b, a); }
  static V pow2i(V n) {
    __m256i i32 = _mm512_cvtpd_epi32(n);
    __m512i i64 = _mm512_cvtepi32_epi64(i32);
    i64 = _mm512_add_epi64(i64, _mm512_set1_epi64(1023));
    i64 = _mm512_slli_epi64(i64, 52);
    return _mm512_castsi512_pd(i64);
  }
  static double reduce(V a) {
    alignas(64) double lane[8];
    _mm512_store_pd(lane, a);
    double s = lane[0];
    for (int i = 1; i < 8; ++i) s += lane[i];
    return s;
  }
};
#endif  // __AVX512F__

}  // namespace pw::kern
