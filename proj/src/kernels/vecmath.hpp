// Vectorized sin/cos/exp (double), Cephes/fdlibm-style: Cody-Waite range
// reduction plus minimax kernels.  Valid for |x| up to ~1e5 (sincos) and
// |x| up to ~700 (exp); the wave kernels stay far inside both.
#pragma once

namespace pw::kern {

namespace vm {
// pi/2 split for Cody-Waite reduction (fdlibm).
inline constexpr double kTwoOverPi = 6.36619772367581382433e-01;
inline constexpr double kPio2Hi = 1.57079632673412561417e+00;
inline constexpr double kPio2Mid = 6.07710050650619224932e-11;
inline constexpr double kPio2Lo = 2.02226624879595063154e-21;

inline constexpr double kS1 = -1.66666666666666324348e-01;
inline constexpr double kS2 = 8.33333333332248946124e-03;
inline constexpr double kS3 = -1.98412698298579493134e-04;
inline constexpr double kS4 = 2.75573137070700676789e-06;
inline constexpr double kS5 = -2.50507602534068634195e-08;
inline constexpr double kS6 = 1.58969099521155010221e-10;

inline constexpr double kC1 = 4.16666666666666019037e-02;
inline constexpr double kC2 = -1.38888888888741095749e-03;
inline constexpr double kC3 = 2.48015872894767294178e-05;
inline constexpr double kC4 = -2.75573143513906633035e-07;
inline constexpr double kC5 = 2.08757232129817482790e-09;
inline constexpr double kC6 = -1.13596475577881948265e-11;

inline constexpr double kLog2E = 1.44269504088896340736;
inline constexpr double kLn2Hi = 6.93145751953125e-01;
inline constexpr double kLn2Lo = 1.42860682030941723212e-06;

inline constexpr double kEP0 = 1.26177193074810590878e-04;
inline constexpr double kEP1 = 3.02994407707441961300e-02;
inline constexpr double kEP2 = 9.99999999999999999910e-01;
inline constexpr double kEQ0 = 3.00198505138664455042e-06;
inline constexpr double kEQ1 = 2.52448340349684104192e-03;
inline constexpr double kEQ2 = 2.27265548208155028766e-01;
inline constexpr double kEQ3 = 2.00000000000000000005e+00;
}  // namespace vm

template <class O>
inline void vsincos(typename O::V x, typename O::V& sin_out, typename O::V& cos_out) {
  using V = typename O::V;
  const V j = O::rint(O::mul(x, O::set1(vm::kTwoOverPi)));
  // z = x - j*pi/2, three-term reduction
  V z = O::fnmadd(j, O::set1(vm::kPio2Hi), x);
  z = O::fnmadd(j, O::set1(vm::kPio2Mid), z);
  z = O::fnmadd(j, O::set1(vm::kPio2Lo), z);

  const V zz = O::mul(z, z);

  V sp = O::set1(vm::kS6);
  sp = O::fmadd(sp, zz, O::set1(vm::kS5));
  sp = O::fmadd(sp, zz, O::set1(vm::kS4));
  sp = O::fmadd(sp, zz, O::set1(vm::kS3));
  sp = O::fmadd(sp, zz, O::set1(vm::kS2));
  sp = O::fmadd(sp, zz, O::set1(vm::kS1));
  const V sk = O::fmadd(O::mul(sp, zz), z, z);  // z + z^3 * poly

  V cp = O::set1(vm::kC6);
  cp = O::fmadd(cp, zz, O::set1(vm::kC5));
  cp = O::fmadd(cp, zz, O::set1(vm::kC4));
  cp = O::fmadd(cp, zz, O::set1(vm::kC3));
  cp = O::fmadd(cp, zz, O::set1(vm::kC2));
  cp = O::fmadd(cp, zz, O::set1(vm::kC1));
  V ck = O::fmadd(cp, O::mul(zz, zz), O::fnmadd(zz, O::set1(0.5), O::set1(1.0)));

  // quadrant jm = j mod 4 in {0,1,2,3}
  const V jm = O::fnmadd(O::set1(4.0), O::floor_(O::mul(j, O::set1(0.25))), j);
  const auto m1 = O::eq(jm, O::set1(1.0));
  const auto m2 = O::eq(jm, O::set1(2.0));
  const auto m3 = O::eq(jm, O::set1(3.0));
  const auto swap = O::or_(m1, m3);
  const auto sneg = O::or_(m2, m3);
  const auto cneg = O::or_(m1, m2);

  V s = O::blend(swap, ck, sk);
  V c = O::blend(swap, sk, ck);
  sin_out = O::blend(sneg, O::neg(s), s);
  cos_out = O::blend(cneg, O::neg(c), c);
}

template <class O>
inline typename O::V vexp(typename O::V x) {
  using V = typename O::V;
  const V n = O::rint(O::mul(x, O::set1(vm::kLog2E)));
  V r = O::fnmadd(n, O::set1(vm::kLn2Hi), x);
  r = O::fnmadd(n, O::set1(vm::kLn2Lo), r);

  const V rr = O::mul(r, r);
  V p = O::set1(vm::kEP0);
  p = O::fmadd(p, rr, O::set1(vm::kEP1));
  p = O::fmadd(p, rr, O::set1(vm::kEP2));
  const V px = O::mul(r, p);

  V q = O::set1(vm::kEQ0);
  q = O::fmadd(q, rr, O::set1(vm::kEQ1));
  q = O::fmadd(q, rr, O::set1(vm::kEQ2));
  q = O::fmadd(q, rr, O::set1(vm::kEQ3));

  const V e = O::div(px, O::sub(q, px));
  const V res = O::fmadd(O::set1(2.0), e, O::set1(1.0));
  return O::mul(res, O::pow2i(n));
}

}  // namespace pw::kern
