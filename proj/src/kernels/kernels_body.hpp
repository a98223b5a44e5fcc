// Shared kernel body, instantiated once per ISA TU.  The including file
// defines PW_KERN_OPS (wrapper struct), PW_KERN_NS (implementation
// namespace) and PW_KERN_GETTER (exported accessor name).
//
// All tables are padded to the lane width with zero-weight nodes, so the
// loops below run full vectors only.

#include "pilotwave/kernels/wave_kernels.hpp"

#include "vec_ops.hpp"
#include "vecmath.hpp"

namespace pw::kern {
namespace PW_KERN_NS {

using O = PW_KERN_OPS;
using V = typename O::V;
constexpr int W = O::W;

void phase_weights_impl(const NodeGrid& g, double t, double* p_re, double* p_im) {
  const V vt = O::set1(t);
  for (std::size_t i = 0; i < g.padded; i += W) {
    const V arg = O::mul(O::load(g.ek_hbar.data() + i), vt);
    V s, c;
    vsincos<O>(arg, s, c);
    const V cr = O::load(g.coeff_re.data() + i);
    const V ci = O::load(g.coeff_im.data() + i);
    // coeff * e^{-i arg}
    O::store(p_re + i, O::fmadd(cr, c, O::mul(ci, s)));
    O::store(p_im + i, O::fnmadd(cr, s, O::mul(ci, c)));
  }
}

WaveEval exp_sum_osc_impl(const RegionTable& r, const double* p_re, const double* p_im,
                          double x) {
  const V vx = O::set1(x);
  V vr = O::zero(), vi = O::zero(), wr = O::zero(), wi = O::zero();
  for (std::size_t i = 0; i < r.padded; i += W) {
    const V a = O::load(r.a_re.data() + i);
    V s, c;
    vsincos<O>(O::mul(a, vx), s, c);

    const V sr = O::load(r.s_re.data() + i);
    const V si = O::load(r.s_im.data() + i);
    const V dr = O::load(r.d_re.data() + i);
    const V di = O::load(r.d_im.data() + i);

    // c1 e^{iax} + c2 e^{-iax} and the difference, via sum/diff coefficients
    const V tv_re = O::fnmadd(s, di, O::mul(c, sr));
    const V tv_im = O::fmadd(s, dr, O::mul(c, si));
    const V td_re = O::fnmadd(s, si, O::mul(c, dr));
    const V td_im = O::fmadd(s, sr, O::mul(c, di));

    const V de_re = O::neg(O::mul(a, td_im));
    const V de_im = O::mul(a, td_re);

    const V pr = O::load(p_re + i);
    const V pi = O::load(p_im + i);
    vr = O::fmadd(pr, tv_re, O::fnmadd(pi, tv_im, vr));
    vi = O::fmadd(pr, tv_im, O::fmadd(pi, tv_re, vi));
    wr = O::fmadd(pr, de_re, O::fnmadd(pi, de_im, wr));
    wi = O::fmadd(pr, de_im, O::fmadd(pi, de_re, wi));
  }
  WaveEval out;
  out.value = {O::reduce(vr), O::reduce(vi)};
  out.deriv = {O::reduce(wr), O::reduce(wi)};
  return out;
}

WaveEval exp_sum_mixed_impl(const RegionTable& r, const double* p_re, const double* p_im,
                            double x) {
  const V vx = O::set1(x);
  const V one = O::set1(1.0);
  V vr = O::zero(), vi = O::zero(), wr = O::zero(), wi = O::zero();
  for (std::size_t i = 0; i < r.padded; i += W) {
    const V a = O::load(r.a_re.data() + i);
    const V b = O::load(r.a_im.data() + i);
    V s, c;
    vsincos<O>(O::mul(a, vx), s, c);
    const V g = vexp<O>(O::neg(O::mul(b, vx)));  // e^{i alpha x} = g (cos + i sin)
    const V ginv = O::div(one, g);

    const V er = O::mul(g, c), ei = O::mul(g, s);
    const V fr = O::mul(ginv, c), fi = O::neg(O::mul(ginv, s));

    const V c1r = O::load(r.c1_re.data() + i), c1i = O::load(r.c1_im.data() + i);
    const V c2r = O::load(r.c2_re.data() + i), c2i = O::load(r.c2_im.data() + i);

    const V t1r = O::fnmadd(c1i, ei, O::mul(c1r, er));
    const V t1i = O::fmadd(c1i, er, O::mul(c1r, ei));
    const V t2r = O::fnmadd(c2i, fi, O::mul(c2r, fr));
    const V t2i = O::fmadd(c2i, fr, O::mul(c2r, fi));

    const V tv_re = O::add(t1r, t2r), tv_im = O::add(t1i, t2i);
    const V td_re = O::sub(t1r, t2r), td_im = O::sub(t1i, t2i);

    // d/dx = i alpha (t1 - t2), alpha = a + i b
    const V de_re = O::fnmadd(b, td_re, O::neg(O::mul(a, td_im)));
    const V de_im = O::fnmadd(b, td_im, O::mul(a, td_re));

    const V pr = O::load(p_re + i);
    const V pi = O::load(p_im + i);
    vr = O::fmadd(pr, tv_re, O::fnmadd(pi, tv_im, vr));
    vi = O::fmadd(pr, tv_im, O::fmadd(pi, tv_re, vi));
    wr = O::fmadd(pr, de_re, O::fnmadd(pi, de_im, wr));
    wi = O::fmadd(pr, de_im, O::fmadd(pi, de_re, wi));
  }
  WaveEval out;
  out.value = {O::reduce(vr), O::reduce(vi)};
  out.deriv = {O::reduce(wr), O::reduce(wi)};
  return out;
}

}  // namespace PW_KERN_NS

const KernelSet& PW_KERN_GETTER() {
  static const KernelSet ks{PW_KERN_NS::O::name(), PW_KERN_NS::W,
                            &PW_KERN_NS::phase_weights_impl, &PW_KERN_NS::exp_sum_osc_impl,
                            &PW_KERN_NS::exp_sum_mixed_impl};
  return ks;
}

}  // namespace pw::kern
