#include "pilotwave/barrier.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "pilotwave/errors.hpp"

namespace pw {

namespace {
constexpr cplx kI{0.0, 1.0};
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

/// Nodes numerically at E = V0 make the exponential interior basis
/// degenerate; treat them via the exact-limit branch below this threshold.
double degenerate_band(double V0) { return 1e-12 * std::max(V0, 1.0); }
}  // namespace

BarrierScenario BarrierScenario::from_energy(double V0, double d, double E0, double sigma0,
                                             double x0, const PhysicalConstants& c) {
  BarrierScenario s;
  s.V0 = V0;
  s.d = d;
  s.k0 = energy_to_wavenumber(E0, c);
  s.sigma0 = sigma0;
  s.x0 = x0;
  return s;
}

std::vector<std::string> BarrierScenario::validate() const {
  if (!(V0 >= 0.0)) throw InputError("barrier: V0 must be >= 0");
  if (!(d > 0.0)) throw InputError("barrier: d must be > 0");
  if (!(sigma0 > 0.0)) throw InputError("barrier: sigma0 must be > 0");
  if (!(k0 > 0.0)) throw InputError("barrier: k0 must be > 0");
  if (kgrid.nodes < 9) throw InputError("barrier: kgrid needs at least 9 nodes");
  if (kgrid.span_sigmas < 8.0)
    throw InputError("barrier: kgrid must cover at least k0 +/- 8 sigma_k");

  // Left-incident synthesis (k > 0 only) requires negligible weight at k <= 0.
  const double bound = std::exp(-2.0 * (k0 * sigma0) * (k0 * sigma0));
  if (bound >= 1e-12) {
    std::ostringstream os;
    os << "barrier: k<=0 truncation bound " << bound << " exceeds 1e-12 (k0*sigma0 = "
       << k0 * sigma0 << ")";
    throw InputError(os.str());
  }

  std::vector<std::string> warnings;
  if (!(x0 + 5.0 * sigma0 < 0.0))
    warnings.push_back("packet tail overlaps the barrier at t = 0 (x0 + 5 sigma0 >= 0)");
  return warnings;
}

cplx transmission_amplitude(double k, const BarrierScenario& scen, const PhysicalConstants& c) {
  if (!(k > 0.0)) throw InputError("transmission_amplitude: k must be > 0");
  if (scen.V0 == 0.0) return {1.0, 0.0};

  const double E = wavenumber_to_energy(k, c);
  const cplx eikd = std::exp(-kI * k * scen.d);
  if (std::fabs(E - scen.V0) <= degenerate_band(scen.V0)) {
    // Limit of the closed form as q -> 0 (interior solution linear in x).
    return 2.0 * eikd / (2.0 - kI * k * scen.d);
  }
  const cplx q = std::sqrt(cplx{2.0 * c.mass * (E - scen.V0), 0.0}) / c.hbar;
  const cplx qd = q * scen.d;
  const cplx denom = 2.0 * k * q * std::cos(qd) - kI * (q * q + k * k) * std::sin(qd);
  return eikd * 2.0 * k * q / denom;
}

ScatteringState scattering_state(double k, const BarrierScenario& scen,
                                 const PhysicalConstants& c) {
  if (!(k > 0.0)) throw InputError("scattering_state: k must be > 0");
  ScatteringState s;
  s.k = k;
  if (scen.V0 == 0.0) {
    s.q = k;
    return s;  // T = 1, R = 0, A = 1, B = 0
  }

  const double E = wavenumber_to_energy(k, c);
  const cplx eikd = std::exp(kI * k * scen.d);
  if (std::fabs(E - scen.V0) <= degenerate_band(scen.V0)) {
    s.linear_interior = true;
    s.q = 0.0;
    s.T = 2.0 / (eikd * (2.0 - kI * k * scen.d));
    s.R = -kI * k * scen.d / (2.0 - kI * k * scen.d);
    s.A = 1.0 + s.R;             // interior value at x = 0
    s.B = kI * k * (1.0 - s.R);  // interior slope
    return s;
  }

  s.q = std::sqrt(cplx{2.0 * c.mass * (E - scen.V0), 0.0}) / c.hbar;
  const cplx qd = s.q * scen.d;
  const cplx denom = 2.0 * k * s.q * std::cos(qd) - kI * (s.q * s.q + k * k) * std::sin(qd);
  s.T = std::conj(eikd) * 2.0 * k * s.q / denom;
  s.R = kI * (s.q * s.q - k * k) * std::sin(qd) / denom;
  const cplx half_teikd = 0.5 * s.T * eikd;
  s.A = half_teikd * (1.0 + k / s.q) * std::exp(-kI * qd);
  s.B = half_teikd * (1.0 - k / s.q) * std::exp(kI * qd);
  return s;
}

cplx phi_k(double x, const ScatteringState& s, const BarrierScenario& scen) {
  if (x < 0.0)
    return kInvSqrt2Pi * (std::exp(kI * s.k * x) + s.R * std::exp(-kI * s.k * x));
  if (x > scen.d) return kInvSqrt2Pi * s.T * std::exp(kI * s.k * x);
  if (s.linear_interior) return kInvSqrt2Pi * (s.A + s.B * x);
  return kInvSqrt2Pi * (s.A * std::exp(kI * s.q * x) + s.B * std::exp(-kI * s.q * x));
}

cplx dphi_k(double x, const ScatteringState& s, const BarrierScenario& scen) {
  if (x < 0.0)
    return kInvSqrt2Pi * kI * s.k * (std::exp(kI * s.k * x) - s.R * std::exp(-kI * s.k * x));
  if (x > scen.d) return kInvSqrt2Pi * kI * s.k * s.T * std::exp(kI * s.k * x);
  if (s.linear_interior) return kInvSqrt2Pi * s.B;
  return kInvSqrt2Pi * kI * s.q *
         (s.A * std::exp(kI * s.q * x) - s.B * std::exp(-kI * s.q * x));
}

cplx momentum_amplitude(double k, const BarrierScenario& scen) {
  const double dk = k - scen.k0;
  const double mag = std::pow(2.0 * scen.sigma0 * scen.sigma0 / std::numbers::pi, 0.25) *
                     std::exp(-scen.sigma0 * scen.sigma0 * dk * dk);
  return mag * std::exp(-kI * k * scen.x0);
}

double transmitted_weight(const BarrierScenario& scen, const PhysicalConstants& c) {
  const double sk = scen.sigma_k();
  const QuadratureRule rule = gauss_legendre(
      scen.kgrid.nodes, std::max(scen.k0 - scen.kgrid.span_sigmas * sk, 1e-9),
      scen.k0 + scen.kgrid.span_sigmas * sk);
  double w = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double k = rule.nodes[i];
    w += rule.weights[i] * std::norm(transmission_amplitude(k, scen, c)) *
         std::norm(momentum_amplitude(k, scen));
  }
  return w;
}

AxisSample transverse_gaussian(double y, double t, double sigma0, const PhysicalConstants& c) {
  const cplx st = sigma0 * cplx{1.0, c.hbar * t / (2.0 * c.mass * sigma0 * sigma0)};
  const cplx log_pref = -0.25 * std::log(2.0 * std::numbers::pi) - 0.5 * std::log(st);
  const cplx dlog = -y / (2.0 * st * sigma0);
  AxisSample s;
  s.value = std::exp(log_pref + 0.5 * dlog * y);  // exp(-y^2 / 4 s_t sigma0)
  s.deriv = s.value * dlog;
  return s;
}

BarrierWave::BarrierWave(const BarrierScenario& scen, const PhysicalConstants& c)
    : scen_(scen), const_(c) {
  scen_.validate();
  const double sk = scen_.sigma_k();
  const double k_lo = std::max(scen_.k0 - scen_.kgrid.span_sigmas * sk, 1e-9);
  const double k_hi = scen_.k0 + scen_.kgrid.span_sigmas * sk;
  rule_ = gauss_legendre(scen_.kgrid.nodes, k_lo, k_hi);

  const std::size_t n = rule_.size();
  states_.reserve(n);
  grid_.n = n;
  left_.n = inside_.n = right_.n = n;

  auto push = [](kern::avec& v, double x) { v.push_back(x); };
  for (std::size_t i = 0; i < n; ++i) {
    double k = rule_.nodes[i];
    // Nudge nodes that land exactly on E = V0: the exponential interior
    // basis is degenerate there and the shift is far below quadrature error.
    if (std::fabs(wavenumber_to_energy(k, const_) - scen_.V0) <= degenerate_band(scen_.V0))
      k *= 1.0 + 1e-9;

    const ScatteringState s = scattering_state(k, scen_, const_);
    states_.push_back(s);

    const cplx coeff = rule_.weights[i] * momentum_amplitude(k, scen_) * kInvSqrt2Pi;
    push(grid_.k, k);
    push(grid_.ek_hbar, wavenumber_to_energy(k, const_) / const_.hbar);
    push(grid_.coeff_re, coeff.real());
    push(grid_.coeff_im, coeff.imag());

    push(left_.a_re, k);
    push(left_.a_im, 0.0);
    push(left_.c1_re, 1.0);
    push(left_.c1_im, 0.0);
    push(left_.c2_re, s.R.real());
    push(left_.c2_im, s.R.imag());

    push(inside_.a_re, s.q.real());
    push(inside_.a_im, s.q.imag());
    push(inside_.c1_re, s.A.real());
    push(inside_.c1_im, s.A.imag());
    push(inside_.c2_re, s.B.real());
    push(inside_.c2_im, s.B.imag());

    push(right_.a_re, k);
    push(right_.a_im, 0.0);
    push(right_.c1_re, s.T.real());
    push(right_.c1_im, s.T.imag());
    push(right_.c2_re, 0.0);
    push(right_.c2_im, 0.0);
  }

  constexpr std::size_t kMaxWidth = 8;
  grid_.pad(kMaxWidth);
  for (kern::RegionTable* t : {&left_, &inside_, &right_}) {
    t->pad(kMaxWidth);
    t->finalize();
  }
}

PhaseContext BarrierWave::make_context() const {
  PhaseContext ctx;
  ctx.p_re.resize(grid_.padded, 0.0);
  ctx.p_im.resize(grid_.padded, 0.0);
  return ctx;
}

kern::WaveEval BarrierWave::eval_x(double x, double t, PhaseContext& ctx) const {
  const kern::KernelSet& ks = kern::active_kernels();
  if (ctx.cached_t != t) {
    ks.phase_weights(grid_, t, ctx.p_re.data(), ctx.p_im.data());
    ctx.cached_t = t;
  }
  if (x < 0.0) return ks.exp_sum_osc(left_, ctx.p_re.data(), ctx.p_im.data(), x);
  if (x > scen_.d) return ks.exp_sum_osc(right_, ctx.p_re.data(), ctx.p_im.data(), x);
  if (inside_.oscillatory) return ks.exp_sum_osc(inside_, ctx.p_re.data(), ctx.p_im.data(), x);
  return ks.exp_sum_mixed(inside_, ctx.p_re.data(), ctx.p_im.data(), x);
}

double BarrierWave::doubling_residual(const BarrierWave& fine, double x_probe,
                                      const std::vector<double>& t_probes) const {
  PhaseContext coarse_ctx = make_context();
  PhaseContext fine_ctx = fine.make_context();
  double worst = 0.0;
  double scale = 0.0;
  for (double t : t_probes) {
    const cplx a = eval_x(x_probe, t, coarse_ctx).value;
    const cplx b = fine.eval_x(x_probe, t, fine_ctx).value;
    worst = std::max(worst, std::abs(a - b));
    scale = std::max(scale, std::abs(b));
  }
  return scale > 0.0 ? worst / scale : std::numeric_limits<double>::infinity();
}

void BarrierWave::verify_convergence(double x_probe, const std::vector<double>& t_probes,
                                     double tol) const {
  BarrierScenario fine = scen_;
  fine.kgrid.nodes = 2 * scen_.kgrid.nodes + 1;
  const BarrierWave refined(fine, const_);
  const double residual = doubling_residual(refined, x_probe, t_probes);
  if (!(residual <= tol)) {
    std::ostringstream os;
    os << "barrier quadrature not converged at x = " << x_probe << ": node doubling ("
       << scen_.kgrid.nodes << " -> " << fine.kgrid.nodes << ") changes psi by " << residual
       << " relative (tol " << tol << ")";
    throw AccuracyError(os.str());
  }
}

}  // namespace pw
