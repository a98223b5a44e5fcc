#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "pilotwave/constants.hpp"
#include "pilotwave/kernels/wave_kernels.hpp"
#include "pilotwave/quadrature.hpp"
#include "pilotwave/vec3.hpp"
#include "pilotwave/wave.hpp"

namespace pw {

/// Momentum-grid descriptor for packet synthesis: Gauss-Legendre on
/// [k0 - span*sigma_k, k0 + span*sigma_k], sigma_k = 1/(2 sigma0).
struct KGridSpec {
  int nodes = 1025;
  double span_sigmas = 8.0;
};

/// Rectangular barrier V(x) = V0 on [0, d], packet of width sigma0 launched
/// from x0 with mean wavenumber k0 > 0.
struct BarrierScenario {
  double V0 = 8.0;      // eV
  double d = 10.0;      // A
  double k0 = 0.0;      // 1/A
  double sigma0 = 5.0;  // A
  double x0 = -50.0;    // A, initial packet center
  KGridSpec kgrid;

  double sigma_k() const { return 1.0 / (2.0 * sigma0); }

  static BarrierScenario from_energy(double V0, double d, double E0, double sigma0, double x0,
                                     const PhysicalConstants& c);

  /// Enforces the type invariants; throws InputError when the left-incident
  /// truncation bound exp(-2 (k0 sigma0)^2) >= 1e-12, returns a warning list
  /// for soft violations (packet close to the barrier).
  std::vector<std::string> validate() const;
};

/// Stationary scattering state of the barrier at wavenumber k:
/// region I (x<0): (e^{ikx} + R e^{-ikx})/sqrt(2 pi)
/// region II (0<=x<=d): (A e^{iqx} + B e^{-iqx})/sqrt(2 pi), or (A + B x)
///   when E = V0 exactly (linear_interior)
/// region III (x>d): T e^{ikx}/sqrt(2 pi)
struct ScatteringState {
  double k = 0.0;
  cplx q{0.0, 0.0};
  cplx T{1.0, 0.0};
  cplx R{0.0, 0.0};
  cplx A{1.0, 0.0};
  cplx B{0.0, 0.0};
  bool linear_interior = false;
};

/// T(k); exact 1 for V0 = 0, the matching-derived limit 2 e^{-ikd}/(2 - ikd)
/// at E = V0, and the standard closed form elsewhere (q continued below the
/// barrier).
cplx transmission_amplitude(double k, const BarrierScenario& scen, const PhysicalConstants& c);

ScatteringState scattering_state(double k, const BarrierScenario& scen,
                                 const PhysicalConstants& c);

cplx phi_k(double x, const ScatteringState& s, const BarrierScenario& scen);
cplx dphi_k(double x, const ScatteringState& s, const BarrierScenario& scen);

/// Gaussian momentum amplitude with the center-offset phase:
/// (2 sigma0^2/pi)^{1/4} e^{-sigma0^2 (k-k0)^2} e^{-i k x0}.
cplx momentum_amplitude(double k, const BarrierScenario& scen);

/// Transmission probability of the packet, sum_k w |T|^2 |psitilde|^2.
double transmitted_weight(const BarrierScenario& scen, const PhysicalConstants& c);

/// Spreading 1D Gaussian shared by the y and z axes: value and derivative of
/// (2 pi s_t^2)^{-1/4} e^{-y^2 / 4 s_t sigma0}.
AxisSample transverse_gaussian(double y, double t, double sigma0, const PhysicalConstants& c);

/// Per-evaluation scratch: the time-phase weights p_k = coeff_k e^{-i E_k t/hbar},
/// cached by time so RK4 stages sharing a stage time reuse one fill.
struct PhaseContext {
  kern::avec p_re, p_im;
  double cached_t = std::numeric_limits<double>::quiet_NaN();
};

/// Precomputed synthesis of psi_x(x,t) = sum_k w_k phi_k(x) psitilde(k)
/// e^{-i E_k t/hbar} over the scenario's k-grid.  Immutable after
/// construction; evaluations are pure and thread-safe given a per-thread
/// PhaseContext.
class BarrierWave {
 public:
  BarrierWave(const BarrierScenario& scen, const PhysicalConstants& c);

  /// Value and x-derivative of the synthesized wave.
  kern::WaveEval eval_x(double x, double t, PhaseContext& ctx) const;

  PhaseContext make_context() const;

  /// Node-doubling convergence check at the probe point; throws
  /// AccuracyError with diagnostics when the relative change is >= tol.
  void verify_convergence(double x_probe, const std::vector<double>& t_probes,
                          double tol = 1e-8) const;

  /// Relative node-doubling residual against `fine` (same scenario, 2n+1
  /// nodes), normalized by max |psi_fine| over the probes.
  double doubling_residual(const BarrierWave& fine, double x_probe,
                           const std::vector<double>& t_probes) const;

  const BarrierScenario& scenario() const { return scen_; }
  const QuadratureRule& kgrid() const { return rule_; }
  const std::vector<ScatteringState>& states() const { return states_; }

 private:
  BarrierScenario scen_;
  PhysicalConstants const_;
  QuadratureRule rule_;
  std::vector<ScatteringState> states_;
  kern::NodeGrid grid_;
  kern::RegionTable left_, inside_, right_;
};

}  // namespace pw
