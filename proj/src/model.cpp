#include "pilotwave/model.hpp"

#include <sstream>

#include "pilotwave/errors.hpp"

namespace pw {

namespace {
struct BarrierScratch : EvalScratch {
  PhaseContext ctx;
};
}  // namespace

BarrierModel::BarrierModel(const BarrierScenario& scen, const PhysicalConstants& c,
                           std::optional<double> probe_x)
    : scen_(scen), const_(c), wave_(scen, c) {
  const double probe = probe_x.value_or(scen_.d + 10.0);
  const double u = group_speed();
  const double transit = (probe - scen_.x0) / u;
  const std::vector<double> probes{0.6 * transit, 0.9 * transit, 1.2 * transit, 1.8 * transit};

  // Node-doubling gate with automatic refinement: wider barriers carry
  // sharper resonances and need denser k-grids.  The configured node count
  // is the floor; each failed doubling promotes the fine grid.
  constexpr int kMaxRefinements = 5;
  for (int attempt = 0;; ++attempt) {
    BarrierScenario fine_scen = wave_.scenario();
    fine_scen.kgrid.nodes = 2 * fine_scen.kgrid.nodes + 1;
    BarrierWave fine(fine_scen, const_);
    const double residual = wave_.doubling_residual(fine, probe, probes);
    if (residual <= 1e-8) break;
    if (attempt >= kMaxRefinements) {
      std::ostringstream os;
      os << "barrier quadrature not converged after " << attempt
         << " refinements (nodes = " << wave_.scenario().kgrid.nodes << ", residual " << residual
         << ")";
      throw AccuracyError(os.str());
    }
    wave_ = std::move(fine);
  }
}

std::unique_ptr<EvalScratch> BarrierModel::make_scratch() const {
  auto s = std::make_unique<BarrierScratch>();
  s->ctx = wave_.make_context();
  return s;
}

FactorizedWaveSample BarrierModel::factors(const Vec3& pos, double t, EvalScratch& s) const {
  auto& ctx = static_cast<BarrierScratch&>(s).ctx;
  const kern::WaveEval ex = wave_.eval_x(pos.x, t, ctx);

  FactorizedWaveSample f;
  f.x = {ex.value, ex.deriv};
  f.y = transverse_gaussian(pos.y, t, scen_.sigma0, const_);
  f.z = transverse_gaussian(pos.z, t, scen_.sigma0, const_);
  f.position = pos;
  f.time = t;
  return f;
}

std::unique_ptr<WaveModel> ScenarioSpec::build() const {
  if (kind == Kind::uniform_field) {
    return std::make_unique<UniformFieldModel>(
        UniformFieldPacket::from_energy(E0, sigma0, force, constants));
  }
  BarrierScenario scen = BarrierScenario::from_energy(V0, d, E0, sigma0, x0, constants);
  scen.kgrid = kgrid;
  return std::make_unique<BarrierModel>(scen, constants);
}

}  // namespace pw
