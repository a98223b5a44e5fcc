#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "pilotwave/barrier.hpp"
#include "pilotwave/constants.hpp"
#include "pilotwave/guidance.hpp"
#include "pilotwave/packet.hpp"
#include "pilotwave/wave.hpp"

namespace pw {

/// Per-thread evaluation scratch (phase buffers for synthesized waves).
struct EvalScratch {
  virtual ~EvalScratch() = default;
};

/// A guiding wave in factorized form.  Evaluations are pure given a
/// per-thread scratch; models are immutable after construction and shared
/// freely across workers.
class WaveModel {
 public:
  virtual ~WaveModel() = default;

  virtual const PhysicalConstants& constants() const = 0;
  virtual std::unique_ptr<EvalScratch> make_scratch() const = 0;
  virtual FactorizedWaveSample factors(const Vec3& pos, double t, EvalScratch& s) const = 0;

  virtual double density(const Vec3& pos, double t, EvalScratch& s) const {
    return factors(pos, t, s).density();
  }

  /// Guidance velocity via the factorized fast path (s_hat = z_hat).
  Vec3 velocity(const Vec3& pos, double t, bool spin_on, EvalScratch& s) const {
    return velocity_factorized(factors(pos, t, s), spin_on, constants());
  }

  /// Center and per-axis width of rho(., 0) for ensemble sampling.
  virtual Vec3 sample_center() const = 0;
  virtual Vec3 sample_sigma() const = 0;

  /// [0, d] when the scenario has a barrier.
  virtual std::optional<std::pair<double, double>> barrier_interval() const { return {}; }

  virtual std::string name() const = 0;
};

class UniformFieldModel : public WaveModel {
 public:
  explicit UniformFieldModel(const UniformFieldPacket& packet) : packet_(packet) {}

  const PhysicalConstants& constants() const override { return packet_.constants; }
  std::unique_ptr<EvalScratch> make_scratch() const override {
    return std::make_unique<EvalScratch>();
  }
  FactorizedWaveSample factors(const Vec3& pos, double t, EvalScratch&) const override {
    return factors_uf(pos, t, packet_);
  }
  double density(const Vec3& pos, double t, EvalScratch&) const override {
    return rho_uf(pos, t, packet_);
  }
  Vec3 sample_center() const override { return {0.0, 0.0, 0.0}; }
  Vec3 sample_sigma() const override { return {packet_.sigma0, packet_.sigma0, packet_.sigma0}; }
  std::string name() const override { return "uniform_field"; }

  const UniformFieldPacket& packet() const { return packet_; }

 private:
  UniformFieldPacket packet_;
};

class BarrierModel : public WaveModel {
 public:
  /// Builds the scattering tables and runs the node-doubling convergence
  /// check at `probe_x` (default: 10 A past the barrier exit).
  BarrierModel(const BarrierScenario& scen, const PhysicalConstants& c,
               std::optional<double> probe_x = {});

  const PhysicalConstants& constants() const override { return const_; }
  std::unique_ptr<EvalScratch> make_scratch() const override;
  FactorizedWaveSample factors(const Vec3& pos, double t, EvalScratch& s) const override;
  Vec3 sample_center() const override { return {scen_.x0, 0.0, 0.0}; }
  Vec3 sample_sigma() const override { return {scen_.sigma0, scen_.sigma0, scen_.sigma0}; }
  std::optional<std::pair<double, double>> barrier_interval() const override {
    return std::make_pair(0.0, scen_.d);
  }
  std::string name() const override { return "barrier"; }

  const BarrierScenario& scenario() const { return scen_; }
  const BarrierWave& wave() const { return wave_; }
  double group_speed() const { return const_.hbar * scen_.k0 / const_.mass; }

 private:
  BarrierScenario scen_;
  PhysicalConstants const_;
  BarrierWave wave_;
};

/// Scenario description from which models are built; sweeps copy and
/// perturb one field at a time.
struct ScenarioSpec {
  enum class Kind { uniform_field, barrier };
  Kind kind = Kind::uniform_field;
  PhysicalConstants constants = electron_constants();
  double sigma0 = 5.0;  // A
  double E0 = 5.0;      // eV
  double x0 = 0.0;      // A (barrier scenario; uniform field is origin-centered)
  double V0 = 8.0;      // eV
  double d = 10.0;      // A
  double force = 0.0;   // eV/A, uniform field K
  KGridSpec kgrid;

  std::unique_ptr<WaveModel> build() const;
  double group_speed() const { return pw::group_speed(E0, constants); }
};

}  // namespace pw
