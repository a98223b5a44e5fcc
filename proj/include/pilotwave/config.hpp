#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pilotwave/arrival.hpp"
#include "pilotwave/model.hpp"
#include "pilotwave/trajectory.hpp"

namespace pw {

enum class RunMode { distribution, sweep, ensemble, figures };
enum class SpinChoice { on, off, both };

const char* run_mode_name(RunMode m);
const char* spin_choice_name(SpinChoice s);

/// Fully resolved run description.  Units are fixed: lengths in A, times in
/// fs, energies in eV (declared by the mandatory `units = A_fs_eV` header
/// line); the gravity preset converts 9.8 m/s^2 internally.
struct RunConfig {
  ScenarioSpec::Kind scenario = ScenarioSpec::Kind::uniform_field;
  ScenarioSpec uniform_spec;  // uniform-field parameter set
  ScenarioSpec barrier_spec;  // barrier parameter set (figures mode uses both)
  std::string field_preset = "gravity";

  RunMode mode = RunMode::distribution;
  bool mode_given = false;
  SpinChoice spin = SpinChoice::both;

  Vec3 detector{20.0, 20.0, 20.0};
  IntegratorConfig integrator;
  TimeGridSpec timegrid;

  std::size_t ensemble_n = 1000;
  SweepParameter sweep_parameter = SweepParameter::mass;
  std::vector<double> sweep_values;
  bool sweep_given = false;

  std::uint64_t seed = 1;
  int threads = 0;

  const ScenarioSpec& active_spec() const {
    return scenario == ScenarioSpec::Kind::uniform_field ? uniform_spec : barrier_spec;
  }
};

/// Parses the flat key = value format ('#' comments, [section] headers).
/// Unknown keys, missing required keys and invariant violations raise
/// ConfigError with the offending line number.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

}  // namespace pw
