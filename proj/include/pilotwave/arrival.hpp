#pragma once

#include <span>
#include <string>
#include <vector>

#include "pilotwave/model.hpp"
#include "pilotwave/vec3.hpp"

namespace pw {

struct TimeGridSpec {
  int points = 4001;    // forced odd for Simpson
  double t_max = 0.0;   // <= 0: scenario heuristic
  bool adapt = true;    // double t_max until the tail bound passes
  int threads = 0;
};

/// |J| at a fixed detector point on a shared time grid, with and without
/// the spin term.  tail_bound is the worst last-10% fraction of the four
/// integrals entering tau and tau_i; series with tail_bound > 1e-4 are
/// flagged non-converged.
struct ArrivalSeries {
  Vec3 detector;
  std::vector<double> times;
  std::vector<double> jmag_spin;
  std::vector<double> jmag_spinless;
  double t_max = 0.0;
  double tail_bound = 0.0;
  bool tail_converged = false;

  double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

inline constexpr double kTailBoundLimit = 1e-4;

/// Evaluates |J(X, t; z_hat)| and |J(X, t)| on the grid.  Currents come from
/// the assembled wave sample (no density division), so nodes cost nothing.
ArrivalSeries current_series(const WaveModel& model, const Vec3& detector,
                             const TimeGridSpec& grid);

/// Pi(t) = |J| / integral |J| dt; composite Simpson.  Throws InputError on an
/// all-zero series and AccuracyError when the tail bound failed.
std::vector<double> arrival_distribution(const ArrivalSeries& s, bool spin_on);

/// tau (spin series) or tau_i (spinless series).
double mean_arrival(const ArrivalSeries& s, bool spin_on);

struct MeanArrivalReport {
  double tau = 0.0;
  double tau_i = 0.0;
  double delta = 0.0;
  double tail_bound = 0.0;
  bool tail_converged = false;
  bool grid_converged = false;  // tau stable to 1e-4 rel under grid halving
};

MeanArrivalReport mean_arrival_report(const ArrivalSeries& s);

enum class SweepParameter { mass, group_speed, barrier_width };

const char* sweep_parameter_name(SweepParameter p);

struct SweepRow {
  double value = 0.0;
  double tau = 0.0;
  double tau_i = 0.0;
  double delta = 0.0;
  double tail_bound = 0.0;
  bool converged = false;
  bool admissible = true;
  std::string note;
};

/// Mean arrival times versus one scenario parameter.  Values: mass in
/// electron masses, group_speed as u/c, barrier_width in A.  Inadmissible
/// rows (negligible barrier transmission) are computed but flagged.
std::vector<SweepRow> sweep(SweepParameter param, std::span<const double> values,
                            const ScenarioSpec& base, const Vec3& detector,
                            const TimeGridSpec& grid);

}  // namespace pw
