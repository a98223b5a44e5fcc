#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pilotwave/model.hpp"
#include "pilotwave/vec3.hpp"

namespace pw {

enum class DetectorMode { plane_x, sphere };

struct IntegratorConfig {
  double dt = 5e-4;   // fs
  double t_max = 10.0;
  Vec3 detector{20.0, 20.0, 20.0};
  DetectorMode detector_mode = DetectorMode::plane_x;
  double sphere_radius = 2.0;
  int store_stride = 1;
  /// Single-path runs stop at the first detector crossing; ensemble runs
  /// that classify fates at t_max set this false and only record the event.
  bool stop_at_detector = true;
  int threads = 0;  // 0 = auto
  /// All-pairs crossing reports are O(n^2); skipped above this path count.
  std::size_t crossing_report_max_paths = 128;
};

enum class EventKind { detector_crossing, barrier_entry, barrier_exit, node_abort, t_max_reached };

const char* event_kind_name(EventKind k);

struct PathEvent {
  EventKind kind;
  double time;
  Vec3 position;
};

enum class PathFate { transmitted, reflected, in_barrier, aborted };

struct TrajectoryPath {
  Vec3 initial;
  std::vector<double> times;      // strictly increasing stored sample times
  std::vector<Vec3> positions;
  std::vector<PathEvent> events;
  Vec3 final_position;
  double final_time = 0.0;
  PathFate fate = PathFate::transmitted;
  bool reached_detector = false;

  const PathEvent* first_event(EventKind kind) const;
};

struct CrossingPair {
  std::size_t path_i = 0;
  std::size_t path_j = 0;
  double time = 0.0;
  double separation = 0.0;  // |y_i - y_j| at the crossing (xt projection)
};

struct EnsembleResult {
  std::vector<TrajectoryPath> paths;
  std::uint64_t seed = 0;
  bool spin_on = false;
  /// Fate fractions.  For the barrier scenario: x > d transmitted, x < 0
  /// reflected, otherwise in-barrier (with a warning; raise t_max).  For the
  /// uniform field: transmitted == reached the detector.  transmitted +
  /// reflected + aborted sums to 1 whenever in_barrier is zero.
  double transmitted_fraction = 0.0;
  double reflected_fraction = 0.0;
  double aborted_fraction = 0.0;
  double in_barrier_fraction = 0.0;
  std::vector<CrossingPair> crossing_pairs;
  std::vector<std::string> warnings;
};

/// Classical 4-stage Runge-Kutta update; `field(x, t)` may throw NodeError,
/// which propagates to the caller as a path abort.
template <class VelFn>
Vec3 rk4_step(const Vec3& x, double t, double dt, VelFn&& field) {
  const Vec3 k1 = field(x, t);
  const Vec3 k2 = field(x + (0.5 * dt) * k1, t + 0.5 * dt);
  const Vec3 k3 = field(x + (0.5 * dt) * k2, t + 0.5 * dt);
  const Vec3 k4 = field(x + dt * k3, t + dt);
  return x + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
}

/// Integrates one path from t = 0 to the first detector crossing (when
/// cfg.stop_at_detector) or t_max.  Node hits abort the path and are
/// recorded as events, not failures.
TrajectoryPath integrate_path(const WaveModel& model, const Vec3& x0, bool spin_on,
                              const IntegratorConfig& cfg);

/// Seeded ensemble with initial positions drawn from rho(., 0).  Identical
/// (scenario, spin, cfg, n, seed) reproduces every output bit regardless of
/// worker count.
EnsembleResult run_ensemble(const WaveModel& model, bool spin_on, const IntegratorConfig& cfg,
                            std::size_t n, std::uint64_t seed);

enum class Projection { xt, xy };

struct Crossing {
  double time = 0.0;        // time on path a (xt: common time)
  double separation = 0.0;  // xt: |y_a - y_b|; xy: |z_a - z_b|
  double value = 0.0;       // xt: the shared x; xy: crossing-point x
};

/// xt: times where the x-ordering of the two stored paths flips (sign-change
/// bracketing, linear refinement).  xy: geometric intersections of the
/// stored (x, y) polylines, which may occur at different times on each path.
std::vector<Crossing> detect_projection_crossings(const TrajectoryPath& a,
                                                  const TrajectoryPath& b, Projection proj);

/// Minimum pairwise 3D distance over the common stored times.
double min_pairwise_separation(std::span<const TrajectoryPath> paths);

}  // namespace pw
