#include "pilotwave/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pilotwave/errors.hpp"
#include "pilotwave/parallel.hpp"
#include "pilotwave/rng.hpp"

namespace pw {

const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::detector_crossing: return "detector_crossing";
    case EventKind::barrier_entry: return "barrier_entry";
    case EventKind::barrier_exit: return "barrier_exit";
    case EventKind::node_abort: return "node_abort";
    case EventKind::t_max_reached: return "t_max_reached";
  }
  return "unknown";
}

const PathEvent* TrajectoryPath::first_event(EventKind kind) const {
  for (const PathEvent& e : events)
    if (e.kind == kind) return &e;
  return nullptr;
}

namespace {

double hermite(double p0, double v0, double p1, double v1, double h, double s) {
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2.0 * s3 - 3.0 * s2 + 1.0) * p0 + (s3 - 2.0 * s2 + s) * h * v0 +
         (-2.0 * s3 + 3.0 * s2) * p1 + (s3 - s2) * h * v1;
}

Vec3 hermite_vec(const Vec3& p0, const Vec3& v0, const Vec3& p1, const Vec3& v1, double h,
                 double s) {
  return {hermite(p0.x, v0.x, p1.x, v1.x, h, s), hermite(p0.y, v0.y, p1.y, v1.y, h, s),
          hermite(p0.z, v0.z, p1.z, v1.z, h, s)};
}

struct PathRun {
  Vec3 pos;
  Vec3 k1, k2, k3;
  bool active = true;
  bool aborted = false;
  bool entered = false;
  bool exited = false;
  TrajectoryPath out;
};

class BlockIntegrator {
 public:
  BlockIntegrator(const WaveModel& model, bool spin_on, const IntegratorConfig& cfg)
      : model_(model),
        spin_(spin_on),
        cfg_(cfg),
        scratch_(model.make_scratch()),
        barrier_(model.barrier_interval()) {}

  void run(std::span<PathRun> block) {
    for (PathRun& p : block) {
      p.out.initial = p.pos;
      p.out.times.push_back(0.0);
      p.out.positions.push_back(p.pos);
    }
    const auto n_steps =
        static_cast<std::size_t>(std::ceil(cfg_.t_max / cfg_.dt - 1e-9));
    for (std::size_t s = 0; s < n_steps; ++s) {
      const double t0 = static_cast<double>(s) * cfg_.dt;
      const double th = t0 + 0.5 * cfg_.dt;
      const double t1 = static_cast<double>(s + 1) * cfg_.dt;
      // Stage-major so every path in the block reuses one phase fill per
      // stage time.
      for (PathRun& p : block)
        if (p.active) stage(p, p.k1, p.pos, t0);
      for (PathRun& p : block)
        if (p.active) stage(p, p.k2, p.pos + (0.5 * cfg_.dt) * p.k1, th);
      for (PathRun& p : block)
        if (p.active) stage(p, p.k3, p.pos + (0.5 * cfg_.dt) * p.k2, th);
      for (PathRun& p : block) {
        if (!p.active) continue;
        Vec3 k4;
        if (!try_velocity(p.pos + cfg_.dt * p.k3, t1, k4)) {
          abort_path(p, t1, p.pos);
          continue;
        }
        const Vec3 next = p.pos + (cfg_.dt / 6.0) * (p.k1 + 2.0 * (p.k2 + p.k3) + k4);
        finish_step(p, t0, t1, next, s + 1, s + 1 == n_steps);
      }
    }
    for (PathRun& p : block) {
      if (p.active) {
        p.out.events.push_back({EventKind::t_max_reached, p.out.final_time, p.pos});
      }
      classify(p);
    }
  }

 private:
  bool try_velocity(const Vec3& x, double t, Vec3& v) {
    try {
      v = model_.velocity(x, t, spin_, *scratch_);
      return true;
    } catch (const NodeError&) {
      return false;
    }
  }

  void stage(PathRun& p, Vec3& k, const Vec3& x, double t) {
    if (!try_velocity(x, t, k)) abort_path(p, t, x);
  }

  void abort_path(PathRun& p, double t, const Vec3& x) {
    p.out.events.push_back({EventKind::node_abort, t, x});
    p.out.final_time = t;
    p.out.final_position = x;
    p.aborted = true;
    p.active = false;
    store_sample(p, t, x, true);
  }

  void store_sample(PathRun& p, double t, const Vec3& x, bool force) {
    if (!force && p.out.times.back() == t) return;
    if (t <= p.out.times.back()) return;
    p.out.times.push_back(t);
    p.out.positions.push_back(x);
  }

  void finish_step(PathRun& p, double t0, double t1, const Vec3& next, std::size_t step_index,
                   bool last_step) {
    const Vec3 prev = p.pos;
    if (barrier_) {
      if (!p.entered && prev.x < barrier_->first && next.x >= barrier_->first) {
        const double th = (barrier_->first - prev.x) / (next.x - prev.x);
        p.entered = true;
        p.out.events.push_back(
            {EventKind::barrier_entry, t0 + th * (t1 - t0), prev + th * (next - prev)});
      }
      if (!p.exited && prev.x <= barrier_->second && next.x > barrier_->second) {
        const double th = (barrier_->second - prev.x) / (next.x - prev.x);
        p.exited = true;
        p.out.events.push_back(
            {EventKind::barrier_exit, t0 + th * (t1 - t0), prev + th * (next - prev)});
      }
    }

    bool stop_here = false;
    if (!p.out.reached_detector && detector_crossed(prev, next)) {
      double tc;
      Vec3 xc;
      refine_crossing(p, prev, next, t0, t1, tc, xc);
      p.out.reached_detector = true;
      p.out.events.push_back({EventKind::detector_crossing, tc, xc});
      if (cfg_.stop_at_detector) {
        stop_here = true;
        p.out.final_time = tc;
        p.out.final_position = xc;
        store_sample(p, tc, xc, true);
        p.active = false;
      }
    }

    if (!stop_here) {
      p.pos = next;
      p.out.final_time = t1;
      p.out.final_position = next;
      if (step_index % static_cast<std::size_t>(std::max(1, cfg_.store_stride)) == 0 ||
          last_step)
        store_sample(p, t1, next, false);
    }
  }

  bool detector_crossed(const Vec3& prev, const Vec3& next) const {
    if (cfg_.detector_mode == DetectorMode::plane_x) {
      const double a = prev.x - cfg_.detector.x;
      const double b = next.x - cfg_.detector.x;
      return a < 0.0 && b >= 0.0;
    }
    const double r = cfg_.sphere_radius;
    return norm(prev - cfg_.detector) > r && norm(next - cfg_.detector) <= r;
  }

  /// Cubic Hermite refinement of the crossing inside [t0, t1]; falls back to
  /// linear interpolation if the endpoint velocity is unavailable.
  void refine_crossing(PathRun& p, const Vec3& prev, const Vec3& next, double t0, double t1,
                       double& tc, Vec3& xc) {
    const double h = t1 - t0;
    Vec3 v1;
    if (!try_velocity(next, t1, v1)) {
      const double th = cross_fraction_linear(prev, next);
      tc = t0 + th * h;
      xc = prev + th * (next - prev);
      return;
    }
    const Vec3& v0 = p.k1;
    // Signed so the bracket always runs negative -> nonnegative: outside a
    // sphere the distance residual is positive, hence the flip.
    auto g = [&](double s) {
      if (cfg_.detector_mode == DetectorMode::plane_x)
        return hermite(prev.x, v0.x, next.x, v1.x, h, s) - cfg_.detector.x;
      return cfg_.sphere_radius - norm(hermite_vec(prev, v0, next, v1, h, s) - cfg_.detector);
    };
    double lo = 0.0, hi = 1.0;
    double glo = g(lo);
    if (glo >= 0.0) {  // already at/inside at the step start: keep endpoint
      tc = t0;
      xc = prev;
      return;
    }
    for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) < 0.0 ? lo : hi) = mid;
    }
    const double s = 0.5 * (lo + hi);
    tc = t0 + s * h;
    xc = hermite_vec(prev, v0, next, v1, h, s);
  }

  double cross_fraction_linear(const Vec3& prev, const Vec3& next) const {
    if (cfg_.detector_mode == DetectorMode::plane_x) {
      const double denom = next.x - prev.x;
      return denom != 0.0 ? (cfg_.detector.x - prev.x) / denom : 0.0;
    }
    return 0.5;
  }

  void classify(PathRun& p) {
    if (p.aborted) {
      p.out.fate = PathFate::aborted;
      return;
    }
    if (barrier_) {
      const double x = p.out.final_position.x;
      if (x > barrier_->second)
        p.out.fate = PathFate::transmitted;
      else if (x < barrier_->first)
        p.out.fate = PathFate::reflected;
      else
        p.out.fate = PathFate::in_barrier;
    } else {
      p.out.fate = p.out.reached_detector ? PathFate::transmitted : PathFate::reflected;
    }
  }

  const WaveModel& model_;
  bool spin_;
  IntegratorConfig cfg_;
  std::unique_ptr<EvalScratch> scratch_;
  std::optional<std::pair<double, double>> barrier_;
};

}  // namespace

TrajectoryPath integrate_path(const WaveModel& model, const Vec3& x0, bool spin_on,
                              const IntegratorConfig& cfg) {
  PathRun run;
  run.pos = x0;
  BlockIntegrator engine(model, spin_on, cfg);
  engine.run({&run, 1});
  return std::move(run.out);
}

EnsembleResult run_ensemble(const WaveModel& model, bool spin_on, const IntegratorConfig& cfg,
                            std::size_t n, std::uint64_t seed) {
  std::vector<PathRun> runs(n);
  const Vec3 center = model.sample_center();
  const Vec3 sigma = model.sample_sigma();
  for (std::size_t i = 0; i < n; ++i)
    runs[i].pos = sample_initial_position(seed, i, center, sigma);

  const int threads = effective_threads(cfg.threads);
  parallel_blocks(n, threads, [&](std::size_t begin, std::size_t end) {
    BlockIntegrator engine(model, spin_on, cfg);
    engine.run({runs.data() + begin, end - begin});
  });

  EnsembleResult res;
  res.seed = seed;
  res.spin_on = spin_on;
  res.paths.reserve(n);
  std::size_t transmitted = 0, reflected = 0, aborted = 0, in_barrier = 0;
  for (PathRun& r : runs) {
    switch (r.out.fate) {
      case PathFate::transmitted: ++transmitted; break;
      case PathFate::reflected: ++reflected; break;
      case PathFate::aborted: ++aborted; break;
      case PathFate::in_barrier: ++in_barrier; break;
    }
    res.paths.push_back(std::move(r.out));
  }
  const double dn = static_cast<double>(n);
  res.transmitted_fraction = static_cast<double>(transmitted) / dn;
  res.reflected_fraction = static_cast<double>(reflected) / dn;
  res.aborted_fraction = static_cast<double>(aborted) / dn;
  res.in_barrier_fraction = static_cast<double>(in_barrier) / dn;
  if (in_barrier > 0)
    res.warnings.push_back("paths still inside the barrier at t_max; raise t_max");

  if (n <= cfg.crossing_report_max_paths) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (const Crossing& c :
             detect_projection_crossings(res.paths[i], res.paths[j], Projection::xt))
          res.crossing_pairs.push_back({i, j, c.time, c.separation});
  }
  return res;
}

std::vector<Crossing> detect_projection_crossings(const TrajectoryPath& a,
                                                  const TrajectoryPath& b, Projection proj) {
  std::vector<Crossing> out;
  if (proj == Projection::xt) {
    const std::size_t len = std::min(a.times.size(), b.times.size());
    for (std::size_t i = 0; i + 1 < len; ++i) {
      const double d0 = a.positions[i].x - b.positions[i].x;
      const double d1 = a.positions[i + 1].x - b.positions[i + 1].x;
      if (d0 == 0.0 || d0 * d1 >= 0.0) continue;
      const double th = d0 / (d0 - d1);
      Crossing c;
      c.time = a.times[i] + th * (a.times[i + 1] - a.times[i]);
      const double ya = a.positions[i].y + th * (a.positions[i + 1].y - a.positions[i].y);
      const double yb = b.positions[i].y + th * (b.positions[i + 1].y - b.positions[i].y);
      c.separation = std::fabs(ya - yb);
      c.value = a.positions[i].x + th * (a.positions[i + 1].x - a.positions[i].x);
      out.push_back(c);
    }
    return out;
  }

  // xy: geometric intersections of the two stored polylines, possibly at
  // different times on each path.
  for (std::size_t i = 0; i + 1 < a.positions.size(); ++i) {
    const Vec3& p0 = a.positions[i];
    const Vec3& p1 = a.positions[i + 1];
    for (std::size_t j = 0; j + 1 < b.positions.size(); ++j) {
      const Vec3& q0 = b.positions[j];
      const Vec3& q1 = b.positions[j + 1];
      const double rx = p1.x - p0.x, ry = p1.y - p0.y;
      const double sx = q1.x - q0.x, sy = q1.y - q0.y;
      const double den = rx * sy - ry * sx;
      if (den == 0.0) continue;
      const double qpx = q0.x - p0.x, qpy = q0.y - p0.y;
      const double tpar = (qpx * sy - qpy * sx) / den;
      const double upar = (qpx * ry - qpy * rx) / den;
      if (tpar < 0.0 || tpar > 1.0 || upar < 0.0 || upar > 1.0) continue;
      Crossing c;
      c.time = a.times[i] + tpar * (a.times[i + 1] - a.times[i]);
      const double za = p0.z + tpar * (p1.z - p0.z);
      const double zb = q0.z + upar * (q1.z - q0.z);
      c.separation = std::fabs(za - zb);
      c.value = p0.x + tpar * rx;
      out.push_back(c);
    }
  }
  return out;
}

double min_pairwise_separation(std::span<const TrajectoryPath> paths) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      const std::size_t len = std::min(paths[i].times.size(), paths[j].times.size());
      for (std::size_t s = 0; s < len; ++s)
        best = std::min(best, norm(paths[i].positions[s] - paths[j].positions[s]));
    }
  }
  return best;
}

}  // namespace pw
