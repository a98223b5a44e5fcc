#include "pilotwave/arrival.hpp"

#include <algorithm>
#include <cmath>

#include "pilotwave/errors.hpp"
#include "pilotwave/guidance.hpp"
#include "pilotwave/parallel.hpp"
#include "pilotwave/quadrature.hpp"

namespace pw {

namespace {

constexpr Vec3 kSpinUp{0.0, 0.0, 1.0};
constexpr int kMaxDoublings = 8;

double initial_t_max(const WaveModel& model, const Vec3& detector) {
  // Rough transit estimate; the adaptive loop fixes the rest.
  double u = 1.0;
  double x_start = model.sample_center().x;
  if (const auto* b = dynamic_cast<const BarrierModel*>(&model)) u = b->group_speed();
  if (const auto* m = dynamic_cast<const UniformFieldModel*>(&model))
    u = std::max(m->packet().u.x, 0.5);
  const double transit = std::fabs(detector.x - x_start) / u;
  return std::max(3.0 * transit, 4.0);
}

void fill_series(const WaveModel& model, ArrivalSeries& s, int threads) {
  const std::size_t n = s.times.size();
  s.jmag_spin.assign(n, 0.0);
  s.jmag_spinless.assign(n, 0.0);
  parallel_blocks(n, effective_threads(threads), [&](std::size_t begin, std::size_t end) {
    auto scratch = model.make_scratch();
    for (std::size_t i = begin; i < end; ++i) {
      const WaveSample w = model.factors(s.detector, s.times[i], *scratch).assemble();
      s.jmag_spin[i] = norm(current_spin(w, kSpinUp, model.constants()));
      s.jmag_spinless[i] = norm(current_spinless(w, model.constants()));
    }
  });
}

/// Worst last-decade fraction over the four integrals behind tau and tau_i.
double tail_fraction(const ArrivalSeries& s) {
  const double h = s.dt();
  const std::size_t n = s.times.size();
  const std::size_t tail = n / 10;
  auto fraction = [&](const std::vector<double>& f) {
    const double total = simpson(f, h);
    if (!(total > 0.0)) return 1.0;  // degenerate; flagged by callers
    return simpson_tail(f, h, tail) / total;
  };
  double worst = 0.0;
  for (const std::vector<double>* j : {&s.jmag_spin, &s.jmag_spinless}) {
    std::vector<double> tj(n);
    for (std::size_t i = 0; i < n; ++i) tj[i] = s.times[i] * (*j)[i];
    worst = std::max({worst, fraction(*j), fraction(tj)});
  }
  return worst;
}

std::vector<double> spin_series(const ArrivalSeries& s, bool spin_on) {
  return spin_on ? s.jmag_spin : s.jmag_spinless;
}

double mean_from(const std::vector<double>& t, const std::vector<double>& j, double h) {
  std::vector<double> tj(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) tj[i] = t[i] * j[i];
  const double total = simpson(j, h);
  if (!(total > 0.0)) throw InputError("mean_arrival: empty distribution (|J| identically zero)");
  return simpson(tj, h) / total;
}

}  // namespace

ArrivalSeries current_series(const WaveModel& model, const Vec3& detector,
                             const TimeGridSpec& grid) {
  int points = grid.points | 1;  // odd
  if (points < 41) points = 41;
  double t_max = grid.t_max > 0.0 ? grid.t_max : initial_t_max(model, detector);

  ArrivalSeries s;
  s.detector = detector;
  for (int attempt = 0;; ++attempt) {
    s.t_max = t_max;
    s.times.resize(static_cast<std::size_t>(points));
    const double h = t_max / (points - 1);
    for (int i = 0; i < points; ++i) s.times[static_cast<std::size_t>(i)] = h * i;
    fill_series(model, s, grid.threads);
    s.tail_bound = tail_fraction(s);
    s.tail_converged = s.tail_bound <= kTailBoundLimit;
    if (s.tail_converged || !grid.adapt || attempt >= kMaxDoublings) return s;
    t_max *= 2.0;
  }
}

std::vector<double> arrival_distribution(const ArrivalSeries& s, bool spin_on) {
  const std::vector<double> j = spin_series(s, spin_on);
  const double total = simpson(j, s.dt());
  if (!(total > 0.0))
    throw InputError("arrival_distribution: empty distribution (|J| identically zero)");
  std::vector<double> pi(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) pi[i] = j[i] / total;
  return pi;
}

double mean_arrival(const ArrivalSeries& s, bool spin_on) {
  return mean_from(s.times, spin_series(s, spin_on), s.dt());
}

MeanArrivalReport mean_arrival_report(const ArrivalSeries& s) {
  MeanArrivalReport r;
  r.tau = mean_arrival(s, true);
  r.tau_i = mean_arrival(s, false);
  r.delta = r.tau - r.tau_i;
  r.tail_bound = s.tail_bound;
  r.tail_converged = s.tail_converged;

  // Grid-halving stability of tau and tau_i.
  const std::size_t n = s.times.size();
  std::vector<double> t2, js2, ji2;
  for (std::size_t i = 0; i < n; i += 2) {
    t2.push_back(s.times[i]);
    js2.push_back(s.jmag_spin[i]);
    ji2.push_back(s.jmag_spinless[i]);
  }
  const double h2 = 2.0 * s.dt();
  const double tau2 = mean_from(t2, js2, h2);
  const double tau_i2 = mean_from(t2, ji2, h2);
  r.grid_converged = std::fabs(tau2 - r.tau) <= 1e-4 * std::fabs(r.tau) &&
                     std::fabs(tau_i2 - r.tau_i) <= 1e-4 * std::fabs(r.tau_i);
  return r;
}

const char* sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::mass: return "mass";
    case SweepParameter::group_speed: return "group_speed";
    case SweepParameter::barrier_width: return "barrier_width";
  }
  return "unknown";
}

std::vector<SweepRow> sweep(SweepParameter param, std::span<const double> values,
                            const ScenarioSpec& base, const Vec3& detector,
                            const TimeGridSpec& grid) {
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    SweepRow row;
    row.value = v;
    ScenarioSpec spec = base;
    spec.kgrid = base.kgrid;
    switch (param) {
      case SweepParameter::mass:
        spec.constants = with_mass_factor(electron_constants(), v);
        break;
      case SweepParameter::group_speed: {
        const double u = v * spec.constants.light_speed;
        spec.E0 = 0.5 * spec.constants.mass * u * u;
        break;
      }
      case SweepParameter::barrier_width:
        spec.d = v;
        break;
    }

    if (spec.kind == ScenarioSpec::Kind::barrier) {
      BarrierScenario scen =
          BarrierScenario::from_energy(spec.V0, spec.d, spec.E0, spec.sigma0, spec.x0,
                                       spec.constants);
      scen.kgrid = spec.kgrid;
      const double weight = transmitted_weight(scen, spec.constants);
      if (weight < 1e-3) {
        row.admissible = false;
        row.note = "transmission probability " + std::to_string(weight) +
                   "; detector unreachable for most paths";
      }
    }

    try {
      const auto model = spec.build();
      const ArrivalSeries series = current_series(*model, detector, grid);
      const MeanArrivalReport rep = mean_arrival_report(series);
      row.tau = rep.tau;
      row.tau_i = rep.tau_i;
      row.delta = rep.delta;
      row.tail_bound = rep.tail_bound;
      row.converged = rep.tail_converged && rep.grid_converged;
    } catch (const std::exception& e) {
      row.converged = false;
      row.admissible = false;
      row.note = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pw
