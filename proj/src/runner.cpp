#include "pilotwave/runner.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "pilotwave/arrival.hpp"
#include "pilotwave/errors.hpp"
#include "pilotwave/io.hpp"
#include "pilotwave/kernels/wave_kernels.hpp"
#include "pilotwave/parallel.hpp"
#include "pilotwave/trajectory.hpp"

namespace pw {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json spec_json(const ScenarioSpec& s) {
  json j;
  j["kind"] = s.kind == ScenarioSpec::Kind::uniform_field ? "uniform_field" : "barrier";
  j["sigma0_A"] = s.sigma0;
  j["E0_eV"] = s.E0;
  j["group_speed_A_fs"] = s.group_speed();
  if (s.kind == ScenarioSpec::Kind::uniform_field) {
    j["K_eV_A"] = s.force;
  } else {
    j["x0_A"] = s.x0;
    j["V0_eV"] = s.V0;
    j["d_A"] = s.d;
    j["kgrid_nodes"] = s.kgrid.nodes;
    j["kgrid_span_sigmas"] = s.kgrid.span_sigmas;
  }
  j["constants"] = {{"hbar_eV_fs", s.constants.hbar},
                    {"mass_eV_fs2_A2", s.constants.mass},
                    {"light_speed_A_fs", s.constants.light_speed},
                    {"gravity_A_fs2", s.constants.gravity}};
  return j;
}

json resolved_json(const RunConfig& cfg) {
  json j;
  j["version"] = kVersion;
  j["units"] = "A_fs_eV";
  j["kernel_isa"] = kern::active_kernels().name;
  j["scenario"] =
      cfg.scenario == ScenarioSpec::Kind::uniform_field ? "uniform_field" : "barrier";
  j["uniform_field"] = spec_json(cfg.uniform_spec);
  j["barrier"] = spec_json(cfg.barrier_spec);
  j["field_preset"] = cfg.field_preset;
  j["mode"] = run_mode_name(cfg.mode);
  j["spin"] = spin_choice_name(cfg.spin);
  j["detector"] = vec_json(cfg.detector);
  j["detector_mode"] = cfg.integrator.detector_mode == DetectorMode::plane_x ? "plane_x" : "sphere";
  j["sphere_radius_A"] = cfg.integrator.sphere_radius;
  j["integrator"] = {{"dt_fs", cfg.integrator.dt},
                     {"t_max_fs", cfg.integrator.t_max},
                     {"store_stride", cfg.integrator.store_stride},
                     {"stop_at_detector", cfg.integrator.stop_at_detector}};
  j["timegrid"] = {{"points", cfg.timegrid.points}, {"t_max_fs", cfg.timegrid.t_max}};
  j["ensemble_n"] = cfg.ensemble_n;
  if (cfg.sweep_given) {
    j["sweep"] = {{"parameter", sweep_parameter_name(cfg.sweep_parameter)},
                  {"values", cfg.sweep_values}};
  }
  j["seed"] = cfg.seed;
  j["threads"] = effective_threads(cfg.threads);
  return j;
}

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
}

struct DistributionArtifacts {
  MeanArrivalReport report;
  bool converged = false;
};

DistributionArtifacts write_distribution(const WaveModel& model, const RunConfig& cfg,
                                         const fs::path& csv_path, const fs::path& json_path) {
  const ArrivalSeries series = current_series(model, cfg.detector, cfg.timegrid);
  const MeanArrivalReport rep = mean_arrival_report(series);
  const std::vector<double> pi_spin = arrival_distribution(series, true);
  const std::vector<double> pi_nospin = arrival_distribution(series, false);

  CsvWriter csv(csv_path.string(), {"t_fs", "jmag_spin", "jmag_nospin", "pi_spin", "pi_nospin"});
  for (std::size_t i = 0; i < series.times.size(); ++i)
    csv.row({series.times[i], series.jmag_spin[i], series.jmag_spinless[i], pi_spin[i],
             pi_nospin[i]});

  json j;
  j["tau_fs"] = rep.tau;
  j["tau_i_fs"] = rep.tau_i;
  j["delta_fs"] = rep.delta;
  j["tail_bound"] = rep.tail_bound;
  j["tail_converged"] = rep.tail_converged;
  j["grid_converged"] = rep.grid_converged;
  j["t_max_fs"] = series.t_max;
  j["detector"] = vec_json(cfg.detector);
  j["seed"] = cfg.seed;
  if (const auto* b = dynamic_cast<const BarrierModel*>(&model))
    j["transmitted_fraction"] = transmitted_weight(b->scenario(), b->constants());
  write_json_file(json_path, j);

  DistributionArtifacts out;
  out.report = rep;
  out.converged = rep.tail_converged && rep.grid_converged;
  return out;
}

int run_distribution(const RunConfig& cfg, const fs::path& dir, std::vector<std::string>& msg) {
  const auto model = cfg.active_spec().build();
  const auto art = write_distribution(*model, cfg, dir / "distribution.csv",
                                      dir / "summary.json");
  msg.push_back("tau = " + format_double(art.report.tau) + " fs, tau_i = " +
                format_double(art.report.tau_i) + " fs, delta = " +
                format_double(art.report.delta) + " fs (tail_bound " +
                format_double(art.report.tail_bound) + ")");
  if (!art.converged) {
    msg.push_back("distribution not converged (tail or grid check failed)");
    return kExitConvergence;
  }
  return kExitOk;
}

int write_sweep(SweepParameter param, std::span<const double> values, const ScenarioSpec& spec,
                const RunConfig& cfg, const fs::path& csv_path, const fs::path& json_path,
                std::vector<std::string>& msg) {
  const std::vector<SweepRow> rows = sweep(param, values, spec, cfg.detector, cfg.timegrid);

  CsvWriter csv(csv_path.string(), {"param_value", "tau_fs", "tau_i_fs", "delta_fs", "tail_bound"});
  json jrows = json::array();
  bool all_ok = true;
  for (const SweepRow& r : rows) {
    csv.row({r.value, r.tau, r.tau_i, r.delta, r.tail_bound});
    jrows.push_back({{"value", r.value},
                     {"tau_fs", r.tau},
                     {"tau_i_fs", r.tau_i},
                     {"delta_fs", r.delta},
                     {"tail_bound", r.tail_bound},
                     {"converged", r.converged},
                     {"admissible", r.admissible},
                     {"note", r.note}});
    if (!r.admissible)
      msg.push_back("sweep value " + format_double(r.value) + " inadmissible: " + r.note);
    if (r.admissible && !r.converged) all_ok = false;
  }
  json j;
  j["parameter"] = sweep_parameter_name(param);
  j["rows"] = jrows;
  j["seed"] = cfg.seed;
  write_json_file(json_path, j);
  return all_ok ? kExitOk : kExitConvergence;
}

int run_sweep(const RunConfig& cfg, const fs::path& dir, std::vector<std::string>& msg) {
  return write_sweep(cfg.sweep_parameter, cfg.sweep_values, cfg.active_spec(), cfg,
                     dir / "sweep.csv", dir / "sweep_summary.json", msg);
}

void append_paths_csv(CsvWriter& csv, const EnsembleResult& res, double spin_flag) {
  for (std::size_t id = 0; id < res.paths.size(); ++id) {
    const TrajectoryPath& p = res.paths[id];
    for (std::size_t s = 0; s < p.times.size(); ++s)
      csv.row({p.times[s], p.positions[s].x, p.positions[s].y, p.positions[s].z,
               static_cast<double>(id), spin_flag});
  }
}

json ensemble_json(const EnsembleResult& res) {
  json j;
  j["spin"] = res.spin_on;
  j["n"] = res.paths.size();
  j["seed"] = res.seed;
  j["transmitted_fraction"] = res.transmitted_fraction;
  j["reflected_fraction"] = res.reflected_fraction;
  j["aborted_fraction"] = res.aborted_fraction;
  j["in_barrier_fraction"] = res.in_barrier_fraction;
  j["crossing_pair_count"] = res.crossing_pairs.size();
  json pairs = json::array();
  const std::size_t cap = std::min<std::size_t>(res.crossing_pairs.size(), 200);
  for (std::size_t i = 0; i < cap; ++i) {
    const CrossingPair& c = res.crossing_pairs[i];
    pairs.push_back({{"path_i", c.path_i},
                     {"path_j", c.path_j},
                     {"t_fs", c.time},
                     {"y_separation_A", c.separation}});
  }
  j["crossing_pairs"] = pairs;
  j["warnings"] = res.warnings;
  return j;
}

int run_ensemble_mode(const RunConfig& cfg, const fs::path& dir, std::vector<std::string>& msg) {
  const auto model = cfg.active_spec().build();
  IntegratorConfig icfg = cfg.integrator;
  icfg.detector = cfg.detector;

  std::vector<bool> spins;
  if (cfg.spin == SpinChoice::off || cfg.spin == SpinChoice::both) spins.push_back(false);
  if (cfg.spin == SpinChoice::on || cfg.spin == SpinChoice::both) spins.push_back(true);

  CsvWriter csv((dir / "trajectories.csv").string(),
                {"t_fs", "x_A", "y_A", "z_A", "path_id", "spin_flag"});
  json j;
  int code = kExitOk;
  for (bool spin : spins) {
    const EnsembleResult res = run_ensemble(*model, spin, icfg, cfg.ensemble_n, cfg.seed);
    append_paths_csv(csv, res, spin ? 1.0 : 0.0);
    j[spin ? "spin_on" : "spin_off"] = ensemble_json(res);
    msg.push_back(std::string(spin ? "spin on " : "spin off") + ": transmitted " +
                  format_double(res.transmitted_fraction) + ", reflected " +
                  format_double(res.reflected_fraction));
    if (res.in_barrier_fraction > 0.0) code = kExitConvergence;
    for (const std::string& w : res.warnings) msg.push_back(w);
  }
  if (const auto* b = dynamic_cast<const BarrierModel*>(model.get()))
    j["transmission_oracle"] = transmitted_weight(b->scenario(), b->constants());
  write_json_file(dir / "ensemble.json", j);
  return code;
}

int write_figure_paths(const WaveModel& model, const RunConfig& cfg, const IntegratorConfig& icfg,
                       std::size_t n_paths, const fs::path& path) {
  CsvWriter csv(path.string(), {"t_fs", "x_A", "y_A", "z_A", "path_id", "spin_flag"});
  for (bool spin : {false, true}) {
    IntegratorConfig run_cfg = icfg;
    run_cfg.stop_at_detector = false;
    run_cfg.crossing_report_max_paths = 0;
    const EnsembleResult res = run_ensemble(model, spin, run_cfg, n_paths, cfg.seed);
    append_paths_csv(csv, res, spin ? 1.0 : 0.0);
  }
  return kExitOk;
}

int run_figures(const RunConfig& cfg, const fs::path& dir, std::vector<std::string>& msg) {
  int code = kExitOk;
  auto worst = [&code](int c) { code = std::max(code, c); };

  const auto uniform = cfg.uniform_spec.build();
  const auto barrier = cfg.barrier_spec.build();

  // Arrival-time distributions at the detector, both scenarios.
  if (!write_distribution(*uniform, cfg, dir / "fig1.csv", dir / "fig1_summary.json").converged)
    worst(kExitConvergence);
  if (!write_distribution(*barrier, cfg, dir / "fig5.csv", dir / "fig5_summary.json").converged)
    worst(kExitConvergence);

  // Mean arrival time vs mass (uniform field).
  const std::vector<double> masses{1.0, 1.5, 2.0, 3.0, 4.0};
  worst(write_sweep(SweepParameter::mass, masses, cfg.uniform_spec, cfg, dir / "fig2.csv",
                    dir / "fig2_summary.json", msg));

  // Mean arrival time vs u/c (uniform field).
  const std::vector<double> speeds{0.001, 0.0015, 0.002, 0.003, 0.0044, 0.006, 0.009, 0.013};
  worst(write_sweep(SweepParameter::group_speed, speeds, cfg.uniform_spec, cfg, dir / "fig3.csv",
                    dir / "fig3_summary.json", msg));

  // Mean arrival time vs barrier width.
  const std::vector<double> widths{5.0, 10.0, 15.0, 20.0};
  worst(write_sweep(SweepParameter::barrier_width, widths, cfg.barrier_spec, cfg,
                    dir / "fig6.csv", dir / "fig6_summary.json", msg));

  // Mean arrival time vs u/c (barrier); energies kept >= V0 so the packet
  // still transmits.
  std::vector<double> barrier_speeds;
  for (double e0 : {9.0, 10.0, 12.0, 14.0, 16.0, 20.0})
    barrier_speeds.push_back(group_speed(e0, cfg.barrier_spec.constants) /
                             cfg.barrier_spec.constants.light_speed);
  worst(write_sweep(SweepParameter::group_speed, barrier_speeds, cfg.barrier_spec, cfg,
                    dir / "fig7.csv", dir / "fig7_summary.json", msg));

  // Bohmian path bundles, spin off and on from the same initial positions.
  IntegratorConfig ucfg = cfg.integrator;
  ucfg.detector = cfg.detector;
  ucfg.dt = 2e-3;
  ucfg.t_max = 2.5;
  ucfg.store_stride = 5;
  write_figure_paths(*uniform, cfg, ucfg, 12, dir / "fig4.csv");

  IntegratorConfig bcfg = cfg.integrator;
  bcfg.detector = cfg.detector;
  bcfg.dt = 2e-3;
  bcfg.t_max = 8.0;
  bcfg.store_stride = 25;
  write_figure_paths(*barrier, cfg, bcfg, 12, dir / "fig8.csv");

  json manifest;
  manifest["fig1"] = {{"file", "fig1.csv"},
                      {"content", "arrival-time distribution, uniform field, spin on/off"}};
  manifest["fig2"] = {{"file", "fig2.csv"},
                      {"content", "mean arrival time vs particle mass, uniform field"}};
  manifest["fig3"] = {{"file", "fig3.csv"},
                      {"content", "mean arrival time vs u/c, uniform field"}};
  manifest["fig4"] = {{"file", "fig4.csv"},
                      {"content", "Bohmian paths, uniform field, spin on/off"}};
  manifest["fig5"] = {{"file", "fig5.csv"},
                      {"content", "arrival-time distribution, barrier, spin on/off"}};
  manifest["fig6"] = {{"file", "fig6.csv"},
                      {"content", "mean arrival time vs barrier width"}};
  manifest["fig7"] = {{"file", "fig7.csv"},
                      {"content", "mean arrival time vs u/c, barrier"}};
  manifest["fig8"] = {{"file", "fig8.csv"},
                      {"content", "Bohmian paths, barrier, spin on/off"}};
  write_json_file(dir / "manifest.json", manifest);
  return code;
}

}  // namespace

RunOutcome run(const RunConfig& cfg, const std::string& out_dir) {
  RunOutcome outcome;
  try {
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_json_file(dir / "resolved.json", resolved_json(cfg));

    switch (cfg.mode) {
      case RunMode::distribution:
        outcome.exit_code = run_distribution(cfg, dir, outcome.messages);
        break;
      case RunMode::sweep:
        outcome.exit_code = run_sweep(cfg, dir, outcome.messages);
        break;
      case RunMode::ensemble:
        outcome.exit_code = run_ensemble_mode(cfg, dir, outcome.messages);
        break;
      case RunMode::figures:
        outcome.exit_code = run_figures(cfg, dir, outcome.messages);
        break;
    }
  } catch (const ConfigError& e) {
    outcome.exit_code = kExitConfig;
    outcome.messages.push_back(std::string("config error: ") + e.what());
  } catch (const AccuracyError& e) {
    outcome.exit_code = kExitConvergence;
    outcome.messages.push_back(std::string("convergence failure: ") + e.what());
  } catch (const std::exception& e) {
    outcome.exit_code = kExitInternal;
    outcome.messages.push_back(std::string("error: ") + e.what());
  }
  return outcome;
}

}  // namespace pw
