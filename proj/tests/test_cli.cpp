#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pilotwave/config.hpp"
#include "pilotwave/errors.hpp"
#include "pilotwave/packet.hpp"
#include "pilotwave/runner.hpp"

using namespace pw;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "pilotwave_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const std::string kUniformCfg =
    "units = A_fs_eV\n"
    "[run]\n"
    "scenario = uniform_field\n"
    "mode = distribution\n"
    "seed = 11\n"
    "[packet]\n"
    "sigma0 = 5\n"
    "E0 = 5\n"
    "[detector]\n"
    "position = 20 20 20\n";

const std::string kBarrierCfg =
    "units = A_fs_eV\n"
    "[run]\n"
    "scenario = barrier\n"
    "mode = distribution\n"
    "[packet]\n"
    "sigma0 = 5\n"
    "E0 = 10\n"
    "x0 = -50\n"
    "[barrier]\n"
    "V0 = 8\n"
    "d = 10\n"
    "[detector]\n"
    "position = 20 20 20\n";

}  // namespace

TEST_CASE("minimal uniform-field config resolves with documented defaults") {
  const RunConfig cfg = parse_config(kUniformCfg);
  CHECK(cfg.scenario == ScenarioSpec::Kind::uniform_field);
  CHECK(cfg.mode == RunMode::distribution);
  CHECK(cfg.seed == 11);
  CHECK(cfg.spin == SpinChoice::both);
  CHECK(cfg.uniform_spec.E0 == 5.0);
  CHECK(cfg.uniform_spec.sigma0 == 5.0);
  // gravity preset: K = m g
  CHECK(cfg.uniform_spec.force ==
        doctest::Approx(gravity_force(electron_constants())).epsilon(1e-12));
  CHECK(cfg.detector.x == 20.0);
  CHECK(cfg.integrator.dt == 5e-4);
  CHECK(cfg.timegrid.points == 4001);
}

TEST_CASE("barrier config matches the scattering scenario parameters") {
  const RunConfig cfg = parse_config(kBarrierCfg);
  CHECK(cfg.scenario == ScenarioSpec::Kind::barrier);
  CHECK(cfg.barrier_spec.V0 == 8.0);
  CHECK(cfg.barrier_spec.d == 10.0);
  CHECK(cfg.barrier_spec.E0 == 10.0);
  CHECK(cfg.barrier_spec.x0 == -50.0);
  CHECK(cfg.barrier_spec.sigma0 == 5.0);
}

TEST_CASE("config validation errors carry line numbers and invariants") {
  // invariant violation names the field and the invariant
  try {
    parse_config("units = A_fs_eV\n[run]\nscenario = uniform_field\n[packet]\nsigma0 = -1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("sigma0") != std::string::npos);
    CHECK(msg.find("> 0") != std::string::npos);
    CHECK(e.line() == 5);
  }

  // unknown keys are hard errors
  try {
    parse_config("units = A_fs_eV\n[run]\nscenario = barrier\nsigma_zero = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("unknown key") != std::string::npos);
    CHECK(e.line() == 4);
  }

  // units header is mandatory and first
  CHECK_THROWS_AS(parse_config("[run]\nscenario = barrier\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("units = SI\n"), ConfigError);
  // duplicate keys
  CHECK_THROWS_AS(
      parse_config("units = A_fs_eV\n[run]\nscenario = barrier\nscenario = barrier\n"),
      ConfigError);
  // barrier x0 invariant
  CHECK_THROWS_AS(parse_config("units = A_fs_eV\n[run]\nscenario = barrier\n[packet]\nx0 = -10\n"),
                  ConfigError);
  // missing scenario outside figures mode
  CHECK_THROWS_AS(parse_config("units = A_fs_eV\n[run]\nmode = distribution\n"), ConfigError);
  CHECK_NOTHROW(parse_config("units = A_fs_eV\n[run]\nmode = figures\n"));
}

TEST_CASE("distribution run writes schema-complete artifacts") {
  const fs::path dir = fresh_dir("dist");
  RunConfig cfg = parse_config(kUniformCfg);
  const RunOutcome out = run(cfg, dir.string());
  CHECK(out.exit_code == kExitOk);
  CHECK(fs::exists(dir / "resolved.json"));
  CHECK(fs::exists(dir / "distribution.csv"));
  CHECK(fs::exists(dir / "summary.json"));

  const std::string csv = slurp(dir / "distribution.csv");
  CHECK(csv.rfind("t_fs,jmag_spin,jmag_nospin,pi_spin,pi_nospin\n", 0) == 0);

  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary.contains("tau_fs"));
  CHECK(summary.contains("tau_i_fs"));
  CHECK(summary.contains("delta_fs"));
  CHECK(summary.contains("tail_bound"));
  CHECK(summary.contains("seed"));
  CHECK(summary["delta_fs"].get<double>() > 0.0);  // tau > tau_i
  CHECK(summary["tail_bound"].get<double>() <= 1e-4);

  const auto resolved = nlohmann::json::parse(slurp(dir / "resolved.json"));
  CHECK(resolved["seed"].get<std::uint64_t>() == 11);
  CHECK(resolved["version"].get<std::string>() == kVersion);
  CHECK(resolved["scenario"].get<std::string>() == "uniform_field");
  CHECK(resolved["uniform_field"].contains("constants"));
}

TEST_CASE("ensemble runs are byte-identical across reruns and worker counts") {
  RunConfig cfg = parse_config(kUniformCfg);
  cfg.mode = RunMode::ensemble;
  cfg.ensemble_n = 24;
  cfg.integrator.dt = 2e-3;
  cfg.integrator.t_max = 1.5;
  cfg.integrator.store_stride = 25;
  cfg.integrator.stop_at_detector = false;

  const fs::path d1 = fresh_dir("ens1");
  const fs::path d2 = fresh_dir("ens2");
  const fs::path d3 = fresh_dir("ens3");
  cfg.threads = 1;
  cfg.integrator.threads = 1;
  CHECK(run(cfg, d1.string()).exit_code == kExitOk);
  CHECK(run(cfg, d2.string()).exit_code == kExitOk);
  cfg.threads = 2;
  cfg.integrator.threads = 2;
  CHECK(run(cfg, d3.string()).exit_code == kExitOk);

  const std::string t1 = slurp(d1 / "trajectories.csv");
  CHECK(t1 == slurp(d2 / "trajectories.csv"));
  CHECK(t1 == slurp(d3 / "trajectories.csv"));
  CHECK(t1.rfind("t_fs,x_A,y_A,z_A,path_id,spin_flag\n", 0) == 0);

  const auto ens = nlohmann::json::parse(slurp(d1 / "ensemble.json"));
  CHECK(ens.contains("spin_on"));
  CHECK(ens.contains("spin_off"));
  CHECK(ens["spin_off"]["transmitted_fraction"].get<double>() +
            ens["spin_off"]["reflected_fraction"].get<double>() +
            ens["spin_off"]["aborted_fraction"].get<double>() +
            ens["spin_off"]["in_barrier_fraction"].get<double>() ==
        doctest::Approx(1.0));
}

TEST_CASE("sweep run emits the documented csv schema") {
  RunConfig cfg = parse_config(kUniformCfg);
  cfg.mode = RunMode::sweep;
  cfg.sweep_given = true;
  cfg.sweep_parameter = SweepParameter::mass;
  cfg.sweep_values = {1.0, 2.0};
  const fs::path dir = fresh_dir("sweep");
  CHECK(run(cfg, dir.string()).exit_code == kExitOk);
  const std::string csv = slurp(dir / "sweep.csv");
  CHECK(csv.rfind("param_value,tau_fs,tau_i_fs,delta_fs,tail_bound\n", 0) == 0);
  CHECK(fs::exists(dir / "sweep_summary.json"));
}

TEST_CASE("figures mode writes the full set of eight data files plus manifest") {
  RunConfig cfg = parse_config("units = A_fs_eV\n[run]\nmode = figures\nseed = 3\n");
  const fs::path dir = fresh_dir("figs");
  const RunOutcome out = run(cfg, dir.string());
  CHECK(out.exit_code == kExitOk);
  for (int i = 1; i <= 8; ++i) {
    CAPTURE(i);
    CHECK(fs::exists(dir / ("fig" + std::to_string(i) + ".csv")));
  }
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  for (int i = 1; i <= 8; ++i) {
    const std::string key = "fig" + std::to_string(i);
    REQUIRE(manifest.contains(key));
    CHECK(manifest[key].contains("file"));
    CHECK(manifest[key].contains("content"));
  }
  // trajectory figures carry the trajectory schema
  CHECK(slurp(dir / "fig4.csv").rfind("t_fs,x_A,y_A,z_A,path_id,spin_flag\n", 0) == 0);
  // sweep figures carry the sweep schema
  CHECK(slurp(dir / "fig6.csv").rfind("param_value,tau_fs,tau_i_fs,delta_fs,tail_bound\n", 0) == 0);
}

TEST_CASE("config errors map to exit code 2 through run()") {
  RunConfig cfg;  // defaults are fine; force a failure through a bad output dir
  const RunOutcome out = run(cfg, "/proc/definitely/not/writable");
  CHECK(out.exit_code != kExitOk);
}
