#include "pilotwave/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "pilotwave/errors.hpp"
#include "pilotwave/packet.hpp"

namespace pw {

const char* run_mode_name(RunMode m) {
  switch (m) {
    case RunMode::distribution: return "distribution";
    case RunMode::sweep: return "sweep";
    case RunMode::ensemble: return "ensemble";
    case RunMode::figures: return "figures";
  }
  return "unknown";
}

const char* spin_choice_name(SpinChoice s) {
  switch (s) {
    case SpinChoice::on: return "on";
    case SpinChoice::off: return "off";
    case SpinChoice::both: return "both";
  }
  return "unknown";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_number(const std::string& v, int line) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + v + "'", line);
  }
}

std::vector<double> parse_numbers(const std::string& v, int line) {
  std::istringstream is(v);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) out.push_back(parse_number(tok, line));
  if (out.empty()) throw ConfigError("expected one or more numbers", line);
  return out;
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw ConfigError("expected a boolean, got '" + v + "'", line);
}

void apply_defaults(RunConfig& cfg) {
  cfg.uniform_spec.kind = ScenarioSpec::Kind::uniform_field;
  cfg.uniform_spec.sigma0 = 5.0;
  cfg.uniform_spec.E0 = 5.0;
  cfg.uniform_spec.x0 = 0.0;
  cfg.uniform_spec.force = gravity_force(cfg.uniform_spec.constants);

  cfg.barrier_spec.kind = ScenarioSpec::Kind::barrier;
  cfg.barrier_spec.sigma0 = 5.0;
  cfg.barrier_spec.E0 = 10.0;
  cfg.barrier_spec.V0 = 8.0;
  cfg.barrier_spec.d = 10.0;
  cfg.barrier_spec.x0 = -50.0;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  apply_defaults(cfg);

  ScenarioSpec* active = &cfg.uniform_spec;
  bool scenario_given = false;
  bool units_seen = false;
  bool x0_given = false;
  std::string force_value;
  int force_line = 0;

  std::istringstream stream(text);
  std::string raw;
  std::string section;
  int line_no = 0;

  auto require_units = [&](int line) {
    if (!units_seen)
      throw ConfigError("the first entry must be 'units = A_fs_eV'", line);
  };

  std::set<std::string> seen;
  std::vector<std::pair<std::string, std::pair<std::string, int>>> entries;

  while (std::getline(stream, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    std::string lineval = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (lineval.empty()) continue;
    if (lineval.front() == '[') {
      if (lineval.back() != ']') throw ConfigError("unterminated section header", line_no);
      section = trim(lineval.substr(1, lineval.size() - 2));
      continue;
    }
    const std::size_t eq = lineval.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value", line_no);
    std::string key = trim(lineval.substr(0, eq));
    const std::string value = trim(lineval.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError("expected key = value", line_no);
    if (!section.empty()) key = section + "." + key;

    if (key == "units") {
      if (value != "A_fs_eV")
        throw ConfigError("unsupported unit system '" + value + "' (only A_fs_eV)", line_no);
      units_seen = true;
      continue;
    }
    require_units(line_no);
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'", line_no);
    entries.emplace_back(key, std::make_pair(value, line_no));
  }
  require_units(line_no);

  // Scenario selection first: packet keys apply to the selected spec.
  for (const auto& [key, vl] : entries) {
    if (key != "run.scenario") continue;
    const auto& [value, line] = vl;
    if (value == "uniform_field")
      cfg.scenario = ScenarioSpec::Kind::uniform_field;
    else if (value == "barrier")
      cfg.scenario = ScenarioSpec::Kind::barrier;
    else
      throw ConfigError("scenario must be uniform_field or barrier", line);
    scenario_given = true;
  }
  active = cfg.scenario == ScenarioSpec::Kind::uniform_field ? &cfg.uniform_spec
                                                             : &cfg.barrier_spec;

  for (const auto& [key, vl] : entries) {
    const auto& [value, line] = vl;
    if (key == "run.scenario") {
      continue;
    } else if (key == "run.mode") {
      cfg.mode_given = true;
      if (value == "distribution") cfg.mode = RunMode::distribution;
      else if (value == "sweep") cfg.mode = RunMode::sweep;
      else if (value == "ensemble") cfg.mode = RunMode::ensemble;
      else if (value == "figures") cfg.mode = RunMode::figures;
      else throw ConfigError("mode must be distribution|sweep|ensemble|figures", line);
    } else if (key == "run.spin") {
      if (value == "on") cfg.spin = SpinChoice::on;
      else if (value == "off") cfg.spin = SpinChoice::off;
      else if (value == "both") cfg.spin = SpinChoice::both;
      else throw ConfigError("spin must be on|off|both", line);
    } else if (key == "run.seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_number(value, line));
    } else if (key == "run.threads") {
      cfg.threads = static_cast<int>(parse_number(value, line));
    } else if (key == "packet.sigma0") {
      const double v = parse_number(value, line);
      if (!(v > 0.0)) throw ConfigError("packet.sigma0 must be > 0 (invariant sigma0 > 0)", line);
      active->sigma0 = v;
    } else if (key == "packet.E0") {
      const double v = parse_number(value, line);
      if (!(v > 0.0)) throw ConfigError("packet.E0 must be > 0", line);
      active->E0 = v;
    } else if (key == "packet.x0") {
      active->x0 = parse_number(value, line);
      x0_given = true;
    } else if (key == "field.preset") {
      if (value != "gravity" && value != "strong" && value != "none")
        throw ConfigError("field.preset must be gravity|strong|none", line);
      cfg.field_preset = value;
    } else if (key == "field.K") {
      cfg.field_preset = "explicit";
      force_value = value;
      force_line = line;
    } else if (key == "barrier.V0") {
      const double v = parse_number(value, line);
      if (!(v >= 0.0)) throw ConfigError("barrier.V0 must be >= 0 (invariant V0 >= 0)", line);
      cfg.barrier_spec.V0 = v;
    } else if (key == "barrier.d") {
      const double v = parse_number(value, line);
      if (!(v > 0.0)) throw ConfigError("barrier.d must be > 0 (invariant d > 0)", line);
      cfg.barrier_spec.d = v;
    } else if (key == "detector.position") {
      const auto v = parse_numbers(value, line);
      if (v.size() != 3) throw ConfigError("detector.position needs three numbers", line);
      cfg.detector = {v[0], v[1], v[2]};
    } else if (key == "detector.mode") {
      if (value == "plane_x") cfg.integrator.detector_mode = DetectorMode::plane_x;
      else if (value == "sphere") cfg.integrator.detector_mode = DetectorMode::sphere;
      else throw ConfigError("detector.mode must be plane_x|sphere", line);
    } else if (key == "detector.sphere_radius") {
      const double v = parse_number(value, line);
      if (!(v > 0.0)) throw ConfigError("detector.sphere_radius must be > 0", line);
      cfg.integrator.sphere_radius = v;
    } else if (key == "integrator.dt") {
      const double v = parse_number(value, line);
      if (!(v > 0.0)) throw ConfigError("integrator.dt must be > 0 (invariant dt > 0)", line);
      cfg.integrator.dt = v;
    } else if (key == "integrator.t_max") {
      const double v = parse_number(value, line);
      if (!(v > 0.0)) throw ConfigError("integrator.t_max must be > 0 (invariant t_max > 0)", line);
      cfg.integrator.t_max = v;
    } else if (key == "integrator.store_stride") {
      const int v = static_cast<int>(parse_number(value, line));
      if (v < 1) throw ConfigError("integrator.store_stride must be >= 1", line);
      cfg.integrator.store_stride = v;
    } else if (key == "integrator.stop_at_detector") {
      cfg.integrator.stop_at_detector = parse_bool(value, line);
    } else if (key == "ensemble.n") {
      const double v = parse_number(value, line);
      if (!(v >= 1.0)) throw ConfigError("ensemble.n must be >= 1", line);
      cfg.ensemble_n = static_cast<std::size_t>(v);
    } else if (key == "sweep.parameter") {
      cfg.sweep_given = true;
      if (value == "mass") cfg.sweep_parameter = SweepParameter::mass;
      else if (value == "group_speed") cfg.sweep_parameter = SweepParameter::group_speed;
      else if (value == "barrier_width") cfg.sweep_parameter = SweepParameter::barrier_width;
      else throw ConfigError("sweep.parameter must be mass|group_speed|barrier_width", line);
    } else if (key == "sweep.values") {
      cfg.sweep_values = parse_numbers(value, line);
    } else if (key == "kgrid.nodes") {
      const int v = static_cast<int>(parse_number(value, line));
      if (v < 9) throw ConfigError("kgrid.nodes must be >= 9", line);
      cfg.uniform_spec.kgrid.nodes = v;
      cfg.barrier_spec.kgrid.nodes = v;
    } else if (key == "kgrid.span_sigmas") {
      const double v = parse_number(value, line);
      if (!(v >= 8.0)) throw ConfigError("kgrid.span_sigmas must be >= 8", line);
      cfg.uniform_spec.kgrid.span_sigmas = v;
      cfg.barrier_spec.kgrid.span_sigmas = v;
    } else if (key == "timegrid.points") {
      const int v = static_cast<int>(parse_number(value, line));
      if (v < 41) throw ConfigError("timegrid.points must be >= 41", line);
      cfg.timegrid.points = v;
    } else if (key == "timegrid.t_max") {
      cfg.timegrid.t_max = parse_number(value, line);
    } else {
      throw ConfigError("unknown key '" + key + "'", line);
    }
  }

  if (cfg.field_preset == "gravity")
    cfg.uniform_spec.force = gravity_force(cfg.uniform_spec.constants);
  else if (cfg.field_preset == "strong")
    cfg.uniform_spec.force = strong_force();
  else if (cfg.field_preset == "none")
    cfg.uniform_spec.force = 0.0;
  else
    cfg.uniform_spec.force = parse_number(force_value, force_line);

  if (cfg.scenario == ScenarioSpec::Kind::barrier && x0_given &&
      !(cfg.barrier_spec.x0 + 5.0 * cfg.barrier_spec.sigma0 < 0.0))
    throw ConfigError(
        "packet.x0 violates the invariant x0 + 5 sigma0 < 0 (packet must start left of the "
        "barrier)");

  if (!scenario_given && cfg.mode != RunMode::figures)
    throw ConfigError("missing required key run.scenario");
  if (cfg.mode == RunMode::sweep) {
    if (!cfg.sweep_given) throw ConfigError("sweep mode requires sweep.parameter");
    if (cfg.sweep_values.empty()) throw ConfigError("sweep mode requires sweep.values");
    if (cfg.sweep_parameter == SweepParameter::barrier_width &&
        cfg.scenario != ScenarioSpec::Kind::barrier)
      throw ConfigError("barrier_width sweep requires scenario = barrier");
  }
  cfg.integrator.threads = cfg.threads;
  cfg.timegrid.threads = cfg.threads;
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace pw
