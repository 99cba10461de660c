#pragma once

/**
 * @file harness.hpp
 * @brief Closed-loop experiment runner: mission -> autopilot -> plant.
 *
 * The simulation is fully deterministic; there is no random seed anywhere.
 * Output files for a run named NAME in directory OUT:
 *
 *     OUT/NAME.csv          telemetry (see telemetry.hpp)
 *     OUT/NAME.meta         resolved scenario config and mission, key = value
 *     OUT/NAME_metrics.csv  one metrics line
 */

#include <rcacpilot/autopilot.hpp>
#include <rcacpilot/dynamics.hpp>
#include <rcacpilot/keyvalue.hpp>
#include <rcacpilot/mission.hpp>
#include <rcacpilot/telemetry.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace rcacpilot {

struct ScenarioConfig {
  AutopilotMode mode = AutopilotMode::Adaptive;
  double alpha_p = 1.0;
  double alpha_n = 1.0;
  double inertia_scale = 1.0;  // applied to the plant only
  std::string mission;         // path; empty selects the built-in square mission
  double t_max = 200.0;
  double dt_sim = 0.001;
  std::string out;             // output directory; empty writes nothing
  int decimation = 10;
  std::string name = "run";
  bool gravity_ff = false;     // adaptive mode only; fixed-gain always feeds hover thrust

  void validate() const {
    if (!(alpha_p > 0.0) || !std::isfinite(alpha_p)) throw ConfigError("alpha_p must be positive");
    if (!(alpha_n > 0.0) || !std::isfinite(alpha_n)) throw ConfigError("alpha_n must be positive");
    if (!(inertia_scale > 0.0) || !std::isfinite(inertia_scale)) throw ConfigError("inertia_scale must be positive");
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max must be non-negative");
    if (!(dt_sim > 0.0)) throw ConfigError("dt_sim must be positive");
    const double ratio = kAttitudePeriod / dt_sim;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 || std::round(ratio) < 1.0) {
      throw ConfigError("dt_sim must divide 0.004 s exactly");
    }
    if (decimation < 1) throw ConfigError("decimation must be >= 1");
    if (name.empty()) throw ConfigError("name must not be empty");
  }

  /// Parses key = value text; unknown keys are rejected. Relative mission
  /// paths are resolved against base_dir when given.
  static ScenarioConfig parse(std::string_view text, const std::string& source = "<config>",
                              const std::filesystem::path& base_dir = {}) {
    ScenarioConfig c;
    for (const kv::Entry& e : kv::parse(text, source)) {
      const std::string ctx = source + ":" + std::to_string(e.line);
      if (e.key == "mode") {
        c.mode = parse_mode(e.value, ctx);
      } else if (e.key == "alpha_p") {
        c.alpha_p = kv::to_double(e.value, ctx);
      } else if (e.key == "alpha_n") {
        c.alpha_n = kv::to_double(e.value, ctx);
      } else if (e.key == "inertia_scale") {
        c.inertia_scale = kv::to_double(e.value, ctx);
      } else if (e.key == "mission") {
        std::filesystem::path p(e.value);
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        c.mission = p.string();
      } else if (e.key == "t_max") {
        c.t_max = kv::to_double(e.value, ctx);
      } else if (e.key == "dt_sim") {
        c.dt_sim = kv::to_double(e.value, ctx);
      } else if (e.key == "out") {
        c.out = e.value;
      } else if (e.key == "decimation") {
        c.decimation = static_cast<int>(kv::to_int(e.value, ctx));
      } else if (e.key == "name") {
        c.name = e.value;
      } else if (e.key == "gravity_ff") {
        c.gravity_ff = kv::to_bool(e.value, ctx);
      } else {
        throw ConfigError(ctx + ": unknown config key '" + e.key + "'");
      }
    }
    c.validate();
    return c;
  }

  static ScenarioConfig load(const std::string& path) {
    return parse(kv::read_file(path), path, std::filesystem::path(path).parent_path());
  }

  static AutopilotMode parse_mode(std::string_view s, const std::string& ctx) {
    if (s == "fixed") return AutopilotMode::FixedGain;
    if (s == "adaptive") return AutopilotMode::Adaptive;
    throw ConfigError(ctx + ": mode must be 'fixed' or 'adaptive'");
  }

  std::string to_text() const {
    std::string s;
    s += std::string("mode = ") + mode_name(mode) + "\n";
    s += "alpha_p = " + kv::format_double(alpha_p) + "\n";
    s += "alpha_n = " + kv::format_double(alpha_n) + "\n";
    s += "inertia_scale = " + kv::format_double(inertia_scale) + "\n";
    if (!mission.empty()) s += "mission = " + mission + "\n";
    s += "t_max = " + kv::format_double(t_max) + "\n";
    s += "dt_sim = " + kv::format_double(dt_sim) + "\n";
    if (!out.empty()) s += "out = " + out + "\n";
    s += "decimation = " + std::to_string(decimation) + "\n";
    s += "name = " + name + "\n";
    s += std::string("gravity_ff = ") + (gravity_ff ? "true" : "false") + "\n";
    return s;
  }

  Mission load_mission() const { return mission.empty() ? Mission::square() : Mission::load(mission); }

  AutopilotConfig autopilot_config(const QuadParams& nominal = {}) const {
    AutopilotConfig c = mode == AutopilotMode::FixedGain ? AutopilotConfig::fixed_gain(nominal)
                                                         : AutopilotConfig::adaptive(nominal, alpha_p, alpha_n);
    if (mode == AutopilotMode::Adaptive) c.gravity_ff = gravity_ff;
    c.dt_sim = dt_sim;
    return c;
  }
};

struct ScenarioResult {
  ScenarioConfig config;
  RunMetrics metrics;
  std::vector<TelemetryRecord> telemetry;
  std::string failure;  // divergence message when metrics.diverged
  std::string telemetry_path;
};

/// Resting on the ground (Z >= 0 in NED): position clamped to the surface,
/// velocity, roll, pitch and body rates zeroed; heading kept.
inline RigidBodyState apply_ground_contact(RigidBodyState s) {
  if (s.Z <= 0.0) return s;
  s.Z = 0.0;
  s.U = s.V = s.W = 0.0;
  s.Phi = s.Theta = 0.0;
  s.P = s.Q = s.R = 0.0;
  return s;
}

inline std::string metrics_row(const ScenarioConfig& c, const RunMetrics& m) {
  std::string row = c.name + "," + mode_name(c.mode);
  auto put = [&row](double v) { row += "," + kv::format_double(v); };
  put(c.alpha_p);
  put(c.alpha_n);
  put(c.inertia_scale);
  row += m.mission_completed ? ",1" : ",0";
  put(m.completion_time);
  for (int i = 0; i < 3; ++i) put(m.rms_pos_err[i]);
  put(m.rms_yaw_err);
  put(m.max_tilt);
  put(m.gain_settling);
  row += m.diverged ? ",1" : ",0";
  row += "," + std::to_string(m.yaw_zero_crossings);
  put(m.t_end);
  row += "," + std::to_string(m.samples);
  return row;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
  if (!f) throw ConfigError("write failed: " + path.string());
}

inline void write_outputs(ScenarioResult& r, const Mission& mission) {
  if (r.config.out.empty()) return;
  const std::filesystem::path dir(r.config.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string());

  std::ostringstream csv;
  write_telemetry_csv(csv, r.telemetry);
  const auto telemetry_path = dir / (r.config.name + ".csv");
  write_text_file(telemetry_path, csv.str());
  r.telemetry_path = telemetry_path.string();

  std::string meta = "# resolved scenario\n" + r.config.to_text();
  meta += "# mission\n";
  std::istringstream mission_lines(mission.to_text());
  for (std::string line; std::getline(mission_lines, line);) meta += "mission." + line + "\n";
  write_text_file(dir / (r.config.name + ".meta"), meta);
  write_text_file(dir / (r.config.name + "_metrics.csv"),
                  metrics_header() + "\n" + metrics_row(r.config, r.metrics) + "\n");
}

/// Runs one closed-loop flight from rest at home until the mission is done or
/// t_max is reached. Logs every decimation-th step starting at t = 0; after
/// the mission completes the run continues to the next logging boundary so
/// the final row carries the Done phase. Divergence (singular attitude,
/// non-finite state, or an RLS blow-up) truncates the log and sets
/// metrics.diverged.
/// The autopilot is built from ap_config; the plant uses the nominal
/// parameters with the scenario's inertia scale.
inline ScenarioResult run_scenario(const ScenarioConfig& config, const AutopilotConfig& ap_config) {
  config.validate();
  ScenarioResult result;
  result.config = config;
  const Mission mission = config.load_mission();
  mission.validate();

  const QuadParams nominal{};
  const QuadParams plant = nominal.with_inertia_scale(config.inertia_scale);

  if (config.t_max <= 0.0) {
    result.metrics.completion_time = 0.0;
    write_outputs(result, mission);
    return result;
  }

  Autopilot autopilot(ap_config);
  RigidBodyState state{};
  state.X = mission.home_x;
  state.Y = mission.home_y;
  MissionProgress progress{};

  const double dt = config.dt_sim;
  const auto last_step = static_cast<std::int64_t>(std::floor(config.t_max / dt + 1e-9));
  const std::int64_t dec = config.decimation;
  std::optional<std::int64_t> done_step;

  try {
    for (std::int64_t k = 0;; ++k) {
      const double t = static_cast<double>(k) * dt;
      const MissionSetpoint msp = setpoint_at(mission, progress, state, t);
      progress = msp.progress;
      if (msp.phase.kind == PhaseKind::Done && !done_step) done_step = k;

      const MotorSpeeds& omegas = autopilot.step(t, state, msp.pos_sp, msp.psi_sp);

      if (k % dec == 0) {
        TelemetryRecord rec;
        rec.t = t;
        rec.state = state;
        const CascadeSetpoints& sp = autopilot.setpoints();
        rec.pos_sp = msp.pos_sp;
        rec.vel_sp = sp.vel_sp;
        rec.force_sp = sp.force_sp;
        rec.att_sp = sp.att_sp;
        rec.rate_sp = sp.rate_sp;
        rec.angacc_sp = sp.angacc_sp;
        rec.thrust_sp = sp.thrust_sp;
        rec.motors = omegas;
        rec.gains = autopilot.gains();
        rec.phase = msp.phase;
        rec.saturation = autopilot.saturation();
        result.telemetry.push_back(rec);
        if (done_step) break;
      }
      if (k >= last_step) break;

      const Wrench wrench = motor_speeds_to_wrench(omegas, plant);
      state = apply_ground_contact(step(state, wrench, dt, plant));
    }
  } catch (const DivergenceError& e) {
    result.metrics.diverged = true;
    result.failure = e.what();
  } catch (const SingularityError& e) {
    result.metrics.diverged = true;
    result.failure = e.what();
  } catch (const NonFiniteStateError& e) {
    result.metrics.diverged = true;
    result.failure = e.what();
  }

  if (!result.telemetry.empty()) {
    const bool diverged = result.metrics.diverged;
    result.metrics = compute_metrics(result.telemetry);
    result.metrics.diverged = result.metrics.diverged || diverged;
  }
  write_outputs(result, mission);
  return result;
}

inline ScenarioResult run_scenario(const ScenarioConfig& config) {
  return run_scenario(config, config.autopilot_config());
}

enum class SweepParameter { AlphaP, AlphaN };

inline const char* parameter_name(SweepParameter p) { return p == SweepParameter::AlphaP ? "alpha_p" : "alpha_n"; }

/// One run per value (all else fixed). Runs are named NAME_<param>_<value>; a
/// summary OUT/NAME_sweep_<param>.csv lists one metrics line per value, in
/// input order. Divergent runs are recorded and the sweep continues.
inline std::vector<ScenarioResult> sweep(const ScenarioConfig& base, SweepParameter parameter,
                                         const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("sweep: no values");
  std::vector<ScenarioResult> results;
  std::string summary = metrics_header() + "\n";
  for (double v : values) {
    if (!(v > 0.0)) throw ConfigError("sweep: values must be positive");
    ScenarioConfig c = base;
    (parameter == SweepParameter::AlphaP ? c.alpha_p : c.alpha_n) = v;
    c.name = base.name + "_" + parameter_name(parameter) + "_" + kv::format_double(v);
    results.push_back(run_scenario(c));
    summary += metrics_row(results.back().config, results.back().metrics) + "\n";
  }
  if (!base.out.empty()) {
    write_text_file(std::filesystem::path(base.out) / (base.name + "_sweep_" + parameter_name(parameter) + ".csv"),
                    summary);
  }
  return results;
}

struct InertiaComparison {
  ScenarioResult fixed;
  ScenarioResult adaptive;
};

/// Fixed-gain and adaptive flights on the same plant with scaled inertia.
inline InertiaComparison compare_inertia(const ScenarioConfig& base, double scale) {
  if (!(scale > 0.0)) throw ConfigError("compare_inertia: scale must be positive");
  InertiaComparison out;
  ScenarioConfig c = base;
  c.inertia_scale = scale;
  const std::string suffix = "_J" + kv::format_double(scale);
  c.mode = AutopilotMode::FixedGain;
  c.name = base.name + "_fixed" + suffix;
  out.fixed = run_scenario(c);
  c.mode = AutopilotMode::Adaptive;
  c.name = base.name + "_adaptive" + suffix;
  out.adaptive = run_scenario(c);
  if (!base.out.empty()) {
    write_text_file(std::filesystem::path(base.out) / (base.name + "_inertia" + suffix + ".csv"),
                    metrics_header() + "\n" + metrics_row(out.fixed.config, out.fixed.metrics) + "\n" +
                        metrics_row(out.adaptive.config, out.adaptive.metrics) + "\n");
  }
  return out;
}

}  // namespace rcacpilot
