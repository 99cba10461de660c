// rcacpilot: run closed-loop quadcopter flights with the fixed-gain or the
// adaptive autopilot.
//
//   rcacpilot run             [options]
//   rcacpilot sweep           --param alpha_p|alpha_n --values 0.1,0.5,1,2 [options]
//   rcacpilot compare-inertia [--inertia-scale 5] [options]
//
// Exit codes: 0 success, 1 config/IO error, 2 at least one run diverged.

#include <rcacpilot/harness.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace rcacpilot;

struct Overrides {
  std::string config;
  std::string mode;
  std::optional<double> alpha_p, alpha_n, inertia_scale, t_max;
  std::optional<int> decimation;
  std::string mission, out, name;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Scenario config file (key = value)");
  cmd->add_option("--mode", o.mode, "fixed | adaptive")->check(CLI::IsMember({"fixed", "adaptive"}));
  cmd->add_option("--alpha-p", o.alpha_p, "Scale factor on every P0");
  cmd->add_option("--alpha-n", o.alpha_n, "Scale factor on every sigma");
  cmd->add_option("--inertia-scale", o.inertia_scale, "Scale on the plant inertia diagonal");
  cmd->add_option("--mission", o.mission, "Mission file (default: built-in square)");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--t-max", o.t_max, "Maximum simulated time (s)");
  cmd->add_option("--decimation", o.decimation, "Log every N-th simulation step");
  cmd->add_option("--name", o.name, "Run name (file prefix)");
}

ScenarioConfig resolve(const Overrides& o) {
  ScenarioConfig c = o.config.empty() ? ScenarioConfig{} : ScenarioConfig::load(o.config);
  if (!o.mode.empty()) c.mode = ScenarioConfig::parse_mode(o.mode, "--mode");
  if (o.alpha_p) c.alpha_p = *o.alpha_p;
  if (o.alpha_n) c.alpha_n = *o.alpha_n;
  if (o.inertia_scale) c.inertia_scale = *o.inertia_scale;
  if (o.t_max) c.t_max = *o.t_max;
  if (o.decimation) c.decimation = *o.decimation;
  if (!o.mission.empty()) c.mission = o.mission;
  if (!o.out.empty()) c.out = o.out;
  if (!o.name.empty()) c.name = o.name;
  c.validate();
  return c;
}

void print_summary(const ScenarioResult& r) {
  const RunMetrics& m = r.metrics;
  std::printf("%-28s %-8s completed=%s t=%.2fs rms_pos=(%.3f, %.3f, %.3f) m rms_yaw=%.4f rad "
              "yaw_crossings=%d max_tilt=%.3f rad gain_settling=%.4g%s\n",
              r.config.name.c_str(), mode_name(r.config.mode), m.mission_completed ? "yes" : "no",
              m.completion_time, m.rms_pos_err.x(), m.rms_pos_err.y(), m.rms_pos_err.z(), m.rms_yaw_err,
              m.yaw_zero_crossings, m.max_tilt, m.gain_settling, m.diverged ? " DIVERGED" : "");
  if (!r.failure.empty()) std::printf("    %s\n", r.failure.c_str());
  if (!r.telemetry_path.empty()) std::printf("    telemetry: %s\n", r.telemetry_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadcopter flight simulator with a retrospective-cost adaptive autopilot"};
  app.require_subcommand(1);

  Overrides run_opts, sweep_opts, inertia_opts;
  auto* run_cmd = app.add_subcommand("run", "Fly one scenario");
  add_common_options(run_cmd, run_opts);

  auto* sweep_cmd = app.add_subcommand("sweep", "Fly one scenario per hyperparameter value");
  add_common_options(sweep_cmd, sweep_opts);
  std::string sweep_param = "alpha_p";
  std::vector<double> sweep_values{0.1, 0.5, 1.0, 2.0};
  sweep_cmd->add_option("--param", sweep_param, "alpha_p | alpha_n")->check(CLI::IsMember({"alpha_p", "alpha_n"}));
  sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->delimiter(',');

  auto* inertia_cmd = app.add_subcommand("compare-inertia", "Fixed vs adaptive on a plant with scaled inertia");
  add_common_options(inertia_cmd, inertia_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<ScenarioResult> results;
    if (*run_cmd) {
      results.push_back(run_scenario(resolve(run_opts)));
    } else if (*sweep_cmd) {
      const ScenarioConfig base = resolve(sweep_opts);
      results = sweep(base, sweep_param == "alpha_p" ? SweepParameter::AlphaP : SweepParameter::AlphaN, sweep_values);
    } else {
      Overrides o = inertia_opts;
      if (!o.inertia_scale) o.inertia_scale = 5.0;
      ScenarioConfig base = resolve(o);
      InertiaComparison cmp = compare_inertia(base, base.inertia_scale);
      results.push_back(std::move(cmp.fixed));
      results.push_back(std::move(cmp.adaptive));
    }
    bool diverged = false;
    for (const ScenarioResult& r : results) {
      print_summary(r);
      diverged = diverged || r.metrics.diverged;
    }
    return diverged ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
