#include "catch_amalgamated.hpp"

#include <rcacpilot/harness.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rcacpilot;
using Catch::Approx;

namespace {

const std::string kConfigDir = RCACPILOT_CONFIG_DIR;

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("rcacpilot_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string csv_text(const ScenarioResult& r) {
  std::ostringstream out;
  write_telemetry_csv(out, r.telemetry);
  return out.str();
}

}  // namespace

TEST_CASE("scenario config parsing", "[harness]") {
  SECTION("shipped configs") {
    const ScenarioConfig a = ScenarioConfig::load(kConfigDir + "/adaptive.cfg");
    CHECK(a.mode == AutopilotMode::Adaptive);
    CHECK(a.t_max == 200.0);
    CHECK(std::filesystem::path(a.mission) == std::filesystem::path(kConfigDir) / "mission_square.mission");
    const ScenarioConfig f = ScenarioConfig::load(kConfigDir + "/fixed.cfg");
    CHECK(f.mode == AutopilotMode::FixedGain);
    CHECK(f.load_mission().to_text() == Mission::square().to_text());
  }
  SECTION("text round trip") {
    ScenarioConfig c;
    c.alpha_p = 0.5;
    c.alpha_n = 0.1;
    c.inertia_scale = 5.0;
    c.mission = "/tmp/m.mission";
    c.name = "x";
    const ScenarioConfig back = ScenarioConfig::parse(c.to_text());
    CHECK(back.to_text() == c.to_text());
  }
  SECTION("relative mission path without a base stays relative") {
    CHECK(ScenarioConfig::parse("mission = a/b.mission").mission == "a/b.mission");
    CHECK(ScenarioConfig::parse("mission = b.mission", "<c>", "/base").mission == "/base/b.mission");
  }
  SECTION("invalid values") {
    CHECK_THROWS_AS(ScenarioConfig::parse("colour = red"), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::parse("mode = manual"), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::parse("alpha_p = 0"), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::parse("alpha_n = -1"), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::parse("inertia_scale = nan"), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::parse("t_max = -1"), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::parse("dt_sim = 0.003"), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::parse("decimation = 0"), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::load(kConfigDir + "/missing.cfg"), ConfigError);
    CHECK_NOTHROW(ScenarioConfig::parse("dt_sim = 0.002"));
  }
}

TEST_CASE("ground contact", "[harness]") {
  RigidBodyState s;
  s.Z = 0.01;
  s.W = 2.0;
  s.Phi = 0.2;
  s.Psi = 1.0;
  s.R = 3.0;
  const RigidBodyState g = apply_ground_contact(s);
  CHECK(g.Z == 0.0);
  CHECK(g.W == 0.0);
  CHECK(g.Phi == 0.0);
  CHECK(g.R == 0.0);
  CHECK(g.Psi == 1.0);
  s.Z = -0.01;
  CHECK(apply_ground_contact(s) == s);
}

TEST_CASE("zero duration writes only the header", "[harness]") {
  ScenarioConfig c;
  c.t_max = 0.0;
  c.out = scratch_dir("zero").string();
  c.name = "empty";
  const ScenarioResult r = run_scenario(c);
  CHECK(r.telemetry.empty());
  std::ifstream in(r.telemetry_path);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == telemetry_header());
  CHECK_FALSE(std::getline(in, line));
}

TEST_CASE("log rows follow the decimation", "[harness]") {
  ScenarioConfig c;
  c.mode = AutopilotMode::FixedGain;
  c.t_max = 2.0;
  c.decimation = 7;
  const ScenarioResult r = run_scenario(c);
  const double t_end = r.telemetry.back().t;
  CHECK(r.telemetry.size() == static_cast<std::size_t>(std::floor(t_end / c.dt_sim / c.decimation + 1e-9)) + 1);
  CHECK(r.telemetry.front().t == 0.0);
  CHECK(r.telemetry[1].t == Approx(0.007));
  CHECK(t_end <= 2.0);
}

TEST_CASE("runs are deterministic", "[harness]") {
  ScenarioConfig c;
  c.t_max = 15.0;
  const ScenarioResult a = run_scenario(c);
  const ScenarioResult b = run_scenario(c);
  REQUIRE(csv_text(a) == csv_text(b));
}

TEST_CASE("single-value sweep equals a plain run", "[harness]") {
  ScenarioConfig c;
  c.t_max = 5.0;
  c.name = "s";
  const auto swept = sweep(c, SweepParameter::AlphaN, {0.5});
  REQUIRE(swept.size() == 1);
  CHECK(swept[0].config.name == "s_alpha_n_0.5");
  ScenarioConfig d = c;
  d.alpha_n = 0.5;
  CHECK(csv_text(swept[0]) == csv_text(run_scenario(d)));
  CHECK_THROWS_AS(sweep(c, SweepParameter::AlphaP, {}), ConfigError);
  CHECK_THROWS_AS(sweep(c, SweepParameter::AlphaP, {0.0}), ConfigError);
}

TEST_CASE("fixed-gain autopilot flies the square", "[harness]") {
  ScenarioConfig c = ScenarioConfig::load(kConfigDir + "/fixed.cfg");
  const ScenarioResult r = run_scenario(c);
  const RunMetrics& m = r.metrics;
  CHECK(m.mission_completed);
  CHECK_FALSE(m.diverged);
  CHECK(m.completion_time < 200.0);
  CHECK(m.max_tilt < std::numbers::pi / 4 + 0.2);
  CHECK(r.telemetry.back().phase.kind == PhaseKind::Done);
  for (const TelemetryRecord& rec : r.telemetry) {
    REQUIRE(rec.all_finite());
    REQUIRE(rec.state.position().norm() < 100.0);
  }
  // fixed gains never move
  CHECK(r.telemetry.front().gains == r.telemetry.back().gains);
}

TEST_CASE("adaptive autopilot learns from zero gains", "[harness]") {
  ScenarioConfig c = ScenarioConfig::load(kConfigDir + "/adaptive.cfg");
  c.t_max = 20.0;
  const ScenarioResult r = run_scenario(c);
  CHECK_FALSE(r.metrics.diverged);
  for (double g : r.telemetry.front().gains) CHECK(g == 0.0);
  int moved = 0;
  for (double g : r.telemetry.back().gains) moved += g != 0.0;
  CHECK(moved == static_cast<int>(kGainCount));
  CHECK(r.telemetry.back().phase.kind != PhaseKind::Takeoff);
}

TEST_CASE("inertia comparison at nominal inertia", "[harness]") {
  ScenarioConfig c;
  c.t_max = 10.0;
  c.name = "cmp";
  const InertiaComparison cmp = compare_inertia(c, 1.0);
  CHECK(cmp.fixed.config.mode == AutopilotMode::FixedGain);
  CHECK(cmp.adaptive.config.mode == AutopilotMode::Adaptive);
  CHECK(cmp.fixed.config.name == "cmp_fixed_J1");
  CHECK_FALSE(cmp.fixed.metrics.diverged);
  CHECK_FALSE(cmp.adaptive.metrics.diverged);
  CHECK_THROWS_AS(compare_inertia(c, 0.0), ConfigError);
}

TEST_CASE("a divergent run truncates its log and still writes outputs", "[harness]") {
  ScenarioConfig c;
  c.mode = AutopilotMode::Adaptive;
  c.inertia_scale = 5.0;
  c.t_max = 60.0;
  c.out = scratch_dir("diverge").string();
  c.name = "j5";
  const ScenarioResult r = run_scenario(c);
  REQUIRE(r.metrics.diverged);
  CHECK_FALSE(r.failure.empty());
  CHECK(r.telemetry.back().t < 60.0);
  CHECK_FALSE(r.metrics.mission_completed);
  const auto dir = std::filesystem::path(c.out);
  CHECK(std::filesystem::exists(dir / "j5.csv"));
  CHECK(std::filesystem::exists(dir / "j5.meta"));
  std::ifstream metrics(dir / "j5_metrics.csv");
  std::string header, row;
  REQUIRE(std::getline(metrics, header));
  REQUIRE(std::getline(metrics, row));
  CHECK(header == metrics_header());
  CHECK(row.find("j5,adaptive,") == 0);
  std::ifstream csv(dir / "j5.csv");
  CHECK(read_telemetry_csv(csv).size() == r.telemetry.size());
}
