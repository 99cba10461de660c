#pragma once

/**
 * @file telemetry.hpp
 * @brief Per-sample flight telemetry, its CSV form, and run metrics.
 *
 * CSV: UTF-8, '.' decimal separator, one header line, one row per record.
 * Numbers are written in shortest round-trip form so a log read back yields
 * bit-identical doubles.
 */

#include <rcacpilot/autopilot.hpp>
#include <rcacpilot/keyvalue.hpp>
#include <rcacpilot/mission.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace rcacpilot {

struct TelemetryRecord {
  double t = 0.0;
  RigidBodyState state{};
  Vec3 pos_sp = Vec3::Zero();
  Vec3 vel_sp = Vec3::Zero();
  Vec3 force_sp = Vec3::Zero();
  Vec3 att_sp = Vec3::Zero();
  Vec3 rate_sp = Vec3::Zero();
  Vec3 angacc_sp = Vec3::Zero();
  double thrust_sp = 0.0;
  MotorSpeeds motors{};
  GainSnapshot gains{};
  MissionPhase phase{};
  SaturationFlags saturation{};

  bool all_finite() const {
    if (!std::isfinite(t) || !state.all_finite() || !std::isfinite(thrust_sp)) return false;
    for (const Vec3* v : {&pos_sp, &vel_sp, &force_sp, &att_sp, &rate_sp, &angacc_sp}) {
      if (!v->allFinite()) return false;
    }
    for (double w : motors) if (!std::isfinite(w)) return false;
    for (double g : gains) if (!std::isfinite(g)) return false;
    return true;
  }
};

inline std::vector<std::string> telemetry_columns() {
  std::vector<std::string> c{"t", "X", "Y", "Z", "U", "V", "W", "Phi", "Theta", "Psi", "P", "Q", "R"};
  for (const char* group : {"pos_sp", "vel_sp", "force_sp"}) {
    for (const char* a : {"x", "y", "z"}) c.push_back(std::string(group) + "_" + a);
  }
  for (const char* a : {"roll", "pitch", "yaw"}) c.push_back(std::string("att_sp_") + a);
  for (const char* group : {"rate_sp", "angacc_sp"}) {
    for (const char* a : {"p", "q", "r"}) c.push_back(std::string(group) + "_" + a);
  }
  c.push_back("thrust_sp");
  for (int i = 1; i <= 4; ++i) c.push_back("omega_" + std::to_string(i));
  for (const std::string& g : Autopilot::gain_names()) c.push_back(g);
  for (const char* s : {"phase", "waypoint", "sat_velocity", "sat_tilt", "sat_thrust", "sat_motors"}) c.push_back(s);
  return c;
}

inline std::string telemetry_header() {
  std::string h;
  for (const std::string& c : telemetry_columns()) {
    if (!h.empty()) h += ',';
    h += c;
  }
  return h;
}

inline std::string to_csv_row(const TelemetryRecord& r) {
  std::string row;
  auto put = [&row](double v) {
    if (!row.empty()) row += ',';
    row += kv::format_double(v);
  };
  put(r.t);
  const auto sv = r.state.to_vector();
  for (int i = 0; i < 12; ++i) put(sv(i));
  for (const Vec3* v : {&r.pos_sp, &r.vel_sp, &r.force_sp, &r.att_sp, &r.rate_sp, &r.angacc_sp}) {
    for (int i = 0; i < 3; ++i) put((*v)(i));
  }
  put(r.thrust_sp);
  for (double w : r.motors) put(w);
  for (double g : r.gains) put(g);
  row += ',';
  row += phase_name(r.phase.kind);
  row += ',' + std::to_string(r.phase.index);
  row += ',' + std::to_string(static_cast<int>(r.saturation.velocity));
  row += ',' + std::to_string(static_cast<int>(r.saturation.tilt));
  row += ',' + std::to_string(static_cast<int>(r.saturation.thrust));
  row += ',' + std::to_string(r.saturation.motors);
  return row;
}

inline void write_telemetry_csv(std::ostream& out, std::span<const TelemetryRecord> records) {
  out << telemetry_header() << '\n';
  for (const TelemetryRecord& r : records) out << to_csv_row(r) << '\n';
}

inline PhaseKind parse_phase(std::string_view s) {
  for (PhaseKind k : {PhaseKind::Takeoff, PhaseKind::Enroute, PhaseKind::Land, PhaseKind::Done}) {
    if (s == phase_name(k)) return k;
  }
  throw ConfigError("telemetry: unknown phase '" + std::string(s) + "'");
}

/// Reads a telemetry CSV written by write_telemetry_csv. The header must match
/// the current schema exactly.
inline std::vector<TelemetryRecord> read_telemetry_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("telemetry: missing header");
  if (line != telemetry_header()) throw ConfigError("telemetry: header does not match schema");
  const std::size_t columns = telemetry_columns().size();
  std::vector<TelemetryRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    const std::string ctx = "telemetry line " + std::to_string(line_no);
    if (cells.size() != columns) throw ConfigError(ctx + ": wrong column count");
    std::size_t c = 0;
    auto num = [&] { return kv::to_double(cells[c++], ctx); };
    TelemetryRecord r;
    r.t = num();
    RigidBodyState::Vector sv;
    for (int i = 0; i < 12; ++i) sv(i) = num();
    r.state = RigidBodyState::from_vector(sv);
    for (Vec3* v : {&r.pos_sp, &r.vel_sp, &r.force_sp, &r.att_sp, &r.rate_sp, &r.angacc_sp}) {
      for (int i = 0; i < 3; ++i) (*v)(i) = num();
    }
    r.thrust_sp = num();
    for (double& w : r.motors) w = num();
    for (double& g : r.gains) g = num();
    r.phase.kind = parse_phase(cells[c++]);
    r.phase.index = static_cast<int>(kv::to_int(cells[c++], ctx));
    r.saturation.velocity = kv::to_int(cells[c++], ctx) != 0;
    r.saturation.tilt = kv::to_int(cells[c++], ctx) != 0;
    r.saturation.thrust = kv::to_int(cells[c++], ctx) != 0;
    r.saturation.motors = static_cast<int>(kv::to_int(cells[c++], ctx));
    records.push_back(r);
  }
  return records;
}

// ---------------------------------------------------------------------------

struct RunMetrics {
  bool mission_completed = false;
  double completion_time = 0.0;  // first Done sample, or end of log if never done
  Vec3 rms_pos_err = Vec3::Zero();  // over Enroute samples
  double rms_yaw_err = 0.0;         // over Enroute samples
  double max_tilt = 0.0;
  double gain_settling = 0.0;  // max over gains of the final-20% variation
  bool diverged = false;
  int yaw_zero_crossings = 0;  // sign changes of the Enroute yaw error
  double t_end = 0.0;
  std::size_t samples = 0;
  GainSnapshot final_gains{};
  GainSnapshot gain_variation{};  // per gain: max |theta(t) - theta(t_end)| over the final 20%
};

/// Yaw-error excursions smaller than this do not register as a sign change.
inline constexpr double kYawCrossingDeadband = 1e-3;

/// Metrics over a telemetry log. A record with any non-finite field marks the
/// run as diverged; metrics then cover the finite prefix only.
inline RunMetrics compute_metrics(std::span<const TelemetryRecord> log) {
  if (log.empty()) throw std::invalid_argument("compute_metrics: empty telemetry");
  RunMetrics m;
  std::size_t n = 0;
  while (n < log.size() && log[n].all_finite()) ++n;
  m.diverged = n < log.size();
  if (n == 0) return m;
  const auto valid = log.first(n);
  m.samples = n;
  m.t_end = valid.back().t;
  m.completion_time = m.t_end;

  Vec3 sq_pos = Vec3::Zero();
  double sq_yaw = 0.0;
  std::size_t enroute = 0;
  int last_sign = 0;
  for (const TelemetryRecord& r : valid) {
    if (r.phase.kind == PhaseKind::Done && !m.mission_completed) {
      m.mission_completed = true;
      m.completion_time = r.t;
    }
    const double tilt = std::acos(std::clamp(std::cos(r.state.Phi) * std::cos(r.state.Theta), -1.0, 1.0));
    m.max_tilt = std::max(m.max_tilt, tilt);
    if (r.phase.kind != PhaseKind::Enroute) continue;
    ++enroute;
    const Vec3 e = r.pos_sp - r.state.position();
    sq_pos += e.cwiseProduct(e);
    const double yaw_err = wrap_pi(r.att_sp.z() - r.state.Psi);
    sq_yaw += yaw_err * yaw_err;
    const int sign = yaw_err > kYawCrossingDeadband ? 1 : (yaw_err < -kYawCrossingDeadband ? -1 : 0);
    if (sign != 0) {
      if (last_sign != 0 && sign != last_sign) ++m.yaw_zero_crossings;
      last_sign = sign;
    }
  }
  if (enroute > 0) {
    m.rms_pos_err = (sq_pos / static_cast<double>(enroute)).cwiseSqrt();
    m.rms_yaw_err = std::sqrt(sq_yaw / static_cast<double>(enroute));
  }

  m.final_gains = valid.back().gains;
  const double window_start = 0.8 * m.t_end;
  for (const TelemetryRecord& r : valid) {
    if (r.t < window_start) continue;
    for (std::size_t g = 0; g < kGainCount; ++g) {
      m.gain_variation[g] = std::max(m.gain_variation[g], std::abs(r.gains[g] - m.final_gains[g]));
    }
  }
  m.gain_settling = *std::max_element(m.gain_variation.begin(), m.gain_variation.end());
  return m;
}

inline std::string metrics_header() {
  return "name,mode,alpha_p,alpha_n,inertia_scale,mission_completed,completion_time,rms_pos_err_x,"
         "rms_pos_err_y,rms_pos_err_z,rms_yaw_err,max_tilt,gain_settling,diverged,yaw_zero_crossings,"
         "t_end,samples";
}

}  // namespace rcacpilot
