#pragma once

/**
 * @file mission.hpp
 * @brief Waypoint mission planner: takeoff, waypoint sequence, land at home.
 *
 * Setpoints are step commands. The planner is a pure function of the mission,
 * an explicit progress value, the measured state and time; the caller owns
 * the progress value and feeds back the one returned.
 *
 * Mission file format (key = value, '#' comments):
 *
 *     home = X Y                 # m, NED
 *     takeoff_alt = H            # m above home (positive up)
 *     descent_rate = R           # m/s during landing
 *     waypoint = X Y Z psi radius hold   # m, m, m (NED, negative up), rad, m, s
 *     waypoint = ...             # one line per waypoint, in flight order
 */

#include <rcacpilot/dynamics.hpp>
#include <rcacpilot/keyvalue.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace rcacpilot {

struct Waypoint {
  double x = 0, y = 0, z = 0;
  double psi = 0;
  double acceptance_radius = 0.5;
  double hold_time = 0.0;

  Vec3 position() const { return {x, y, z}; }
};

struct Mission {
  double home_x = 0.0, home_y = 0.0;
  double takeoff_alt = 10.0;
  std::vector<Waypoint> waypoints;
  double descent_rate = 1.0;

  void validate() const {
    if (waypoints.empty()) throw ConfigError("mission: at least one waypoint required");
    if (!(takeoff_alt > 0.0)) throw ConfigError("mission: takeoff_alt must be positive");
    if (!(descent_rate > 0.0)) throw ConfigError("mission: descent_rate must be positive");
    for (std::size_t i = 0; i < waypoints.size(); ++i) {
      const Waypoint& w = waypoints[i];
      if (!(w.acceptance_radius > 0.0)) {
        throw ConfigError("mission: waypoint " + std::to_string(i) + " acceptance_radius must be positive");
      }
      if (!(w.hold_time >= 0.0)) {
        throw ConfigError("mission: waypoint " + std::to_string(i) + " hold_time must be non-negative");
      }
      for (double v : {w.x, w.y, w.z, w.psi}) {
        if (!std::isfinite(v)) throw ConfigError("mission: waypoint " + std::to_string(i) + " not finite");
      }
    }
  }

  Vec3 takeoff_point() const { return {home_x, home_y, -takeoff_alt}; }

  /// Length of the commanded polyline: climb, waypoint legs, final descent.
  double commanded_path_length() const {
    double length = 0.0;
    Vec3 at = takeoff_point();
    length += takeoff_alt;
    for (const Waypoint& w : waypoints) {
      length += (w.position() - at).norm();
      at = w.position();
    }
    length += (Vec3(home_x, home_y, at.z()) - at).norm();  // return leg, if any
    length += std::abs(at.z());
    return length;
  }

  /// Five waypoints on a 40 m square at 10 m altitude, nose along each leg.
  static Mission square() {
    constexpr double pi = std::numbers::pi;
    Mission m;
    m.takeoff_alt = 10.0;
    m.descent_rate = 1.0;
    m.waypoints = {
        {0.0, 0.0, -10.0, 0.0, 0.5, 1.0},
        {40.0, 0.0, -10.0, 0.0, 0.5, 1.0},
        {40.0, 40.0, -10.0, pi / 2.0, 0.5, 1.0},
        {0.0, 40.0, -10.0, pi, 0.5, 1.0},
        {0.0, 0.0, -10.0, -pi / 2.0, 0.5, 1.0},
    };
    return m;
  }

  static Mission parse(std::string_view text, const std::string& source = "<mission>") {
    Mission m;
    bool has_home = false, has_alt = false, has_rate = false;
    for (const kv::Entry& e : kv::parse(text, source)) {
      const std::string ctx = source + ":" + std::to_string(e.line);
      if (e.key == "home") {
        const auto v = kv::to_doubles(e.value, ctx);
        if (v.size() != 2) throw ConfigError(ctx + ": home needs X Y");
        m.home_x = v[0];
        m.home_y = v[1];
        has_home = true;
      } else if (e.key == "takeoff_alt") {
        m.takeoff_alt = kv::to_double(e.value, ctx);
        has_alt = true;
      } else if (e.key == "descent_rate") {
        m.descent_rate = kv::to_double(e.value, ctx);
        has_rate = true;
      } else if (e.key == "waypoint") {
        const auto v = kv::to_doubles(e.value, ctx);
        if (v.size() != 6) throw ConfigError(ctx + ": waypoint needs X Y Z psi radius hold");
        m.waypoints.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
      } else {
        throw ConfigError(ctx + ": unknown mission key '" + e.key + "'");
      }
    }
    if (!has_home || !has_alt || !has_rate) {
      throw ConfigError(source + ": home, takeoff_alt and descent_rate are required");
    }
    m.validate();
    return m;
  }

  static Mission load(const std::string& path) { return parse(kv::read_file(path), path); }

  std::string to_text() const {
    std::string s;
    s += "home = " + kv::format_double(home_x) + " " + kv::format_double(home_y) + "\n";
    s += "takeoff_alt = " + kv::format_double(takeoff_alt) + "\n";
    s += "descent_rate = " + kv::format_double(descent_rate) + "\n";
    for (const Waypoint& w : waypoints) {
      s += "waypoint =";
      for (double v : {w.x, w.y, w.z, w.psi, w.acceptance_radius, w.hold_time}) s += " " + kv::format_double(v);
      s += "\n";
    }
    return s;
  }
};

enum class PhaseKind { Takeoff, Enroute, Land, Done };

struct MissionPhase {
  PhaseKind kind = PhaseKind::Takeoff;
  int index = 0;  // waypoint index while Enroute

  /// Monotone ordinal: Takeoff < Enroute(0) < ... < Enroute(n-1) < Land < Done.
  int ordinal(int waypoint_count) const {
    switch (kind) {
      case PhaseKind::Takeoff: return 0;
      case PhaseKind::Enroute: return 1 + index;
      case PhaseKind::Land: return 1 + waypoint_count;
      case PhaseKind::Done: return 2 + waypoint_count;
    }
    return -1;
  }

  bool operator==(const MissionPhase&) const = default;
};

inline const char* phase_name(PhaseKind kind) {
  switch (kind) {
    case PhaseKind::Takeoff: return "takeoff";
    case PhaseKind::Enroute: return "enroute";
    case PhaseKind::Land: return "land";
    case PhaseKind::Done: return "done";
  }
  return "?";
}

struct MissionProgress {
  MissionPhase phase{};
  std::optional<double> dwell_start;  // time the vehicle entered the current acceptance sphere
  double land_start_t = 0.0;
  double land_start_z = 0.0;

  bool operator==(const MissionProgress&) const = default;
};

struct MissionSetpoint {
  Vec3 pos_sp = Vec3::Zero();
  double psi_sp = 0.0;
  MissionPhase phase{};
  MissionProgress progress{};  // feed back on the next call
};

inline constexpr double kLandedAltitude = 0.05;

inline MissionSetpoint setpoint_at(const Mission& mission, const MissionProgress& progress,
                                   const RigidBodyState& state, double t) {
  const auto& wps = mission.waypoints;
  const int count = static_cast<int>(wps.size());
  MissionProgress next = progress;
  const Vec3 pos = state.position();

  if (next.phase.kind == PhaseKind::Takeoff) {
    if ((pos - mission.takeoff_point()).norm() < wps.front().acceptance_radius) {
      next.phase = {PhaseKind::Enroute, 0};
      next.dwell_start.reset();
    }
  }
  if (next.phase.kind == PhaseKind::Enroute) {
    const Waypoint& w = wps[static_cast<std::size_t>(next.phase.index)];
    if ((pos - w.position()).norm() < w.acceptance_radius) {
      if (!next.dwell_start) next.dwell_start = t;
      if (t - *next.dwell_start >= w.hold_time) {
        next.dwell_start.reset();
        if (next.phase.index + 1 < count) {
          next.phase.index += 1;
        } else {
          next.phase = {PhaseKind::Land, 0};
          next.land_start_t = t;
          next.land_start_z = w.z;
        }
      }
    } else {
      next.dwell_start.reset();
    }
  }
  if (next.phase.kind == PhaseKind::Land && std::abs(state.Z) < kLandedAltitude) {
    next.phase = {PhaseKind::Done, 0};
  }

  MissionSetpoint out;
  out.phase = next.phase;
  switch (next.phase.kind) {
    case PhaseKind::Takeoff:
      out.pos_sp = mission.takeoff_point();
      out.psi_sp = wps.front().psi;
      break;
    case PhaseKind::Enroute: {
      const Waypoint& w = wps[static_cast<std::size_t>(next.phase.index)];
      out.pos_sp = w.position();
      out.psi_sp = w.psi;
      break;
    }
    case PhaseKind::Land:
    case PhaseKind::Done: {
      const double z = std::min(0.0, next.land_start_z + mission.descent_rate * (t - next.land_start_t));
      out.pos_sp = {mission.home_x, mission.home_y, next.phase.kind == PhaseKind::Done ? 0.0 : z};
      out.psi_sp = wps.back().psi;
      break;
    }
  }
  out.progress = next;
  return out;
}

}  // namespace rcacpilot
