#pragma once

/**
 * @file autopilot.hpp
 * @brief Cascaded multicopter autopilot: position P -> velocity PI(D) ->
 *        force/yaw static map -> attitude P -> Euler-rate map -> rate PID+FF -> mixer.
 *
 * The same cascade runs in two modes. FixedGain uses a stock gain table
 * (frozen controllers of the same digital structure). Adaptive replaces all
 * twelve channel controllers by RCAC controllers that start from theta0.
 *
 * Loop rates: position 25 Hz, velocity 50 Hz, attitude/rate/mixer 250 Hz.
 * Each stage holds its output between its own ticks.
 */

#include <rcacpilot/dynamics.hpp>
#include <rcacpilot/rcac.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace rcacpilot {

enum class AutopilotMode { FixedGain, Adaptive };

inline const char* mode_name(AutopilotMode mode) {
  return mode == AutopilotMode::FixedGain ? "fixed" : "adaptive";
}

inline constexpr double kPositionPeriod = 0.04;
inline constexpr double kVelocityPeriod = 0.02;
inline constexpr double kAttitudePeriod = 0.004;

/// Continuous-time PID(+FF) gains.
struct PidGains {
  double kp = 0, ki = 0, kd = 0, kff = 0;
};

/// Fixed-gain baseline in physical units: velocity loop in N per m/s, rate
/// loop in rad/s^2 per rad/s.
struct StockGains {
  Vec3 position_p{0.95, 0.95, 1.0};
  std::array<PidGains, 3> velocity{};
  Vec3 attitude_p{6.5, 6.5, 2.8};
  std::array<PidGains, 3> rate{};

  /// PX4 multicopter defaults for an Iris-class frame. Velocity gains are
  /// acceleration gains times the nominal mass. PX4 rate gains act on a
  /// normalized [-1, 1] torque command; they are converted to angular
  /// acceleration by the per-axis authority (moment at full differential
  /// thrust divided by inertia).
  static StockGains px4_iris(const QuadParams& nominal) {
    StockGains g;
    const double m = nominal.m;
    g.velocity[0] = {1.8 * m, 0.4 * m, 0.2 * m, 0};
    g.velocity[1] = {1.8 * m, 0.4 * m, 0.2 * m, 0};
    g.velocity[2] = {4.0 * m, 2.0 * m, 0.0, 0};
    const auto authority = control_authority(nominal);
    const std::array<PidGains, 3> normalized{{{0.15, 0.2, 0.003, 0}, {0.15, 0.2, 0.003, 0}, {0.2, 0.1, 0.0, 0}}};
    for (int i = 0; i < 3; ++i) {
      g.rate[i] = {normalized[i].kp * authority[i], normalized[i].ki * authority[i],
                   normalized[i].kd * authority[i], 0.0};
    }
    return g;
  }

  /// Angular acceleration (rad/s^2) at full differential thrust, per axis.
  static Vec3 control_authority(const QuadParams& p) {
    const double t_max = p.kf * p.omega_max * p.omega_max;
    const double arm = p.l / std::numbers::sqrt2;
    return {2.0 * arm * t_max / p.Jxx, 2.0 * arm * t_max / p.Jyy,
            2.0 * (p.km / p.kf) * t_max / p.Jzz};
  }
};

/// Per-loop RCAC hyperparameters (P0 = p0 I, sigma).
struct AdaptiveTuning {
  RcacHyperparameters position{0.01, 1.0};
  RcacHyperparameters velocity{0.01, 1.0, 2.0};  // small |gamma| bound keeps the learned PI usable
  RcacHyperparameters attitude{1.0, 1.0};
  RcacHyperparameters rate{0.01, 1.0};

  /// Every P0 multiplied by alpha_p, every sigma by alpha_n.
  AdaptiveTuning scaled(double alpha_p, double alpha_n) const {
    AdaptiveTuning t = *this;
    for (RcacHyperparameters* h : {&t.position, &t.velocity, &t.attitude, &t.rate}) {
      h->p0 *= alpha_p;
      h->sigma *= alpha_n;
    }
    return t;
  }
};

struct AutopilotLimits {
  double vel_xy_max = 12.0;  // m/s, horizontal norm
  double vel_z_max = 3.0;    // m/s
  double tilt_max = std::numbers::pi / 4.0;
  double force_epsilon = 1e-9;  // N
};

struct AutopilotConfig {
  AutopilotMode mode = AutopilotMode::Adaptive;
  QuadParams nominal{};
  StockGains stock = StockGains::px4_iris(QuadParams{});
  AdaptiveTuning tuning{};
  AutopilotLimits limits{};
  /// Adds -m g along k_E to the force setpoint (hover thrust feedforward).
  bool gravity_ff = false;
  /// false freezes the adaptive gains at theta0 (used for ablations/tests).
  bool adapt = true;
  /// Adaptive controllers start from the discretized stock gains instead of zero.
  bool theta0_from_stock = false;
  // Adaptive outputs are multiplied by these per-axis factors: the velocity PI
  // acts in units of force/scale, the rate PID+FF in units of angular
  // acceleration/scale.
  Vec3 velocity_output_scale = Vec3::Ones();
  Vec3 rate_output_scale = Vec3::Ones();
  bool anti_windup = true;  // hold integrators while the static map or the mixer saturates
  // Skip the gain update on samples whose previous output was clamped
  // (position: velocity limit; velocity: static map; rate: mixer).
  bool freeze_position_on_saturation = false;
  bool freeze_velocity_on_saturation = false;
  bool freeze_rate_on_saturation = false;
  double dt_sim = 0.001;

  static AutopilotConfig fixed_gain(const QuadParams& nominal = {}) {
    AutopilotConfig c;
    c.mode = AutopilotMode::FixedGain;
    c.nominal = nominal;
    c.stock = StockGains::px4_iris(nominal);
    c.gravity_ff = true;
    return c;
  }

  static AutopilotConfig adaptive(const QuadParams& nominal = {}, double alpha_p = 1.0,
                                  double alpha_n = 1.0) {
    AutopilotConfig c;
    c.mode = AutopilotMode::Adaptive;
    c.nominal = nominal;
    c.stock = StockGains::px4_iris(nominal);
    c.tuning = AdaptiveTuning{}.scaled(alpha_p, alpha_n);
    c.velocity_output_scale = Vec3::Constant(5.0);
    c.rate_output_scale = 0.1 * StockGains::control_authority(nominal);
    c.freeze_position_on_saturation = true;
    c.freeze_velocity_on_saturation = true;
    c.freeze_rate_on_saturation = true;
    return c;
  }
};

struct CascadeSetpoints {
  Vec3 pos_sp = Vec3::Zero();
  Vec3 vel_sp = Vec3::Zero();        // inertial
  Vec3 force_sp = Vec3::Zero();      // inertial
  Vec3 att_sp = Vec3::Zero();        // roll, pitch, yaw
  Vec3 euler_rate_sp = Vec3::Zero();
  Vec3 rate_sp = Vec3::Zero();       // body
  Vec3 angacc_sp = Vec3::Zero();     // body
  double thrust_sp = 0.0;
};

struct SaturationFlags {
  bool velocity = false;
  bool tilt = false;
  bool thrust = false;
  int motors = 0;  // motors clamped at 0 or omega_max in the last mix
};

// ---------------------------------------------------------------------------
// Static maps

struct AttitudeCommand {
  Vec3 att_sp = Vec3::Zero();
  double thrust_sp = 0.0;
  bool tilt_clamped = false;
  bool thrust_clamped = false;
  bool degenerate = false;
  Vec3 force_achieved = Vec3::Zero();  // thrust_sp along the commanded body axis
};

/// Inertial force setpoint + yaw setpoint -> Euler angle setpoint and thrust.
/// The body z axis is aligned with -force; roll/pitch follow from the 3-2-1
/// decomposition in the yaw-rotated frame. A (near) zero force holds the
/// previous roll/pitch with zero thrust.
inline AttitudeCommand force_yaw_to_attitude(const Vec3& force_sp, double psi_sp,
                                             const Vec3& previous_att, double tilt_max,
                                             double thrust_max,
                                             double epsilon = AutopilotLimits{}.force_epsilon) {
  AttitudeCommand cmd;
  const double magnitude = force_sp.norm();
  if (!(magnitude > epsilon)) {
    cmd.att_sp = {previous_att.x(), previous_att.y(), psi_sp};
    cmd.degenerate = true;
    return cmd;
  }
  Vec3 body_z = -force_sp / magnitude;
  double thrust = magnitude;
  if (std::acos(std::clamp(body_z.z(), -1.0, 1.0)) > tilt_max) {
    // Vertical force is kept; the horizontal part is shrunk onto the tilt cone.
    // A force with no upward component gets zero thrust.
    const double horizontal = std::hypot(body_z.x(), body_z.y());
    const double scale = horizontal > 0.0 ? std::sin(tilt_max) / horizontal : 0.0;
    body_z = {body_z.x() * scale, body_z.y() * scale, std::cos(tilt_max)};
    thrust = force_sp.z() < 0.0 ? -force_sp.z() / std::cos(tilt_max) : 0.0;
    cmd.tilt_clamped = true;
  }
  const double c = std::cos(-psi_sp), s = std::sin(-psi_sp);
  const Vec3 d(c * body_z.x() - s * body_z.y(), s * body_z.x() + c * body_z.y(), body_z.z());
  const double theta = std::atan2(d.x(), d.z());
  const double phi = std::asin(std::clamp(-d.y(), -1.0, 1.0));
  cmd.att_sp = {phi, theta, psi_sp};
  cmd.thrust_sp = thrust;
  if (cmd.thrust_sp > thrust_max) {
    cmd.thrust_sp = thrust_max;
    cmd.thrust_clamped = true;
  }
  cmd.force_achieved = -cmd.thrust_sp * body_z;
  return cmd;
}

/// Euler angle rates -> body rates (inverse of the Euler kinematics).
inline Vec3 euler_rates_to_body_rates(const Vec3& att, const Vec3& euler_rates) {
  const double phi = att.x(), theta = att.y();
  if (!(std::abs(theta) < kPitchLimit)) {
    throw SingularityError("euler_rates_to_body_rates: pitch at singularity");
  }
  Mat3 m;
  m << 1.0, 0.0, -std::sin(theta),
      0.0, std::cos(phi), std::sin(phi) * std::cos(theta),
      0.0, -std::sin(phi), std::cos(phi) * std::cos(theta);
  return m * euler_rates;
}

struct MixResult {
  MotorSpeeds omegas{};
  int saturated = 0;
  Vec3 angacc_achieved = Vec3::Zero();  // nominal-model response to the clamped speeds
};

/// Control allocation. Desired moments are the nominal inertia times the
/// angular acceleration command; squared speeds come from inverting the quad-X
/// actuation matrix, then are clamped to [0, omega_max^2].
inline MixResult mix(const Vec3& angacc_sp, double thrust_sp, const QuadParams& nominal) {
  const double arm = nominal.l / std::numbers::sqrt2;
  const double a = thrust_sp / nominal.kf;
  const double bx = nominal.Jxx * angacc_sp.x() / (nominal.kf * arm);
  const double by = nominal.Jyy * angacc_sp.y() / (nominal.kf * arm);
  const double c = nominal.Jzz * angacc_sp.z() / nominal.km;
  const std::array<double, 4> squared{
      (a - bx + by + c) / 4.0,
      (a + bx - by + c) / 4.0,
      (a + bx + by - c) / 4.0,
      (a - bx - by - c) / 4.0,
  };
  MixResult out;
  for (std::size_t i = 0; i < 4; ++i) {
    double w = std::sqrt(std::max(squared[i], 0.0));
    if (squared[i] < 0.0) ++out.saturated;
    if (w > nominal.omega_max) {
      w = nominal.omega_max;
      ++out.saturated;
    }
    out.omegas[i] = w;
  }
  const Wrench achieved = motor_speeds_to_wrench(out.omegas, nominal);
  out.angacc_achieved = {achieved.Mx / nominal.Jxx, achieved.My / nominal.Jyy, achieved.Mz / nominal.Jzz};
  return out;
}

// ---------------------------------------------------------------------------

inline constexpr std::size_t kGainCount = 3 + 3 * 2 + 3 + 3 * 4;
using GainSnapshot = std::array<double, kGainCount>;

class Autopilot {
 public:
  explicit Autopilot(const AutopilotConfig& config) : config_(config) {
    if (!config_.nominal.valid()) throw std::invalid_argument("Autopilot: invalid nominal params");
    const double dt = config_.dt_sim;
    pos_every_ = ticks_per(kPositionPeriod, dt);
    vel_every_ = ticks_per(kVelocityPeriod, dt);
    att_every_ = ticks_per(kAttitudePeriod, dt);

    const StockGains& sg = config_.stock;
    const AdaptiveTuning& tu = config_.tuning;
    const bool adaptive = config_.mode == AutopilotMode::Adaptive;
    for (int i = 0; i < 3; ++i) {
      const PidGains& v = sg.velocity[i];
      const PidGains& r = sg.rate[i];
      if (adaptive) {
        using V1 = Eigen::Matrix<double, 1, 1>;
        const bool warm = config_.theta0_from_stock;
        position_[i] = RcacController<ControllerKind::P>(tu.position, V1(warm ? sg.position_p[i] : 0.0));
        attitude_[i] = RcacController<ControllerKind::P>(tu.attitude, V1(warm ? sg.attitude_p[i] : 0.0));
        velocity_pi_[i] = RcacController<ControllerKind::PI>(
            tu.velocity, warm ? Eigen::Vector2d(v.kp, v.ki * kVelocityPeriod) : Eigen::Vector2d::Zero());
        rate_[i] = RcacController<ControllerKind::PID_FF>(
            tu.rate, warm ? Eigen::Vector4d(r.kp, r.ki * kAttitudePeriod, r.kd / kAttitudePeriod, r.kff)
                          : Eigen::Vector4d::Zero());
      } else {
        position_[i].set_theta(Eigen::Matrix<double, 1, 1>(sg.position_p[i]));
        attitude_[i].set_theta(Eigen::Matrix<double, 1, 1>(sg.attitude_p[i]));
        velocity_pid_[i].set_theta(Eigen::Vector3d(v.kp, v.ki * kVelocityPeriod, v.kd / kVelocityPeriod));
        rate_[i].set_theta(Eigen::Vector4d(r.kp, r.ki * kAttitudePeriod, r.kd / kAttitudePeriod, r.kff));
      }
    }
    sp_.att_sp = Vec3::Zero();
  }

  const AutopilotConfig& config() const { return config_; }
  AutopilotMode mode() const { return config_.mode; }

  /// 25 Hz: position error -> inertial velocity setpoint, clamped.
  Vec3 position_loop(const Vec3& pos_sp, const Vec3& pos_meas) {
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
      const bool adapt = adapting() && !(config_.freeze_position_on_saturation && vel_clamped_[i]);
      out[i] = position_[i].tick(pos_sp[i] - pos_meas[i], std::nullopt, adapt);
    }
    const AutopilotLimits& lim = config_.limits;
    sat_.velocity = false;
    vel_clamped_ = {false, false, false};
    const double horizontal = std::hypot(out.x(), out.y());
    if (horizontal > lim.vel_xy_max) {
      out.x() *= lim.vel_xy_max / horizontal;
      out.y() *= lim.vel_xy_max / horizontal;
      sat_.velocity = true;
      vel_clamped_[0] = vel_clamped_[1] = true;
    }
    if (std::abs(out.z()) > lim.vel_z_max) {
      out.z() = std::copysign(lim.vel_z_max, out.z());
      sat_.velocity = true;
      vel_clamped_[2] = true;
    }
    sp_.pos_sp = pos_sp;
    sp_.vel_sp = out;
    return out;
  }

  /// 50 Hz: inertial velocity error -> inertial force setpoint.
  Vec3 velocity_loop(const Vec3& vel_sp, const Vec3& vel_meas_inertial) {
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
      const double z = vel_sp[i] - vel_meas_inertial[i];
      // Hold the integrator while the static map could not deliver this axis
      // and the error pushes further into the limit.
      const double shortfall = sp_.force_sp[i] - force_achieved_[i];
      const double tol = 1e-9 * (1.0 + std::abs(sp_.force_sp[i]));
      const bool integrate =
          !config_.anti_windup || !((shortfall > tol && z > 0.0) || (shortfall < -tol && z < 0.0));
      if (config_.mode == AutopilotMode::Adaptive) {
        const bool adapt = adapting() && (integrate || !config_.freeze_velocity_on_saturation);
        out[i] = config_.velocity_output_scale[i] * velocity_pi_[i].tick(z, std::nullopt, adapt, integrate);
      } else {
        out[i] = velocity_pid_[i].tick(z, std::nullopt, false, integrate);
      }
    }
    if (config_.gravity_ff) out.z() -= config_.nominal.m * config_.nominal.g;
    sp_.force_sp = out;
    return out;
  }

  /// Force/yaw static map with the configured limits; holds previous roll/pitch
  /// when the force setpoint vanishes.
  AttitudeCommand attitude_command(const Vec3& force_sp, double psi_sp) {
    AttitudeCommand cmd = force_yaw_to_attitude(force_sp, psi_sp, sp_.att_sp, config_.limits.tilt_max,
                                                config_.nominal.max_total_thrust(),
                                                config_.limits.force_epsilon);
    sp_.att_sp = cmd.att_sp;
    sp_.thrust_sp = cmd.thrust_sp;
    force_achieved_ = cmd.degenerate ? sp_.force_sp : cmd.force_achieved;
    sat_.tilt = cmd.tilt_clamped;
    sat_.thrust = cmd.thrust_clamped;
    return cmd;
  }

  /// 250 Hz: attitude error (yaw wrapped) -> Euler angle rate setpoint.
  Vec3 attitude_loop(const Vec3& att_sp, const Vec3& att_meas) {
    Vec3 err = att_sp - att_meas;
    err.z() = wrap_pi(err.z());
    Vec3 out;
    for (int i = 0; i < 3; ++i) out[i] = attitude_[i].tick(err[i], std::nullopt, adapting());
    sp_.euler_rate_sp = out;
    return out;
  }

  /// 250 Hz: body rate error -> angular acceleration setpoint, with the rate
  /// setpoint as feedforward input.
  Vec3 rate_loop(const Vec3& rate_sp, const Vec3& rate_meas) {
    Vec3 out;
    const bool adapt = adapting();
    for (int i = 0; i < 3; ++i) {
      const double z = rate_sp[i] - rate_meas[i];
      const double shortfall = sp_.angacc_sp[i] - angacc_achieved_[i];
      const double tol = 1e-9 * (1.0 + std::abs(sp_.angacc_sp[i]));
      const bool integrate =
          !config_.anti_windup || !((shortfall > tol && z > 0.0) || (shortfall < -tol && z < 0.0));
      const double scale = config_.mode == AutopilotMode::Adaptive ? config_.rate_output_scale[i] : 1.0;
      out[i] = scale * rate_[i].tick(z, rate_sp[i], adapt && (integrate || !config_.freeze_rate_on_saturation), integrate);
    }
    sp_.rate_sp = rate_sp;
    sp_.angacc_sp = out;
    return out;
  }

  /// Multi-rate scheduler. t must be an integer multiple of dt_sim.
  const MotorSpeeds& step(double t, const RigidBodyState& state, const Vec3& pos_sp, double psi_sp) {
    const auto k = static_cast<std::int64_t>(std::llround(t / config_.dt_sim));
    if (k < 0 || std::abs(static_cast<double>(k) * config_.dt_sim - t) > 1e-9 * std::max(1.0, t)) {
      throw std::invalid_argument("Autopilot::step: t is not a multiple of dt_sim");
    }
    if (k % pos_every_ == 0) {
      staged("position loop", [&] { position_loop(pos_sp, state.position()); });
      ++ticks_.position;
    }
    if (k % vel_every_ == 0) {
      staged("velocity loop", [&] { velocity_loop(sp_.vel_sp, state.inertial_velocity()); });
      ++ticks_.velocity;
    }
    if (k % att_every_ == 0) {
      staged("attitude loop", [&] {
        attitude_command(sp_.force_sp, psi_sp);
        attitude_loop(sp_.att_sp, state.euler());
      });
      staged("euler rate map", [&] { sp_.rate_sp = euler_rates_to_body_rates(state.euler(), sp_.euler_rate_sp); });
      staged("rate loop", [&] { rate_loop(sp_.rate_sp, state.body_rates()); });
      const MixResult mixed = mix(sp_.angacc_sp, sp_.thrust_sp, config_.nominal);
      motors_ = mixed.omegas;
      angacc_achieved_ = mixed.angacc_achieved;
      sat_.motors = mixed.saturated;
      ++ticks_.attitude;
    }
    return motors_;
  }

  const CascadeSetpoints& setpoints() const { return sp_; }
  const SaturationFlags& saturation() const { return sat_; }
  const MotorSpeeds& motors() const { return motors_; }

  struct TickCounts {
    std::uint64_t position = 0, velocity = 0, attitude = 0;
  };
  const TickCounts& ticks() const { return ticks_; }

  /// Gains in telemetry order: position P (x,y,z), velocity (kp, ki) per axis,
  /// attitude P (roll, pitch, yaw), rate (kp, ki, kd, kff) per axis. In
  /// FixedGain mode these are the frozen discrete gains (velocity kd omitted).
  GainSnapshot gains() const {
    GainSnapshot g{};
    std::size_t j = 0;
    for (int i = 0; i < 3; ++i) g[j++] = position_[i].theta()(0);
    for (int i = 0; i < 3; ++i) {
      if (config_.mode == AutopilotMode::Adaptive) {
        g[j++] = velocity_pi_[i].theta()(0);
        g[j++] = velocity_pi_[i].theta()(1);
      } else {
        g[j++] = velocity_pid_[i].theta()(0);
        g[j++] = velocity_pid_[i].theta()(1);
      }
    }
    for (int i = 0; i < 3; ++i) g[j++] = attitude_[i].theta()(0);
    for (int i = 0; i < 3; ++i) {
      for (int c = 0; c < 4; ++c) g[j++] = rate_[i].theta()(c);
    }
    return g;
  }

  static std::array<std::string, kGainCount> gain_names() {
    std::array<std::string, kGainCount> n;
    std::size_t j = 0;
    for (const char* a : {"x", "y", "z"}) n[j++] = std::string("k_pos_") + a;
    for (const char* a : {"x", "y", "z"}) {
      n[j++] = std::string("k_vel_") + a + "_p";
      n[j++] = std::string("k_vel_") + a + "_i";
    }
    for (const char* a : {"roll", "pitch", "yaw"}) n[j++] = std::string("k_att_") + a;
    for (const char* a : {"p", "q", "r"}) {
      for (const char* c : {"p", "i", "d", "ff"}) n[j++] = std::string("k_rate_") + a + "_" + c;
    }
    return n;
  }

  const std::array<RcacController<ControllerKind::P>, 3>& position_controllers() const { return position_; }
  const std::array<RcacController<ControllerKind::PI>, 3>& velocity_controllers() const { return velocity_pi_; }
  const std::array<RcacController<ControllerKind::P>, 3>& attitude_controllers() const { return attitude_; }
  const std::array<RcacController<ControllerKind::PID_FF>, 3>& rate_controllers() const { return rate_; }

 private:
  bool adapting() const { return config_.mode == AutopilotMode::Adaptive && config_.adapt; }

  static std::int64_t ticks_per(double period, double dt) {
    const auto n = static_cast<std::int64_t>(std::llround(period / dt));
    if (n < 1 || std::abs(static_cast<double>(n) * dt - period) > 1e-12) {
      throw std::invalid_argument("dt_sim must divide the loop period " + std::to_string(period));
    }
    return n;
  }

  template <class F>
  static void staged(const char* stage, F&& f) {
    try {
      f();
    } catch (const DivergenceError& e) {
      throw DivergenceError(std::string(stage) + ": " + e.what(), e.step());
    } catch (const SingularityError& e) {
      throw SingularityError(std::string(stage) + ": " + e.what());
    }
  }

  AutopilotConfig config_;
  std::int64_t pos_every_ = 40, vel_every_ = 20, att_every_ = 4;

  std::array<RcacController<ControllerKind::P>, 3> position_{};
  std::array<RcacController<ControllerKind::PI>, 3> velocity_pi_{};
  std::array<RcacController<ControllerKind::PID>, 3> velocity_pid_{};
  std::array<RcacController<ControllerKind::P>, 3> attitude_{};
  std::array<RcacController<ControllerKind::PID_FF>, 3> rate_{};

  CascadeSetpoints sp_{};
  Vec3 force_achieved_ = Vec3::Zero();
  Vec3 angacc_achieved_ = Vec3::Zero();
  std::array<bool, 3> vel_clamped_{};
  SaturationFlags sat_{};
  MotorSpeeds motors_{};
  TickCounts ticks_{};
};

}  // namespace rcacpilot
