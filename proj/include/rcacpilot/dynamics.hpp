#pragma once

/**
 * @file dynamics.hpp
 * @brief Quadcopter rigid-body model in a flat-Earth NED frame.
 *
 * Translational velocity is stored in the body frame, attitude as 3-2-1
 * (yaw, pitch, roll) Euler angles. Rotor gyroscopic coupling, drag and motor
 * lag are not modelled. The only thrust is along the body z axis.
 */

#include <rcacpilot/errors.hpp>

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>

namespace rcacpilot {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPitchLimit = std::numbers::pi / 2.0 - 1e-3;

/// Wraps an angle to (-pi, pi].
inline double wrap_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::remainder(angle, two_pi);
  if (wrapped <= -std::numbers::pi) wrapped += two_pi;
  return wrapped;
}

/// 3-2-1 rotation taking body-frame components to Earth-frame components.
inline Mat3 body_to_earth(double phi, double theta, double psi) {
  const double cph = std::cos(phi), sph = std::sin(phi);
  const double cth = std::cos(theta), sth = std::sin(theta);
  const double cps = std::cos(psi), sps = std::sin(psi);
  Mat3 r;
  r << cth * cps, sph * sth * cps - cph * sps, cph * sth * cps + sph * sps,
      cth * sps, sph * sth * sps + cph * cps, cph * sth * sps - sph * cps,
      -sth, sph * cth, cph * cth;
  return r;
}

struct RigidBodyState {
  double X = 0, Y = 0, Z = 0;        // NED position (m)
  double U = 0, V = 0, W = 0;        // body-frame velocity (m/s)
  double Phi = 0, Theta = 0, Psi = 0;  // roll, pitch, yaw (rad)
  double P = 0, Q = 0, R = 0;        // body rates (rad/s)

  using Vector = Eigen::Matrix<double, 12, 1>;

  Vector to_vector() const {
    Vector v;
    v << X, Y, Z, U, V, W, Phi, Theta, Psi, P, Q, R;
    return v;
  }

  static RigidBodyState from_vector(const Vector& v) {
    return {v(0), v(1), v(2), v(3), v(4), v(5), v(6), v(7), v(8), v(9), v(10), v(11)};
  }

  Vec3 position() const { return {X, Y, Z}; }
  Vec3 body_velocity() const { return {U, V, W}; }
  Vec3 euler() const { return {Phi, Theta, Psi}; }
  Vec3 body_rates() const { return {P, Q, R}; }

  /// Velocity resolved in the Earth frame (what the velocity loop measures).
  Vec3 inertial_velocity() const { return body_to_earth(Phi, Theta, Psi) * body_velocity(); }

  bool all_finite() const { return to_vector().allFinite(); }

  bool operator==(const RigidBodyState&) const = default;
};

struct QuadParams {
  double m = 1.5;        // kg
  double Jxx = 0.029;    // kg m^2
  double Jyy = 0.029;
  double Jzz = 0.055;
  double g = 9.81;       // m/s^2, positive down
  double l = 0.25;       // arm length (m)
  double kf = 5.84e-6;   // thrust coefficient N s^2/rad^2
  double km = 8.76e-8;   // torque coefficient N m s^2/rad^2
  double omega_max = 1100.0;  // rad/s

  double max_total_thrust() const { return 4.0 * kf * omega_max * omega_max; }

  QuadParams with_inertia_scale(double scale) const {
    QuadParams p = *this;
    p.Jxx *= scale;
    p.Jyy *= scale;
    p.Jzz *= scale;
    return p;
  }

  bool valid() const {
    for (double v : {m, Jxx, Jyy, Jzz, g, l, kf, km, omega_max}) {
      if (!(v > 0.0) || !std::isfinite(v)) return false;
    }
    return true;
  }
};

/// Body-frame force along k_Q (negative is upward thrust) and body moments.
struct Wrench {
  double fz = 0, Mx = 0, My = 0, Mz = 0;
};

using MotorSpeeds = std::array<double, 4>;

/// Time derivative of the twelve states.
inline RigidBodyState::Vector derivatives(const RigidBodyState& s, const Wrench& w,
                                          const QuadParams& p) {
  if (!(std::abs(s.Theta) < kPitchLimit)) {
    throw SingularityError("pitch angle at Euler singularity: Theta = " + std::to_string(s.Theta));
  }
  const double cph = std::cos(s.Phi), sph = std::sin(s.Phi);
  const double cth = std::cos(s.Theta), sth = std::sin(s.Theta);
  const double cps = std::cos(s.Psi), sps = std::sin(s.Psi);
  const double tth = sth / cth;
  const double secth = 1.0 / cth;

  RigidBodyState::Vector d;
  // position kinematics
  d(0) = cth * cps * s.U + (sph * sth * cps - cph * sps) * s.V + (cph * sth * cps + sph * sps) * s.W;
  d(1) = cth * sps * s.U + (sph * sth * sps + cph * cps) * s.V + (cph * sth * sps - sph * cps) * s.W;
  d(2) = -sth * s.U + sph * cth * s.V + cph * cth * s.W;
  // body-frame translational dynamics
  d(3) = s.V * s.R - s.W * s.Q - sth * p.g;
  d(4) = -s.U * s.R + s.W * s.P + sph * cth * p.g;
  d(5) = s.U * s.Q - s.V * s.P + cph * cth * p.g + w.fz / p.m;
  // Euler kinematics
  d(6) = s.P + sph * tth * s.Q + cph * tth * s.R;
  d(7) = cph * s.Q - sph * s.R;
  d(8) = sph * secth * s.Q + cph * secth * s.R;
  // Euler's equations, diagonal inertia
  d(9) = ((p.Jyy - p.Jzz) * s.Q * s.R + w.Mx) / p.Jxx;
  d(10) = ((p.Jzz - p.Jxx) * s.P * s.R + w.My) / p.Jyy;
  d(11) = ((p.Jxx - p.Jyy) * s.P * s.Q + w.Mz) / p.Jzz;
  return d;
}

/// One classical RK4 step with the wrench held over the interval.
inline RigidBodyState step(const RigidBodyState& s, const Wrench& w, double dt, const QuadParams& p) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  using Vector = RigidBodyState::Vector;
  const Vector x = s.to_vector();
  const Vector k1 = derivatives(s, w, p);
  const Vector k2 = derivatives(RigidBodyState::from_vector(x + 0.5 * dt * k1), w, p);
  const Vector k3 = derivatives(RigidBodyState::from_vector(x + 0.5 * dt * k2), w, p);
  const Vector k4 = derivatives(RigidBodyState::from_vector(x + dt * k3), w, p);
  const Vector next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!next.allFinite()) throw NonFiniteStateError("integration produced a non-finite state");

  RigidBodyState out = RigidBodyState::from_vector(next);
  out.Phi = wrap_pi(out.Phi);
  out.Psi = wrap_pi(out.Psi);
  if (!(std::abs(out.Theta) < kPitchLimit)) {
    throw SingularityError("pitch angle at Euler singularity: Theta = " + std::to_string(out.Theta));
  }
  return out;
}

/// Quad-X actuation. Motors 1 (front-right, CCW), 2 (back-left, CCW),
/// 3 (front-left, CW), 4 (back-right, CW).
inline Wrench motor_speeds_to_wrench(const MotorSpeeds& omegas, const QuadParams& p) {
  std::array<double, 4> thrust{};
  for (std::size_t i = 0; i < 4; ++i) {
    const double w = omegas[i];
    if (!(w >= 0.0 && w <= p.omega_max)) {
      throw std::out_of_range("motor " + std::to_string(i + 1) + " speed out of range: " +
                              std::to_string(w));
    }
    thrust[i] = p.kf * w * w;
  }
  const auto [t1, t2, t3, t4] = thrust;
  const double arm = p.l / std::numbers::sqrt2;
  return Wrench{
      -(t1 + t2 + t3 + t4),
      arm * (-t1 + t2 + t3 - t4),
      arm * (t1 - t2 + t3 - t4),
      (p.km / p.kf) * (t1 + t2 - t3 - t4),
  };
}

}  // namespace rcacpilot
