#pragma once

/**
 * @file rcac.hpp
 * @brief Retrospective cost adaptive digital PID controllers.
 *
 * Each controller holds a gain vector theta and a covariance P that are
 * updated by recursive least squares every time a new error sample arrives.
 * The regressor layout depends on the controller kind:
 *
 *   P      [z_{k-1}]
 *   PI     [z_{k-1}, gamma_{k-1}]
 *   PID    [z_{k-1}, gamma_{k-1}, z_{k-1} - z_{k-2}]
 *   PID_FF [z_{k-1}, gamma_{k-1}, z_{k-1} - z_{k-2}, r_k]
 *
 * where gamma is the running sum of errors and r_k the current setpoint.
 *
 * Within one tick the controller (1) builds the regressor from its history
 * and emits u = phi * theta, (2) runs the RLS update with the freshly sampled
 * error against the regressor and output of the previous tick, and
 * (3) appends the sample to its history. New gains therefore act from the
 * next tick on.
 */

#include <rcacpilot/errors.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace rcacpilot {

enum class ControllerKind { P, PI, PID, PID_FF };

constexpr int regressor_width(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::P: return 1;
    case ControllerKind::PI: return 2;
    case ControllerKind::PID: return 3;
    case ControllerKind::PID_FF: return 4;
  }
  return 0;
}

constexpr const char* kind_name(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::P: return "P";
    case ControllerKind::PI: return "PI";
    case ControllerKind::PID: return "PID";
    case ControllerKind::PID_FF: return "PID+FF";
  }
  return "?";
}

/// One RLS step. Updates P first, then theta with the updated P:
///   P+ = P - P phi' phi P / (1 + phi P phi')
///   theta+ = theta + P+ phi' [z + sigma (phi theta - u_prev)]
/// P is re-symmetrized afterwards. Returns false if anything went non-finite
/// (inputs are left untouched in that case).
template <int N>
bool rls_update(Eigen::Matrix<double, N, 1>& theta, Eigen::Matrix<double, N, N>& cov,
                const Eigen::Matrix<double, N, 1>& phi, double u_prev, double z, double sigma) {
  using Vector = Eigen::Matrix<double, N, 1>;
  using Matrix = Eigen::Matrix<double, N, N>;
  const Vector p_phi = cov * phi;
  const double denom = 1.0 + phi.dot(p_phi);
  Matrix next_cov = cov - (p_phi * p_phi.transpose()) / denom;
  next_cov = 0.5 * (next_cov + next_cov.transpose()).eval();
  const double retro = z + sigma * (phi.dot(theta) - u_prev);
  const Vector next_theta = theta + next_cov * phi * retro;
  if (!next_cov.allFinite() || !next_theta.allFinite()) return false;
  cov = next_cov;
  theta = next_theta;
  return true;
}

/// One entry of retrospective data: the error z_k together with the regressor
/// and control of the previous step.
template <int N>
struct RetrospectiveSample {
  double z;
  Eigen::Matrix<double, N, 1> phi_prev;
  double u_prev;
};

/// Retrospective cost
///   sum_i (z_i + sigma (phi_{i-1} theta - u_{i-1}))^2 + (theta - theta0)' P0^-1 (theta - theta0).
/// Used for diagnostics and as a test oracle.
template <int N>
double retrospective_cost(const Eigen::Matrix<double, N, 1>& theta,
                          std::span<const RetrospectiveSample<N>> history,
                          const Eigen::Matrix<double, N, 1>& theta0,
                          const Eigen::Matrix<double, N, N>& p0, double sigma) {
  Eigen::LLT<Eigen::Matrix<double, N, N>> llt(p0);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("retrospective_cost: P0 is not positive definite");
  }
  double cost = 0.0;
  for (const auto& s : history) {
    const double zhat = s.z + sigma * (s.phi_prev.dot(theta) - s.u_prev);
    cost += zhat * zhat;
  }
  const Eigen::Matrix<double, N, 1> dtheta = theta - theta0;
  cost += dtheta.dot(llt.solve(dtheta));
  return cost;
}

struct RcacHyperparameters {
  double p0 = 0.01;       // P0 = p0 * I
  double sigma = 1.0;
  double integrator_limit = 1e4;  // |gamma| bound
};

template <ControllerKind Kind>
class RcacController {
 public:
  static constexpr int N = regressor_width(Kind);
  using Vector = Eigen::Matrix<double, N, 1>;
  using Matrix = Eigen::Matrix<double, N, N>;

  RcacController() : RcacController(RcacHyperparameters{}) {}

  explicit RcacController(const RcacHyperparameters& hyper, const Vector& theta0 = Vector::Zero())
      : RcacController(hyper.p0 * Matrix::Identity(), hyper.sigma, theta0, hyper.integrator_limit) {}

  RcacController(const Matrix& p0, double sigma, const Vector& theta0,
                 double integrator_limit = 1e4)
      : theta_(theta0), cov_(p0), sigma_(sigma), integrator_limit_(integrator_limit) {
    if (!p0.isApprox(p0.transpose()) || Eigen::LLT<Matrix>(p0).info() != Eigen::Success) {
      throw std::invalid_argument("RcacController: P0 must be symmetric positive definite");
    }
    if (!std::isfinite(sigma) || !theta0.allFinite()) {
      throw std::invalid_argument("RcacController: non-finite sigma or theta0");
    }
  }

  static constexpr ControllerKind kind() { return Kind; }

  /// Regressor from the stored error history. The feedforward value must be
  /// given exactly when the kind is PID_FF.
  Vector build_regressor(std::optional<double> setpoint_ff = std::nullopt) const {
    if (setpoint_ff.has_value() != (Kind == ControllerKind::PID_FF)) {
      throw std::invalid_argument(std::string("build_regressor: feedforward value ") +
                                  (setpoint_ff ? "given to" : "missing for") + " a " +
                                  kind_name(Kind) + " controller");
    }
    Vector phi;
    phi(0) = z_prev_;
    if constexpr (N >= 2) phi(1) = gamma_;
    if constexpr (N >= 3) phi(2) = z_prev_ - z_prev2_;
    if constexpr (N >= 4) phi(3) = *setpoint_ff;
    return phi;
  }

  /// u = phi theta; remembers (phi, u) for the next update.
  double control_output(const Vector& phi) {
    const double u = phi.dot(theta_);
    phi_prev_ = phi;
    u_prev_ = u;
    return u;
  }

  /// RLS update with the new error against the stored previous regressor/output.
  void rls_update(double z) {
    ++updates_;
    if (!std::isfinite(z) || !rcacpilot::rls_update<N>(theta_, cov_, phi_prev_, u_prev_, z, sigma_)) {
      throw DivergenceError(std::string(kind_name(Kind)) + " controller diverged at update " +
                                std::to_string(updates_),
                            updates_);
    }
  }

  /// Appends a new error sample to the history (z_{k-2} <- z_{k-1} <- z).
  /// With integrate = false the integrator state is held.
  void push_error(double z, bool integrate = true) {
    z_prev2_ = z_prev_;
    z_prev_ = z;
    if (integrate) gamma_ = std::clamp(gamma_ + z, -integrator_limit_, integrator_limit_);
  }

  /// One full controller tick at step k, given the new error z_k:
  ///   u_k = phi_k theta_k, with phi_k built from z_{k-1}, gamma_{k-1}, ...
  ///   theta_{k+1} from z_k, phi_{k-1}, u_{k-1}   (used from the next tick on)
  /// With adapt = false the gains stay frozen and the controller behaves as a
  /// fixed-gain digital PID of the same structure.
  double tick(double z, std::optional<double> setpoint_ff = std::nullopt, bool adapt = true,
              bool integrate = true) {
    const Vector phi = build_regressor(setpoint_ff);
    const double u = phi.dot(theta_);
    if (adapt) rls_update(z);
    phi_prev_ = phi;
    u_prev_ = u;
    push_error(z, integrate);
    return u;
  }

  const Vector& theta() const { return theta_; }
  const Matrix& covariance() const { return cov_; }
  double sigma() const { return sigma_; }
  double gamma() const { return gamma_; }
  double z_prev() const { return z_prev_; }
  double z_prev2() const { return z_prev2_; }
  const Vector& phi_prev() const { return phi_prev_; }
  double u_prev() const { return u_prev_; }
  std::uint64_t updates() const { return updates_; }

  void set_theta(const Vector& theta) { theta_ = theta; }

  /// Directly sets the error history; used to seed a controller mid-flight
  /// and by tests.
  void set_history(double z_prev, double z_prev2, double gamma) {
    z_prev_ = z_prev;
    z_prev2_ = z_prev2;
    gamma_ = gamma;
  }

 private:
  Vector theta_;
  Matrix cov_;
  double sigma_;
  double integrator_limit_;
  double gamma_ = 0.0;
  double z_prev_ = 0.0;
  double z_prev2_ = 0.0;
  Vector phi_prev_ = Vector::Zero();
  double u_prev_ = 0.0;
  std::uint64_t updates_ = 0;
};

}  // namespace rcacpilot
