#include "spherebot/controller.hpp"

#include <cmath>
#include <stdexcept>

namespace spherebot {

Gains::Gains(double kp, double kv) : kp_(kp), kv_(kv) {
  if (!std::isfinite(kp) || kp <= 0.0) {
    throw std::invalid_argument("position gain k_p must be positive");
  }
  if (!std::isfinite(kv) || kv <= 0.0) {
    throw std::invalid_argument("velocity gain k_v must be positive");
  }
}

double error_function(double x, double y, const Gains& gains) {
  return 0.5 * gains.kp() * (x * x + y * y);
}

Vec3 d_psi(const RobotState& s, const Gains& gains, const RobotParams& params) {
  // R^T (x e2 - y e1) = x r2 - y r1 with r_i the rows of R.
  const Vec3 lever = s.x * s.attitude.row(1) - s.y * s.attitude.row(0);
  return gains.kp() * params.radius() * lever;
}

Vec3 transport_desired_velocity(const Rotation& attitude) {
  return attitude.transpose() * kDesiredSpatialVelocity;
}

Mat3 right_transport(const Rotation& attitude, const Rotation& desired,
                     const Mat3& desired_rate) {
  return desired_rate * desired.matrix().transpose() * attitude.matrix();
}

Vec3 velocity_error(const RobotState& s) {
  return s.omega - transport_desired_velocity(s.attitude);
}

Vec3 feedforward(const Vec3& target, const Vec3& omega, const Inertia& inertia) {
  return bracket(target, omega) + connection(inertia, omega, target);
}

Vec3 feedforward(const RobotState& s, const RobotParams& params) {
  return feedforward(transport_desired_velocity(s.attitude), s.omega,
                     params.inertia());
}

Vec3 pd_term(const RobotState& s, const Gains& gains, const RobotParams& params) {
  return -params.inertia().solve(d_psi(s, gains, params) +
                                 gains.kv() * velocity_error(s));
}

ControlOutput control_torque(const RobotState& s, const Gains& gains,
                             const RobotParams& params) {
  ControlOutput out;
  out.f_ff = feedforward(s, params);
  out.f_pd = pd_term(s, gains, params);
  out.torque = params.inertia().apply(out.f_ff + out.f_pd);
  return out;
}

}  // namespace spherebot
