#pragma once

#include "spherebot/robot.hpp"
#include "spherebot/so3.hpp"

namespace spherebot {

/// Position gain k_p and velocity-error gain k_v, both strictly positive.
class Gains {
 public:
  Gains(double kp, double kv);

  double kp() const { return kp_; }
  double kv() const { return kv_; }

  /// Same gains without the positivity check. Only for exploring the
  /// k_v = 0 boundary in sweeps, where convergence is not guaranteed.
  static Gains unchecked(double kp, double kv) { return Gains(kp, kv, Raw{}); }

 private:
  struct Raw {};
  Gains(double kp, double kv, Raw) : kp_(kp), kv_(kv) {}

  double kp_;
  double kv_;
};

/// Feedforward and PD accelerations with the torque they produce,
/// tau = J (f_ff + f_pd).
struct ControlOutput {
  Vec3 f_ff = Vec3::Zero();
  Vec3 f_pd = Vec3::Zero();
  Vec3 torque = Vec3::Zero();
};

/// Desired spatial angular velocity: spin about the inertial vertical.
inline const Vec3 kDesiredSpatialVelocity = Vec3::UnitZ();

/// psi = 1/2 k_p (x^2 + y^2).
double error_function(double x, double y, const Gains& gains);

/// Differential of psi paired with the body velocity:
/// k_p r R^T (x e2 - y e1), so that d/dt psi = d_psi . omega.
Vec3 d_psi(const RobotState& s, const Gains& gains, const RobotParams& params);

/// Desired velocity carried to the current attitude, in the body frame:
/// Ad_{R^T} e3 = R^T e3 (the third row of R).
Vec3 transport_desired_velocity(const Rotation& attitude);

/// Right transport of a desired attitude velocity to the current attitude,
/// T(R, R_d)(R_d') = R_d' R_d^T R.
Mat3 right_transport(const Rotation& attitude, const Rotation& desired,
                     const Mat3& desired_rate);

/// e_omega = omega - R^T e3.
Vec3 velocity_error(const RobotState& s);

/// Feedforward acceleration for a transported desired velocity `target`
/// (= R^T e3) and body velocity `omega`:
///   target x omega + nabla_omega target.
Vec3 feedforward(const Vec3& target, const Vec3& omega, const Inertia& inertia);

Vec3 feedforward(const RobotState& s, const RobotParams& params);

/// f_pd = -J^{-1} (d_psi + k_v e_omega).
Vec3 pd_term(const RobotState& s, const Gains& gains, const RobotParams& params);

ControlOutput control_torque(const RobotState& s, const Gains& gains,
                             const RobotParams& params);

}  // namespace spherebot
