#pragma once

#include <cmath>

#include "spherebot/so3.hpp"

namespace spherebot {

/// Physical parameters of the spherical shell.
///
/// The principal moments must satisfy 0 < J1 < J2 < J3; construction rejects
/// anything else. The mass is carried for completeness and does not enter the
/// attitude dynamics.
class RobotParams {
 public:
  RobotParams(double radius, double mass, const Inertia& inertia);

  double radius() const { return radius_; }
  double mass() const { return mass_; }
  const Inertia& inertia() const { return inertia_; }

 private:
  double radius_;
  double mass_;
  Inertia inertia_;
};

/// Planar contact position, attitude (body to inertial) and body angular
/// velocity.
struct RobotState {
  double x = 0.0;
  double y = 0.0;
  Rotation attitude;
  Vec3 omega = Vec3::Zero();

  bool is_finite() const {
    return std::isfinite(x) && std::isfinite(y) && omega.allFinite() &&
           attitude.matrix().allFinite();
  }
};

struct KinematicRate {
  double x_dot = 0.0;
  double y_dot = 0.0;
  Mat3 attitude_dot = Mat3::Zero();  // R hat(omega)
};

struct StateRate {
  double x_dot = 0.0;
  double y_dot = 0.0;
  Mat3 attitude_dot = Mat3::Zero();
  Vec3 omega_dot = Vec3::Zero();
};

/// Rolling kinematics: x' = r (omega . r2), y' = -r (omega . r1),
/// R' = R hat(omega), where r_i is the i-th row of R.
KinematicRate kinematics(const RobotState& s, const RobotParams& params);

/// Velocity of the center from the no-slip condition, r (R omega) x e3.
/// The third component is identically zero.
Vec3 contact_velocity(const RobotState& s, const RobotParams& params);

/// Euler-Poincare attitude dynamics, omega' = -J^{-1}(omega x J omega) + J^{-1} tau.
Vec3 dynamics(const RobotState& s, const Vec3& torque, const RobotParams& params);

/// Kinematics and dynamics combined.
StateRate state_rate(const RobotState& s, const Vec3& torque,
                     const RobotParams& params);

/// 1/2 omega^T J omega.
double kinetic_energy(const RobotState& s, const RobotParams& params);

}  // namespace spherebot
