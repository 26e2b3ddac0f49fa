#include "spherebot/robot.hpp"

#include <cmath>
#include <stdexcept>

namespace spherebot {

RobotParams::RobotParams(double radius, double mass, const Inertia& inertia)
    : radius_(radius), mass_(mass), inertia_(inertia) {
  if (!std::isfinite(radius) || radius <= 0.0) {
    throw std::invalid_argument("shell radius must be positive");
  }
  if (!std::isfinite(mass) || mass <= 0.0) {
    throw std::invalid_argument("shell mass must be positive");
  }
  const Vec3& j = inertia.moments();
  if (!(j.x() < j.y() && j.y() < j.z())) {
    throw std::invalid_argument(
        "principal moments of inertia must satisfy 0 < J1 < J2 < J3");
  }
}

KinematicRate kinematics(const RobotState& s, const RobotParams& params) {
  const double r = params.radius();
  KinematicRate rate;
  rate.x_dot = r * s.omega.dot(s.attitude.row(1));
  rate.y_dot = -r * s.omega.dot(s.attitude.row(0));
  rate.attitude_dot = s.attitude.matrix() * hat(s.omega);
  return rate;
}

Vec3 contact_velocity(const RobotState& s, const RobotParams& params) {
  const Vec3 spatial_omega = s.attitude * s.omega;
  return params.radius() * spatial_omega.cross(Vec3::UnitZ());
}

Vec3 dynamics(const RobotState& s, const Vec3& torque, const RobotParams& params) {
  const Inertia& j = params.inertia();
  return j.solve(torque - s.omega.cross(j.apply(s.omega)));
}

StateRate state_rate(const RobotState& s, const Vec3& torque,
                     const RobotParams& params) {
  const KinematicRate k = kinematics(s, params);
  return StateRate{k.x_dot, k.y_dot, k.attitude_dot, dynamics(s, torque, params)};
}

double kinetic_energy(const RobotState& s, const RobotParams& params) {
  return 0.5 * s.omega.dot(params.inertia().apply(s.omega));
}

}  // namespace spherebot
