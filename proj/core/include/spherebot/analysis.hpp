#pragma once

#include "spherebot/controller.hpp"
#include "spherebot/robot.hpp"

namespace spherebot {

/// Lyapunov bookkeeping for one state.
struct EnergyRecord {
  double t = 0.0;
  double lyapunov = 0.0;       // V
  double lyapunov_rate = 0.0;  // -k_v |e_omega|^2
  double psi = 0.0;
  double velocity_error_norm = 0.0;
  // Distance to the target set E, reported per component.
  double position_distance = 0.0;  // |(x, y)|
};

/// V = 1/2 e_omega^T J e_omega + psi.
double lyapunov_value(const RobotState& s, const Gains& gains,
                      const RobotParams& params);

/// Closed-loop derivative of V, -k_v |e_omega|^2.
double lyapunov_rate(const RobotState& s, const Gains& gains);

EnergyRecord energy_record(double t, const RobotState& s, const Gains& gains,
                           const RobotParams& params);

}  // namespace spherebot
