#pragma once

#include "spherebot/simulator.hpp"

namespace spherebot {

/// Thresholds for "arrived at E": both distances below tolerance for at least
/// `hold` seconds up to the end of the trajectory.
struct ConvergenceCriteria {
  double position_tolerance = 0.05;   // m
  double velocity_tolerance = 0.01;   // rad/s
  double hold = 1.0;                  // s
};

struct ConvergenceReport {
  bool converged = false;
  /// Start of the final stretch inside the tolerances; meaningful only when
  /// converged.
  double settling_time = 0.0;
  /// Sign of the final omega . e3: +1 spins with the body z-axis up, -1 down.
  int spin_sign = 0;
  /// Largest increase of V between consecutive samples (0 if monotone).
  double max_lyapunov_increase = 0.0;
  double final_position_distance = 0.0;
  double final_velocity_error = 0.0;
  double final_spin = 0.0;  // omega . e3 at the last sample
};

/// Throws std::invalid_argument on an empty trajectory.
ConvergenceReport check_convergence(const Trajectory& traj,
                                    const ConvergenceCriteria& criteria = {});

}  // namespace spherebot
