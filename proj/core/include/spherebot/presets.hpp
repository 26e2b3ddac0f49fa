#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "spherebot/simulator.hpp"

namespace spherebot {

/// r = 0.4 m, J = diag(0.3, 0.4, 0.5) kg m^2. The shell mass is not part of
/// the published parameter set; 1 kg is used as a placeholder.
RobotParams reference_params();

/// k_p = 5, k_v = 1.
Gains reference_gains();

/// 45 degrees about the inertial X axis.
Rotation fig2_initial_attitude();

/// diag(1, -1, -1): body z-axis pointing down.
Rotation fig3_initial_attitude();

/// Named scenario ("fig2" or "fig3") with default SimConfig.
/// Throws std::invalid_argument for unknown names.
Scenario preset(std::string_view name);

std::vector<std::string> preset_names();

}  // namespace spherebot
