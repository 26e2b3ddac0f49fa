#include "spherebot/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace spherebot {

RobotParams reference_params() { return RobotParams(0.4, 1.0, Inertia(0.3, 0.4, 0.5)); }

Gains reference_gains() { return Gains(5.0, 1.0); }

Rotation fig2_initial_attitude() {
  const double c = 1.0 / std::sqrt(2.0);
  Mat3 m;
  m << 1.0, 0.0, 0.0,
       0.0, c, -c,
       0.0, c, c;
  return Rotation::from_matrix(m);
}

Rotation fig3_initial_attitude() {
  return Rotation::from_matrix(Vec3(1.0, -1.0, -1.0).asDiagonal().toDenseMatrix());
}

Scenario preset(std::string_view name) {
  RobotState initial;
  initial.x = 4.0;
  initial.y = 3.0;
  initial.omega = Vec3::Zero();
  if (name == "fig2") {
    initial.attitude = fig2_initial_attitude();
  } else if (name == "fig3") {
    initial.attitude = fig3_initial_attitude();
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) +
                                "' (expected fig2 or fig3)");
  }
  return Scenario{reference_params(), reference_gains(), initial, SimConfig{}};
}

std::vector<std::string> preset_names() { return {"fig2", "fig3"}; }

}  // namespace spherebot
