#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spherebot/analysis.hpp"
#include "spherebot/controller.hpp"
#include "spherebot/robot.hpp"

namespace spherebot {

enum class Mode { kClosedLoop, kOpenLoop };

/// Abort threshold on |omega| (rad/s).
inline constexpr double kMaxAngularSpeed = 1e6;

struct SimConfig {
  double dt = 1e-3;
  double t_final = 60.0;
  std::size_t record_every = 10;
  std::size_t reproject_every = 100;
  Mode mode = Mode::kClosedLoop;
  /// Keep the four per-stage torques of every step (for open-loop replay).
  bool record_stage_torques = false;

  /// Throws std::invalid_argument when dt <= 0, t_final < dt or a cadence is 0.
  void validate() const;

  /// Number of integration steps, round(t_final / dt).
  std::size_t steps() const;
};

struct Scenario {
  RobotParams params;
  Gains gains;
  RobotState initial;
  SimConfig config;

  void validate() const;
};

/// Torques applied at the four Runge-Kutta stages of one step.
using StageTorques = std::array<Vec3, 4>;

/// Torque for stage `stage` (0..3) given the stage state.
using StageTorqueFn = std::function<Vec3(int stage, const RobotState& stage_state)>;

/// Open-loop torque for stage `stage` of step `step`, starting at time `t`.
using TorqueSchedule = std::function<Vec3(std::size_t step, int stage, double t)>;

/// Schedule that applies the same torque everywhere.
TorqueSchedule constant_torque(const Vec3& torque);

/// Schedule that replays a per-step stage torque log. Asking for the step
/// just past the end returns the final stage of the last step.
TorqueSchedule replay(std::vector<StageTorques> log);

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t step, double t)
      : std::runtime_error(what), step_(step), t_(t) {}
  std::size_t step() const { return step_; }
  double time() const { return t_; }

 private:
  std::size_t step_;
  double t_;
};

/// One fourth-order Runge-Kutta-Munthe-Kaas step. Position and velocity are
/// advanced in R^4 while the attitude moves on the group as
/// R0 exp(dt * sum b_i k_i), with k_i the stage body velocities corrected by
/// dexp_inv. `applied`, when given, receives the stage torques.
RobotState step(const RobotState& s, const StageTorqueFn& torque,
                const RobotParams& params, double dt,
                StageTorques* applied = nullptr);

/// Step with the torque held constant over the interval.
RobotState step(const RobotState& s, const Vec3& torque, const RobotParams& params,
                double dt);

struct Sample {
  double t = 0.0;
  RobotState state;
  /// Torque evaluated at the sample state (stage 0 of the following step).
  Vec3 torque = Vec3::Zero();
  /// Controller breakdown; empty in open-loop mode.
  std::optional<ControlOutput> control;
  EnergyRecord energy;
};

struct Trajectory {
  std::vector<Sample> samples;
  /// Filled only when SimConfig::record_stage_torques is set.
  std::vector<StageTorques> stage_torques;
  double dt = 0.0;
  std::size_t steps = 0;
  /// Largest ||R^T R - I||_F seen at any step, before reprojection.
  double max_orthogonality_error = 0.0;

  bool empty() const { return samples.empty(); }
  const Sample& back() const { return samples.back(); }
};

/// Closed-loop run under the geometric controller. The scenario must be in
/// closed-loop mode. Throws DivergenceError on blow-up.
Trajectory simulate(const Scenario& sc);

/// Open-loop run applying `schedule`. The scenario must be in open-loop mode.
Trajectory simulate(const Scenario& sc, const TorqueSchedule& schedule);

}  // namespace spherebot
