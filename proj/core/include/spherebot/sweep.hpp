#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spherebot/convergence.hpp"
#include "spherebot/simulator.hpp"

namespace spherebot {

/// Cartesian grid of scenario overrides. An empty axis keeps the base value.
/// Points are enumerated with `kp` varying slowest and `omega0` fastest.
struct SweepGrid {
  std::vector<double> kp;
  std::vector<double> kv;  // k_v = 0 is allowed here to probe the undamped case
  std::vector<double> dt;
  std::vector<double> x0;
  std::vector<double> y0;
  std::vector<Rotation> attitude;
  std::vector<Vec3> omega0;

  std::size_t size() const;
  bool has_axes() const;
};

/// Parameter values of one grid point.
struct SweepPoint {
  double kp = 0.0;
  double kv = 0.0;
  double dt = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  std::size_t attitude_index = 0;  // 0 when the attitude axis is empty
  std::size_t omega_index = 0;
};

struct RunSummary {
  std::size_t index = 0;
  SweepPoint point;
  /// False when the run diverged; `error` then holds the diagnostic.
  bool completed = false;
  std::string error;
  ConvergenceReport report;
};

/// Summary of a finished closed-loop trajectory.
RunSummary summarize(std::size_t index, const SweepPoint& point,
                     const Trajectory& traj,
                     const ConvergenceCriteria& criteria = {});

/// Grid point `index` applied to `base`. Gains are not range-checked beyond
/// k_p > 0, k_v >= 0.
Scenario scenario_at(const Scenario& base, const SweepGrid& grid,
                     std::size_t index, SweepPoint* point = nullptr);

/// Runs every grid point in closed loop, `threads` at a time (0 picks the
/// hardware concurrency). Results come back in grid order regardless of
/// scheduling. Divergent runs become failed summaries.
/// Throws std::invalid_argument for a grid with no axes or invalid values.
std::vector<RunSummary> sweep(const Scenario& base, const SweepGrid& grid,
                              const ConvergenceCriteria& criteria = {},
                              unsigned threads = 0);

}  // namespace spherebot
