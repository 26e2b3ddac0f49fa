#include "spherebot/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spherebot/convergence.hpp"

namespace spherebot {

double lyapunov_value(const RobotState& s, const Gains& gains,
                      const RobotParams& params) {
  const Vec3 e = velocity_error(s);
  return 0.5 * e.dot(params.inertia().apply(e)) + error_function(s.x, s.y, gains);
}

double lyapunov_rate(const RobotState& s, const Gains& gains) {
  return -gains.kv() * velocity_error(s).squaredNorm();
}

EnergyRecord energy_record(double t, const RobotState& s, const Gains& gains,
                           const RobotParams& params) {
  const Vec3 e = velocity_error(s);
  EnergyRecord rec;
  rec.t = t;
  rec.psi = error_function(s.x, s.y, gains);
  rec.lyapunov = 0.5 * e.dot(params.inertia().apply(e)) + rec.psi;
  rec.lyapunov_rate = -gains.kv() * e.squaredNorm();
  rec.velocity_error_norm = e.norm();
  rec.position_distance = std::hypot(s.x, s.y);
  return rec;
}

ConvergenceReport check_convergence(const Trajectory& traj,
                                    const ConvergenceCriteria& criteria) {
  if (traj.empty()) {
    throw std::invalid_argument("check_convergence: empty trajectory");
  }
  const auto& samples = traj.samples;
  const auto inside = [&](const Sample& s) {
    return s.energy.position_distance < criteria.position_tolerance &&
           s.energy.velocity_error_norm < criteria.velocity_tolerance;
  };

  ConvergenceReport report;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    report.max_lyapunov_increase =
        std::max(report.max_lyapunov_increase,
                 samples[i].energy.lyapunov - samples[i - 1].energy.lyapunov);
  }

  // Walk back over the trailing run of in-tolerance samples.
  std::size_t first = samples.size();
  while (first > 0 && inside(samples[first - 1])) {
    --first;
  }
  if (first < samples.size()) {
    report.settling_time = samples[first].t;
    report.converged = samples.back().t - report.settling_time >= criteria.hold;
  }

  const Sample& last = samples.back();
  report.final_position_distance = last.energy.position_distance;
  report.final_velocity_error = last.energy.velocity_error_norm;
  report.final_spin = last.state.omega.z();
  report.spin_sign = (report.final_spin > 0.0) - (report.final_spin < 0.0);
  return report;
}

}  // namespace spherebot
