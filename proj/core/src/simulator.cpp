#include "spherebot/simulator.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace spherebot {

void SimConfig::validate() const {
  if (!std::isfinite(dt) || dt <= 0.0) {
    throw std::invalid_argument("dt must be positive");
  }
  if (!std::isfinite(t_final) || t_final < dt) {
    throw std::invalid_argument("t_final must be at least dt");
  }
  if (record_every == 0) {
    throw std::invalid_argument("record_every must be >= 1");
  }
  if (reproject_every == 0) {
    throw std::invalid_argument("reproject_every must be >= 1");
  }
}

std::size_t SimConfig::steps() const {
  return static_cast<std::size_t>(std::llround(t_final / dt));
}

void Scenario::validate() const {
  config.validate();
  if (!initial.is_finite()) {
    throw std::invalid_argument("initial state has non-finite entries");
  }
  // Revalidates the attitude against the rotation tolerance.
  (void)Rotation::from_matrix(initial.attitude.matrix());
}

TorqueSchedule constant_torque(const Vec3& torque) {
  return [torque](std::size_t, int, double) { return torque; };
}

TorqueSchedule replay(std::vector<StageTorques> log) {
  if (log.empty()) {
    throw std::invalid_argument("replay: empty torque log");
  }
  return [log = std::move(log)](std::size_t step, int stage, double) -> Vec3 {
    if (step >= log.size()) {
      return log.back()[3];
    }
    return log[step][static_cast<std::size_t>(stage)];
  };
}

namespace {

// Time derivative of (x, y, omega) plus the Lie-algebra increment rate.
struct StageRate {
  double x_dot;
  double y_dot;
  Vec3 omega_dot;
  Vec3 u_dot;
};

StageRate evaluate(int stage, const RobotState& st, const Vec3& u,
                   const StageTorqueFn& torque, const RobotParams& params,
                   StageTorques* applied) {
  const Vec3 tau = torque(stage, st);
  if (applied != nullptr) {
    (*applied)[static_cast<std::size_t>(stage)] = tau;
  }
  const double r = params.radius();
  return StageRate{r * st.omega.dot(st.attitude.row(1)),
                   -r * st.omega.dot(st.attitude.row(0)),
                   dynamics(st, tau, params), dexp_inv(u, st.omega)};
}

RobotState stage_state(const RobotState& s, const Vec3& u, double h,
                       const StageRate& k) {
  RobotState st;
  st.x = s.x + h * k.x_dot;
  st.y = s.y + h * k.y_dot;
  st.omega = s.omega + h * k.omega_dot;
  st.attitude = s.attitude * exp_so3(u);
  return st;
}

}  // namespace

RobotState step(const RobotState& s, const StageTorqueFn& torque,
                const RobotParams& params, double dt, StageTorques* applied) {
  const double half = 0.5 * dt;

  const Vec3 u1 = Vec3::Zero();
  const StageRate k1 = evaluate(0, s, u1, torque, params, applied);

  const Vec3 u2 = half * k1.u_dot;
  const StageRate k2 =
      evaluate(1, stage_state(s, u2, half, k1), u2, torque, params, applied);

  const Vec3 u3 = half * k2.u_dot;
  const StageRate k3 =
      evaluate(2, stage_state(s, u3, half, k2), u3, torque, params, applied);

  const Vec3 u4 = dt * k3.u_dot;
  const StageRate k4 =
      evaluate(3, stage_state(s, u4, dt, k3), u4, torque, params, applied);

  const double w = dt / 6.0;
  RobotState next;
  next.x = s.x + w * (k1.x_dot + 2.0 * k2.x_dot + 2.0 * k3.x_dot + k4.x_dot);
  next.y = s.y + w * (k1.y_dot + 2.0 * k2.y_dot + 2.0 * k3.y_dot + k4.y_dot);
  next.omega = s.omega + w * (k1.omega_dot + 2.0 * k2.omega_dot +
                              2.0 * k3.omega_dot + k4.omega_dot);
  const Vec3 u = w * (k1.u_dot + 2.0 * k2.u_dot + 2.0 * k3.u_dot + k4.u_dot);
  next.attitude = s.attitude * exp_so3(u);
  return next;
}

RobotState step(const RobotState& s, const Vec3& torque, const RobotParams& params,
                double dt) {
  return step(s, [&torque](int, const RobotState&) { return torque; }, params, dt);
}

namespace {

// Shared driver. `stage_torque(k, t)` builds the stage torque function for
// step k; `sample_control` evaluates the recorded control at a sample.
template <typename MakeStageFn, typename SampleFn>
Trajectory run(const Scenario& sc, MakeStageFn&& stage_torque,
               SampleFn&& sample_control) {
  sc.validate();
  const SimConfig& cfg = sc.config;
  const std::size_t n = cfg.steps();

  Trajectory traj;
  traj.dt = cfg.dt;
  traj.steps = n;
  traj.samples.reserve(n / cfg.record_every + 2);
  if (cfg.record_stage_torques) {
    traj.stage_torques.reserve(n);
  }

  RobotState state = sc.initial;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    if (k % cfg.record_every == 0 || k == n) {
      Sample sample;
      sample.t = t;
      sample.state = state;
      sample_control(k, t, state, sample);
      sample.energy = energy_record(t, state, sc.gains, sc.params);
      traj.samples.push_back(std::move(sample));
    }
    if (k == n) {
      break;
    }

    StageTorques applied;
    state = step(state, stage_torque(k, t), sc.params, cfg.dt,
                 cfg.record_stage_torques ? &applied : nullptr);
    if (cfg.record_stage_torques) {
      traj.stage_torques.push_back(applied);
    }

    if (!state.is_finite() || state.omega.norm() > kMaxAngularSpeed) {
      std::ostringstream msg;
      msg << "simulation diverged at step " << k + 1 << " (t = "
          << static_cast<double>(k + 1) * cfg.dt
          << " s): |omega| = " << state.omega.norm();
      throw DivergenceError(msg.str(), k + 1, static_cast<double>(k + 1) * cfg.dt);
    }

    const double orth = state.attitude.orthogonality_error();
    if (orth > traj.max_orthogonality_error) {
      traj.max_orthogonality_error = orth;
    }
    if ((k + 1) % cfg.reproject_every == 0) {
      state.attitude = project_so3(state.attitude.matrix());
    }
  }
  return traj;
}

}  // namespace

Trajectory simulate(const Scenario& sc) {
  if (sc.config.mode != Mode::kClosedLoop) {
    throw std::invalid_argument(
        "open-loop scenario needs a torque schedule");
  }
  const Gains& gains = sc.gains;
  const RobotParams& params = sc.params;
  const StageTorqueFn controller = [&](int, const RobotState& st) {
    return control_torque(st, gains, params).torque;
  };
  return run(
      sc, [&](std::size_t, double) -> const StageTorqueFn& { return controller; },
      [&](std::size_t, double, const RobotState& st, Sample& sample) {
        const ControlOutput out = control_torque(st, gains, params);
        sample.torque = out.torque;
        sample.control = out;
      });
}

Trajectory simulate(const Scenario& sc, const TorqueSchedule& schedule) {
  if (sc.config.mode != Mode::kOpenLoop) {
    throw std::invalid_argument("torque schedule given for a closed-loop scenario");
  }
  if (!schedule) {
    throw std::invalid_argument("empty torque schedule");
  }
  return run(
      sc,
      [&](std::size_t k, double t) -> StageTorqueFn {
        return [&schedule, k, t](int stage, const RobotState&) {
          return schedule(k, stage, t);
        };
      },
      [&](std::size_t k, double t, const RobotState&, Sample& sample) {
        sample.torque = schedule(k, 0, t);
      });
}

}  // namespace spherebot
