#include "spherebot/controller.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "spherebot/presets.hpp"
#include "support/oracles.hpp"

namespace spherebot {
namespace {

const RobotParams kParams = reference_params();
const Gains kGains = reference_gains();

RobotState make_state(double x, double y, const Rotation& r, const Vec3& w) {
  RobotState s;
  s.x = x;
  s.y = y;
  s.attitude = r;
  s.omega = w;
  return s;
}

RobotState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-5.0, 5.0);
  return make_state(pos(rng), pos(rng),
                    Rotation::from_matrix(testing::random_rotation(rng)),
                    testing::random_vec(rng, 3.0));
}

RobotState on_target(const Rotation& r) {
  return make_state(0.0, 0.0, r, r.row(2));
}

TEST(Gains, MustBePositive) {
  EXPECT_THROW(Gains(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(Gains(5.0, 0.0), std::invalid_argument);
  EXPECT_THROW(Gains(-1.0, 1.0), std::invalid_argument);
  EXPECT_NO_THROW(Gains(5.0, 1.0));
}

TEST(ErrorFunction, Values) {
  EXPECT_EQ(error_function(0, 0, kGains), 0.0);
  EXPECT_DOUBLE_EQ(error_function(4, 3, kGains), 62.5);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    EXPECT_GT(error_function(x, y, kGains), 0.0);
  }
}

TEST(DPsi, KnownValues) {
  const Rotation id = Rotation::identity();
  EXPECT_EQ(d_psi(make_state(0, 0, id, Vec3::Zero()), kGains, kParams), Vec3::Zero());
  EXPECT_LE((d_psi(make_state(4, 3, id, Vec3::Zero()), kGains, kParams) - Vec3(-6, 8, 0))
                .cwiseAbs()
                .maxCoeff(),
            1e-14);
}

TEST(DPsi, OrthogonalToTransportedTarget) {
  // (x r2 - y r1) . r3 = 0 because the rows of R are orthonormal; this is
  // what lets d/dt psi be written against e_omega instead of omega.
  std::mt19937_64 rng(32);
  for (int i = 0; i < 1000; ++i) {
    const RobotState s = random_state(rng);
    EXPECT_NEAR(d_psi(s, kGains, kParams).dot(transport_desired_velocity(s.attitude)), 0.0,
                1e-12);
  }
}

TEST(DPsi, MatchesFiniteDifferenceAlongClosedLoop) {
  std::mt19937_64 rng(33);
  const testing::FlatSystem sys{0.4, Vec3(0.3, 0.4, 0.5), 5.0, 1.0};
  const RobotState s0 = random_state(rng);
  auto flat = testing::FlatSystem::pack(s0.x, s0.y, s0.attitude.matrix(), s0.omega);
  const double h = 1e-6;
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    if (k % 20 == 0) {
      RobotState s;
      s.x = flat(0);
      s.y = flat(1);
      s.attitude = project_so3(testing::FlatSystem::attitude(flat));
      s.omega = flat.segment<3>(11);
      const double analytic = d_psi(s, kGains, kParams).dot(s.omega);
      const double fd =
          (sys.psi(sys.rk4(flat, h)) - sys.psi(sys.rk4(flat, -h))) / (2.0 * h);
      if (std::abs(analytic) > 1e-3) {
        EXPECT_LE(std::abs(fd - analytic) / std::abs(analytic), 1e-6) << "k = " << k;
        ++checked;
      }
    }
    flat = sys.rk4(flat, 1e-2);
  }
  EXPECT_GE(checked, 10);
}

TEST(VelocityError, KnownValues) {
  EXPECT_EQ(velocity_error(make_state(0, 0, Rotation::identity(), Vec3::UnitZ())),
            Vec3::Zero());
  const double c = 1.0 / std::sqrt(2.0);
  EXPECT_LE((velocity_error(make_state(0, 0, fig2_initial_attitude(), Vec3::Zero())) -
             Vec3(0, -c, -c))
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
  EXPECT_EQ(velocity_error(make_state(0, 0, fig3_initial_attitude(), Vec3::Zero())),
            Vec3(0, 0, 1));
}

TEST(TransportDesiredVelocity, KnownValues) {
  EXPECT_EQ(transport_desired_velocity(Rotation::identity()), Vec3::UnitZ());
  EXPECT_EQ(transport_desired_velocity(fig3_initial_attitude()), Vec3(0, 0, -1));
}

TEST(TransportDesiredVelocity, IndependentOfDesiredYaw) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const Rotation r = Rotation::from_matrix(testing::random_rotation(rng));
    const Rotation rd = Rotation::about_axis(Vec3::UnitZ(), angle(rng));
    ASSERT_LE((rd * Vec3::UnitZ() - Vec3::UnitZ()).norm(), 1e-15);
    const Mat3 rd_dot = hat(kDesiredSpatialVelocity) * rd.matrix();
    const Mat3 transported = right_transport(r, rd, rd_dot);
    // Left-trivialize: R^T T(R_d') = hat(Ad_{R^T} Omega_d).
    const Vec3 body = vee(r.matrix().transpose() * transported);
    EXPECT_LE((body - transport_desired_velocity(r)).norm(), 1e-12);
  }
}

TEST(TransportDesiredVelocity, DefinesVelocityError) {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 100; ++i) {
    const RobotState s = random_state(rng);
    EXPECT_EQ(velocity_error(s), s.omega - transport_desired_velocity(s.attitude));
  }
}

TEST(Feedforward, VanishesOnPrincipalSpin) {
  EXPECT_EQ(feedforward(make_state(0, 0, Rotation::identity(), Vec3::UnitZ()), kParams),
            Vec3::Zero());
}

TEST(Feedforward, CancelsGyroscopicTermWhenAligned) {
  // With omega equal to the transported target, f_ff = J^{-1}(w x Jw).
  const Vec3 w(1, 1, 1);
  EXPECT_LE((feedforward(w, w, kParams.inertia()) - Vec3(1.0 / 3.0, -0.5, 0.2))
                .cwiseAbs()
                .maxCoeff(),
            1e-15);

  // Same thing on an actual attitude whose third row is (1, 1, 1)/sqrt(3).
  const Vec3 n = w.normalized();
  const Rotation r =
      Rotation::from_matrix(Eigen::Quaterniond::FromTwoVectors(n, Vec3::UnitZ()).toRotationMatrix());
  ASSERT_LE((r.row(2) - n).norm(), 1e-15);
  const RobotState s = make_state(0, 0, r, n);
  EXPECT_LE((feedforward(s, kParams) - Vec3(1.0 / 3.0, -0.5, 0.2) / 3.0).cwiseAbs().maxCoeff(),
            1e-15);
  const Vec3 closed_loop = dynamics(s, control_torque(s, kGains, kParams).torque, kParams);
  EXPECT_LE(closed_loop.norm(), 1e-14);
}

TEST(Feedforward, ZeroAtRest) {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 50; ++i) {
    RobotState s = random_state(rng);
    s.omega = Vec3::Zero();
    EXPECT_EQ(feedforward(s, kParams), Vec3::Zero());
  }
}

TEST(Feedforward, IgnoresPositionAndGains) {
  std::mt19937_64 rng(37);
  RobotState s = random_state(rng);
  const Vec3 ref = feedforward(s, kParams);
  s.x += 10.0;
  s.y -= 3.0;
  EXPECT_EQ(feedforward(s, kParams), ref);
  EXPECT_EQ(control_torque(s, Gains(1.0, 9.0), kParams).f_ff, ref);
}

TEST(PdTerm, KnownValues) {
  EXPECT_EQ(pd_term(on_target(Rotation::identity()), kGains, kParams), Vec3::Zero());
  const Vec3 got = pd_term(make_state(4, 3, Rotation::identity(), Vec3::Zero()), kGains, kParams);
  EXPECT_LE((got - Vec3(20, -20, 2)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(PdTerm, LinearInEachErrorSignal) {
  std::mt19937_64 rng(38);
  for (int i = 0; i < 100; ++i) {
    const RobotState s = random_state(rng);
    const Vec3 a = pd_term(s, Gains(5.0, 1.0), kParams);
    const Vec3 b = pd_term(s, Gains(5.0, 2.0), kParams);
    const Vec3 damping = -kParams.inertia().solve(velocity_error(s));
    EXPECT_LE((b - a - damping).norm(), 1e-12);
    const Vec3 expected =
        -kParams.inertia().solve(d_psi(s, kGains, kParams) + kGains.kv() * velocity_error(s));
    EXPECT_LE((a - expected).norm(), 1e-12);
  }
}

TEST(ControlTorque, ZeroOnPrincipalSpin) {
  const ControlOutput out = control_torque(on_target(Rotation::identity()), kGains, kParams);
  EXPECT_EQ(out.torque, Vec3::Zero());
}

TEST(ControlTorque, InitialTorqueOfTiltedPreset) {
  const RobotState s = make_state(4, 3, fig2_initial_attitude(), Vec3::Zero());
  const ControlOutput out = control_torque(s, kGains, kParams);
  EXPECT_EQ(out.f_ff, Vec3::Zero());
  // tau = -(d_psi + e_omega) = (6, -7/sqrt(2), 9/sqrt(2)).
  const double r2 = std::sqrt(2.0);
  EXPECT_LE((out.torque - Vec3(6.0, -7.0 / r2, 9.0 / r2)).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_NEAR(out.torque.y(), -4.9497, 1e-4);
  EXPECT_NEAR(out.torque.z(), 6.3640, 1e-4);
}

TEST(ControlTorque, TorqueIsInertiaTimesAccelerations) {
  std::mt19937_64 rng(39);
  for (int i = 0; i < 1000; ++i) {
    const RobotState s = random_state(rng);
    const ControlOutput out = control_torque(s, kGains, kParams);
    EXPECT_LE((out.torque - kParams.inertia().apply(out.f_ff + out.f_pd)).cwiseAbs().maxCoeff(),
              1e-12);
    // Substituting tau into the dynamics gives the closed-loop form.
    const Vec3 closed = dynamics(s, out.torque, kParams);
    const Vec3 expected =
        -kParams.inertia().solve(s.omega.cross(kParams.inertia().apply(s.omega))) + out.f_ff +
        out.f_pd;
    EXPECT_LE((closed - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ControlTorque, TargetSetIsInvariant) {
  std::mt19937_64 rng(40);
  for (int i = 0; i < 1000; ++i) {
    const RobotState s = on_target(Rotation::from_matrix(testing::random_rotation(rng)));
    const Vec3 w_dot = dynamics(s, control_torque(s, kGains, kParams).torque, kParams);
    EXPECT_LE(w_dot.cwiseAbs().maxCoeff(), 1e-12);
    const KinematicRate k = kinematics(s, kParams);
    EXPECT_LE(std::abs(k.x_dot), 1e-12);
    EXPECT_LE(std::abs(k.y_dot), 1e-12);
    // r3 does not move: d/dt (R^T e3) = -hat(w) R^T e3.
    EXPECT_LE((k.attitude_dot.transpose() * Vec3::UnitZ()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

}  // namespace
}  // namespace spherebot
