#include "spherebot/so3.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spherebot {

Rotation Rotation::from_matrix(const Mat3& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("rotation matrix has non-finite entries");
  }
  const double orth = (m.transpose() * m - Mat3::Identity()).norm();
  const double det = m.determinant();
  if (orth > kRotationTolerance || std::abs(det - 1.0) > kRotationTolerance) {
    throw std::invalid_argument(
        "matrix is not in SO(3): ||R^T R - I||_F = " + std::to_string(orth) +
        ", det = " + std::to_string(det));
  }
  return Rotation(m, Unchecked{});
}

Rotation Rotation::about_axis(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0) || !std::isfinite(n) || !std::isfinite(angle)) {
    throw std::invalid_argument("rotation axis must be finite and nonzero");
  }
  return exp_so3(axis / n * angle);
}

double Rotation::orthogonality_error() const {
  return (m_.transpose() * m_ - Mat3::Identity()).norm();
}

Inertia::Inertia(const Vec3& principal_moments) : moments_(principal_moments) {
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(moments_[i]) || moments_[i] <= 0.0) {
      throw std::invalid_argument("principal moments of inertia must be positive");
    }
  }
}

Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) {
  if ((m + m.transpose()).norm() > kSkewTolerance) {
    throw std::invalid_argument("vee: matrix is not skew-symmetric");
  }
  return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

double trace_inner(const Mat3& a, const Mat3& b) {
  return 0.5 * (a.transpose() * b).trace();
}

Rotation exp_so3(const Vec3& v) {
  const double theta2 = v.squaredNorm();
  const double theta = std::sqrt(theta2);
  double a;  // sin(theta) / theta
  double b;  // (1 - cos(theta)) / theta^2
  if (theta < kSmallAngle) {
    a = 1.0 - theta2 / 6.0;
    b = 0.5 - theta2 / 24.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  const Mat3 k = hat(v);
  return Rotation(Mat3::Identity() + a * k + b * (k * k), Rotation::Unchecked{});
}

Rotation project_so3(const Mat3& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("project_so3: non-finite matrix");
  }
  if (m.determinant() <= 0.0) {
    throw std::invalid_argument(
        "project_so3: det <= 0, matrix is a reflection or singular");
  }
  // Newton iteration for the orthogonal polar factor.
  Mat3 r = m;
  for (int iter = 0; iter < 100; ++iter) {
    const Mat3 next = 0.5 * (r + r.inverse().transpose());
    const double change = (next - r).norm();
    r = next;
    if (change <= 1e-14) {
      break;
    }
  }
  return Rotation(r, Rotation::Unchecked{});
}

Vec3 connection(const Inertia& inertia, const Vec3& v, const Vec3& w) {
  const Vec3 jv = inertia.apply(v);
  const Vec3 jw = inertia.apply(w);
  return 0.5 * v.cross(w) + 0.5 * inertia.solve(v.cross(jw) - jv.cross(w));
}

Vec3 dexp_inv(const Vec3& u, const Vec3& w) {
  const Vec3 uw = u.cross(w);
  return w + 0.5 * uw + (1.0 / 12.0) * u.cross(uw);
}

}  // namespace spherebot
