#pragma once

#include <Eigen/Dense>

namespace spherebot {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Tolerance on ||R^T R - I||_F and |det R - 1| accepted when a matrix is
/// promoted to a Rotation.
inline constexpr double kRotationTolerance = 1e-9;

/// Tolerance on ||M + M^T||_F accepted by vee().
inline constexpr double kSkewTolerance = 1e-9;

/// Below this angle exp_so3 switches to series coefficients.
inline constexpr double kSmallAngle = 1e-6;

/// An element of SO(3), stored as a 3x3 matrix.
///
/// Instances built from arbitrary matrices are validated. Group operations
/// (products, transposes, exponentials) produce rotations without
/// re-validating; numerical drift accumulated that way is removed with
/// project_so3().
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  /// Throws std::invalid_argument if `m` violates the orthogonality or
  /// determinant tolerance.
  static Rotation from_matrix(const Mat3& m);

  static Rotation identity() { return Rotation(); }

  /// Right-handed rotation by `angle` radians about `axis` (normalized here).
  static Rotation about_axis(const Vec3& axis, double angle);

  const Mat3& matrix() const { return m_; }

  /// Row i of R, returned as a column vector (R^T e_i).
  Vec3 row(int i) const { return m_.row(i).transpose(); }

  Rotation transpose() const { return Rotation(m_.transpose(), Unchecked{}); }
  Rotation inverse() const { return transpose(); }

  Rotation operator*(const Rotation& other) const {
    return Rotation(m_ * other.m_, Unchecked{});
  }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

  /// ||R^T R - I||_F.
  double orthogonality_error() const;

  bool operator==(const Rotation& other) const { return m_ == other.m_; }

 private:
  struct Unchecked {};
  Rotation(const Mat3& m, Unchecked) : m_(m) {}

  friend Rotation exp_so3(const Vec3& v);
  friend Rotation project_so3(const Mat3& m);

  Mat3 m_;
};

/// Diagonal principal inertia diag(J1, J2, J3); every entry strictly positive.
class Inertia {
 public:
  /// Throws std::invalid_argument on a non-positive or non-finite moment.
  explicit Inertia(const Vec3& principal_moments);
  Inertia(double j1, double j2, double j3) : Inertia(Vec3(j1, j2, j3)) {}

  const Vec3& moments() const { return moments_; }
  Mat3 matrix() const { return moments_.asDiagonal(); }

  /// J v
  Vec3 apply(const Vec3& v) const { return moments_.cwiseProduct(v); }
  /// J^{-1} v
  Vec3 solve(const Vec3& v) const { return v.cwiseQuotient(moments_); }

 private:
  Vec3 moments_;
};

/// Skew-symmetric matrix with hat(v) w = v x w.
Mat3 hat(const Vec3& v);

/// Inverse of hat(). Throws std::invalid_argument when ||M + M^T||_F
/// exceeds kSkewTolerance.
Vec3 vee(const Mat3& m);

/// Lie bracket on R^3 ~ so(3): the cross product v x w.
inline Vec3 bracket(const Vec3& v, const Vec3& w) { return v.cross(w); }

/// Ad_R(w) = R w, the vector form of R hat(w) R^T.
inline Vec3 adjoint(const Rotation& r, const Vec3& w) { return r.matrix() * w; }

/// <A, B>_Tr = 1/2 Tr(A^T B).
double trace_inner(const Mat3& a, const Mat3& b);

/// exp(hat(v)) by Rodrigues' formula.
Rotation exp_so3(const Vec3& v);

/// Frobenius-nearest rotation to `m` (the orthogonal polar factor).
/// Throws std::invalid_argument if det(m) <= 0 or `m` has non-finite entries.
Rotation project_so3(const Mat3& m);

/// Left-invariant Levi-Civita connection of the metric induced by `inertia`,
/// evaluated on constant body fields:
///   (nabla_v w) = 1/2 (v x w) + 1/2 J^{-1} (v x Jw - Jv x w).
Vec3 connection(const Inertia& inertia, const Vec3& v, const Vec3& w);

/// For R(t) = R0 exp(hat(u(t))) with body velocity w (R' = R hat(w)), returns
/// u' = w + 1/2 [u, w] + 1/12 [u, [u, w]], the inverse differential of exp
/// truncated after the terms a fourth-order Munthe-Kaas step needs.
Vec3 dexp_inv(const Vec3& u, const Vec3& w);

}  // namespace spherebot
