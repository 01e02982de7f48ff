#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>

namespace ymflow {

using cplx = std::complex<double>;

/// Structure group of the connection. SU2 is the default; U1 is the abelian
/// degenerate case in which every bracket vanishes, used as an exact oracle.
enum class GroupKind : unsigned char { SU2 = 1, U1 = 2 };

inline int algebra_dim(GroupKind k) { return k == GroupKind::SU2 ? 3 : 1; }
inline int matrix_dim(GroupKind k) { return k == GroupKind::SU2 ? 2 : 1; }

/// Coordinates are taken w.r.t. an orthonormal basis of the Lie algebra under
/// <X,Y> = -2 tr(XY): for su(2) the basis is e_j = -(i/2) sigma_j, for u(1)
/// it is i/sqrt(2). In these coordinates the su(2) bracket is the cross
/// product and the inner product is Euclidean.
inline void bracket_coords(GroupKind k, const double* a, const double* b,
                           double* out) {
  if (k == GroupKind::SU2) {
    out[0] = a[1] * b[2] - a[2] * b[1];
    out[1] = a[2] * b[0] - a[0] * b[2];
    out[2] = a[0] * b[1] - a[1] * b[0];
  } else {
    out[0] = 0.0;
  }
}

/// Element of K stored in closed form: a unit quaternion (w,x,y,z) for SU(2),
/// mapped to w*I - i(u . sigma); for U(1) only (w,x) are used, g = w + i x.
struct KElem {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  double norm2() const { return w * w + x * x + y * y + z * z; }
  KElem conj() const { return {w, -x, -y, -z}; }

  /// Unit-norm repair; for the quaternion representation this is exactly the
  /// polar projection back onto K.
  void renormalize() {
    double n = std::sqrt(norm2());
    w /= n;
    x /= n;
    y /= n;
    z /= n;
  }
};

inline KElem kmul(GroupKind k, const KElem& a, const KElem& b) {
  if (k == GroupKind::U1) return {a.w * b.w - a.x * b.x, a.w * b.x + a.x * b.w, 0, 0};
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y + a.y * b.w + a.z * b.x - a.x * b.z,
          a.w * b.z + a.z * b.w + a.x * b.y - a.y * b.x};
}

/// exp of the algebra element with the given coordinates, exactly in K.
inline KElem exp_coords(GroupKind k, const double* c) {
  if (k == GroupKind::U1) {
    // coordinate c corresponds to the matrix i*c/sqrt(2)
    double th = c[0] / std::sqrt(2.0);
    return {std::cos(th), std::sin(th), 0, 0};
  }
  double th = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  if (th < 1e-30) return {1.0, 0.5 * c[0], 0.5 * c[1], 0.5 * c[2]};
  double s = std::sin(0.5 * th) / th;
  return {std::cos(0.5 * th), s * c[0], s * c[1], s * c[2]};
}

/// Ad(g) acting on algebra coordinates (an SO(dim k) rotation).
inline void ad_action(GroupKind k, const KElem& g, const double* v, double* out) {
  if (k == GroupKind::U1) {
    out[0] = v[0];
    return;
  }
  double w = g.w, ux = g.x, uy = g.y, uz = g.z;
  double uu = ux * ux + uy * uy + uz * uz;
  double dot = ux * v[0] + uy * v[1] + uz * v[2];
  double cx = uy * v[2] - uz * v[1];
  double cy = uz * v[0] - ux * v[2];
  double cz = ux * v[1] - uy * v[0];
  double a = w * w - uu;
  out[0] = a * v[0] + 2.0 * (dot * ux + w * cx);
  out[1] = a * v[1] + 2.0 * (dot * uy + w * cy);
  out[2] = a * v[2] + 2.0 * (dot * uz + w * cz);
}

/// |Ad(g) - 1| as an operator on the algebra (pointwise multiplier norm).
inline double ad_minus_one_norm(GroupKind k, const KElem& g) {
  if (k == GroupKind::U1) return 0.0;
  // rotation by angle theta: |R - 1| = 2 |sin(theta/2)|, sin(theta/2) = |u|
  double su = std::sqrt(g.x * g.x + g.y * g.y + g.z * g.z);
  return 2.0 * std::min(1.0, su);
}

/// Frobenius distance^2 between matrix representatives.
inline double kdist2(GroupKind k, const KElem& a, const KElem& b) {
  double dw = a.w - b.w, dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  double q = dw * dw + dx * dx + dy * dy + dz * dz;
  return (k == GroupKind::SU2) ? 2.0 * q : q;
}

// ---------------------------------------------------------------------------
// Matrix-form types with invariant checks (not used on hot paths).

/// Anti-Hermitian (traceless for SU(2)) matrix in the defining representation.
class LieElement {
 public:
  LieElement(GroupKind kind, Eigen::MatrixXcd m);
  static LieElement from_coords(GroupKind kind, const double* c);
  static LieElement zero(GroupKind kind);

  const Eigen::MatrixXcd& matrix() const { return m_; }
  GroupKind kind() const { return kind_; }
  std::array<double, 3> coords() const;

  LieElement bracket(const LieElement& other) const;
  double inner(const LieElement& other) const;  // <X,Y> = -2 tr(XY)
  double norm() const { return std::sqrt(inner(*this)); }

 private:
  GroupKind kind_;
  Eigen::MatrixXcd m_;
};

/// Element of K in matrix form (unitary, det 1 for SU(2)).
class GroupElement {
 public:
  GroupElement(GroupKind kind, Eigen::MatrixXcd m);
  static GroupElement identity(GroupKind kind);
  static GroupElement from_kelem(GroupKind kind, const KElem& q);

  const Eigen::MatrixXcd& matrix() const { return m_; }
  GroupKind kind() const { return kind_; }
  KElem kelem() const;

  GroupElement operator*(const GroupElement& other) const;
  GroupElement inverse() const;
  LieElement adjoint(const LieElement& x) const;  // Ad(g) x

 private:
  GroupKind kind_;
  Eigen::MatrixXcd m_;
};

/// Matrix exponential into K (closed form for su(2) / u(1)).
GroupElement exp_k(const LieElement& x);

/// c = sup { |ad x|_{k->k} : |x|_k <= 1 }, computed from the singular values
/// of ad over an orthonormal basis plus a sweep of random unit directions.
double commutator_bound(GroupKind kind);

/// su(2) basis matrices e_j = -(i/2) sigma_j (and i/sqrt(2) for u(1)).
Eigen::MatrixXcd algebra_basis_matrix(GroupKind kind, int j);

}  // namespace ymflow
