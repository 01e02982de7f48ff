#include "ymflow/lie.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ymflow/rng.hpp"

namespace ymflow {

namespace {
constexpr cplx I{0.0, 1.0};

void check_lie_invariants(GroupKind kind, const Eigen::MatrixXcd& m) {
  int n = matrix_dim(kind);
  if (m.rows() != n || m.cols() != n)
    throw std::invalid_argument("LieElement: dimension mismatch");
  double anti = (m + m.adjoint()).cwiseAbs().maxCoeff();
  if (anti > 1e-12) throw std::invalid_argument("LieElement: not anti-Hermitian");
  if (kind == GroupKind::SU2 && std::abs(m.trace()) > 1e-12)
    throw std::invalid_argument("LieElement: trace not zero");
}

void check_group_invariants(GroupKind kind, const Eigen::MatrixXcd& m) {
  int n = matrix_dim(kind);
  if (m.rows() != n || m.cols() != n)
    throw std::invalid_argument("GroupElement: dimension mismatch");
  Eigen::MatrixXcd gg = m.adjoint() * m;
  double uni = (gg - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (uni > 1e-10) throw std::invalid_argument("GroupElement: not unitary");
  if (kind == GroupKind::SU2 && std::abs(m.determinant() - 1.0) > 1e-10)
    throw std::invalid_argument("GroupElement: det != 1");
}
}  // namespace

Eigen::MatrixXcd algebra_basis_matrix(GroupKind kind, int j) {
  if (kind == GroupKind::U1) {
    if (j != 0) throw std::invalid_argument("u(1) basis index");
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = I / std::sqrt(2.0);
    return m;
  }
  Eigen::MatrixXcd m(2, 2);
  switch (j) {
    case 0: m << 0, -0.5 * I, -0.5 * I, 0; break;           // -(i/2) sigma_1
    case 1: m << 0, -0.5, 0.5, 0; break;                    // -(i/2) sigma_2
    case 2: m << -0.5 * I, 0, 0, 0.5 * I; break;            // -(i/2) sigma_3
    default: throw std::invalid_argument("su(2) basis index");
  }
  return m;
}

LieElement::LieElement(GroupKind kind, Eigen::MatrixXcd m)
    : kind_(kind), m_(std::move(m)) {
  check_lie_invariants(kind_, m_);
}

LieElement LieElement::from_coords(GroupKind kind, const double* c) {
  int d = algebra_dim(kind);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(matrix_dim(kind), matrix_dim(kind));
  for (int j = 0; j < d; ++j) m += c[j] * algebra_basis_matrix(kind, j);
  return LieElement(kind, m);
}

LieElement LieElement::zero(GroupKind kind) {
  return LieElement(kind, Eigen::MatrixXcd::Zero(matrix_dim(kind), matrix_dim(kind)));
}

std::array<double, 3> LieElement::coords() const {
  std::array<double, 3> c{0, 0, 0};
  for (int j = 0; j < algebra_dim(kind_); ++j) {
    Eigen::MatrixXcd b = algebra_basis_matrix(kind_, j);
    c[j] = -2.0 * (m_ * b).trace().real();  // <X, e_j>
  }
  return c;
}

LieElement LieElement::bracket(const LieElement& other) const {
  if (kind_ != other.kind_ || m_.rows() != other.m_.rows())
    throw std::invalid_argument("bracket: dimension mismatch");
  return LieElement(kind_, m_ * other.m_ - other.m_ * m_);
}

double LieElement::inner(const LieElement& other) const {
  return -2.0 * (m_ * other.m_).trace().real();
}

GroupElement::GroupElement(GroupKind kind, Eigen::MatrixXcd m)
    : kind_(kind), m_(std::move(m)) {
  check_group_invariants(kind_, m_);
}

GroupElement GroupElement::identity(GroupKind kind) {
  int n = matrix_dim(kind);
  return GroupElement(kind, Eigen::MatrixXcd::Identity(n, n));
}

GroupElement GroupElement::from_kelem(GroupKind kind, const KElem& q) {
  if (kind == GroupKind::U1) {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = cplx(q.w, q.x);
    return GroupElement(kind, m);
  }
  Eigen::MatrixXcd m(2, 2);
  m << cplx(q.w, -q.z), cplx(-q.y, -q.x), cplx(q.y, -q.x), cplx(q.w, q.z);
  return GroupElement(kind, m);
}

KElem GroupElement::kelem() const {
  if (kind_ == GroupKind::U1) return {m_(0, 0).real(), m_(0, 0).imag(), 0, 0};
  return {0.5 * (m_(0, 0) + m_(1, 1)).real(), -0.5 * (m_(0, 1) + m_(1, 0)).imag(),
          0.5 * (m_(1, 0) - m_(0, 1)).real(), 0.5 * (m_(1, 1) - m_(0, 0)).imag()};
}

GroupElement GroupElement::operator*(const GroupElement& other) const {
  return GroupElement(kind_, m_ * other.m_);
}

GroupElement GroupElement::inverse() const {
  return GroupElement(kind_, m_.adjoint());
}

LieElement GroupElement::adjoint(const LieElement& x) const {
  return LieElement(kind_, m_ * x.matrix() * m_.adjoint());
}

GroupElement exp_k(const LieElement& x) {
  auto c = x.coords();
  return GroupElement::from_kelem(x.kind(), exp_coords(x.kind(), c.data()));
}

double commutator_bound(GroupKind kind) {
  int d = algebra_dim(kind);
  if (d == 1) return 0.0;
  auto ad_norm = [&](const Eigen::VectorXd& x) {
    Eigen::MatrixXd ad(d, d);
    for (int j = 0; j < d; ++j) {
      double ej[3] = {0, 0, 0};
      ej[j] = 1.0;
      double col[3];
      double xv[3] = {x[0], x[1], x[2]};
      bracket_coords(kind, xv, ej, col);
      for (int i = 0; i < d; ++i) ad(i, j) = col[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ad);
    return svd.singularValues()(0);
  };
  double best = 0.0;
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
    e[j] = 1.0;
    best = std::max(best, ad_norm(e));
  }
  GaussianRng rng(7);
  for (int trial = 0; trial < 512; ++trial) {
    Eigen::VectorXd x(d);
    for (int i = 0; i < d; ++i) x[i] = rng.gaussian();
    if (x.norm() < 1e-12) continue;
    x /= x.norm();
    best = std::max(best, ad_norm(x));
  }
  return best;
}

}  // namespace ymflow
