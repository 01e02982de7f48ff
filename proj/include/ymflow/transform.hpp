#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "ymflow/geometry.hpp"

namespace ymflow {

using cvec = std::vector<std::complex<double>>;
using rvec = std::vector<double>;

/// Orthonormal transform along one axis. Modes are indexed 0..N-1 for every
/// tag; sin has a structurally empty k = 0 slot and drops the dead top mode,
/// the even-N Fourier basis drops the Nyquist mode. Within the retained band
/// the transform pair is exactly orthogonal, so Parseval holds to roundoff.
struct AxisBasis {
  int n = 0;
  double length = 0;
  ParityTag tag = ParityTag::Cos;
  cvec fwd;                       // (mode k, point j) row-major, n x n
  cvec inv;                       // (point j, mode k) row-major, n x n
  std::vector<double> lambda;     // eigenvalue of -d^2/dx^2 per mode
  std::vector<double> lambda_full;  // as above with the true Nyquist eigenvalue
  cvec deriv;                     // d/dx factor per mode (tag flips cos<->sin)
  std::vector<char> valid;        // structural-zero mask per mode

  static AxisBasis make(int n, double length, ParityTag tag);
};

/// Spectral machinery for one geometry: per-axis bases, eigenvalue tables and
/// the scalar transforms used by every field operation.
class Transformer {
 public:
  explicit Transformer(const LatticeGeometry& g);

  const LatticeGeometry& geometry() const { return geom_; }

  /// grid -> coefficients; includes the sqrt(cell volume) factor so that the
  /// midpoint-quadrature L2 norm of the grid data equals the l2 norm of the
  /// coefficients.
  cvec forward(const rvec& grid, const ParitySig& sig) const;
  rvec inverse(const cvec& spec, const ParitySig& sig) const;

  /// Spectral partial derivative: elementwise factor, parity tag flip on one
  /// axis. Returns the coefficients of the derivative in the flipped parity.
  cvec derivative(const cvec& spec, const ParitySig& sig, int axis) const;
  static ParitySig flip(const ParitySig& sig, int axis);

  /// Laplace eigenvalue of mode (k1,k2,k3); independent of the parity tags.
  double lambda(int k1, int k2, int k3) const {
    return axis_lambda_[0][k1] + axis_lambda_[1][k2] + axis_lambda_[2][k3];
  }
  const std::vector<double>& lambda_flat() const { return lambda_flat_; }

  /// Per-mode d(0-form) direction factor along `axis` (vertical projection).
  std::complex<double> grad_factor(int axis, int k) const;

  void apply_mask(cvec& spec, const ParitySig& sig) const;

  /// Scalar heat semigroup on the complete grid-function space (no band
  /// masks; the Fourier Nyquist mode keeps its true eigenvalue). Used by the
  /// pointwise Neumann-domination averages, where exactness at t = 0 matters
  /// more than membership in the derivative complex.
  rvec scalar_heat_full(const rvec& f, double t) const;

  /// Zero every mode with k_m above the dealias cutoff of axis m.
  void apply_dealias(cvec& spec) const;
  int dealias_cutoff(int axis) const { return cutoff_[axis]; }

  std::size_t size() const { return geom_.sites(); }

 private:
  const AxisBasis& basis(int axis, ParityTag tag) const;
  void apply_axis(cvec& data, int axis, const cvec& mat) const;

  LatticeGeometry geom_;
  std::vector<AxisBasis> bases_;  // per axis: cos+sin or fourier
  std::array<std::vector<double>, 3> axis_lambda_;
  std::vector<double> lambda_flat_;
  std::array<int, 3> cutoff_;
};

/// Shared per-geometry context (transformer + product filter policy).
struct Workspace {
  std::shared_ptr<const Transformer> tr;
  bool dealias = true;

  explicit Workspace(const LatticeGeometry& g, bool dealias_on = true)
      : tr(std::make_shared<Transformer>(g)), dealias(dealias_on) {}
  const LatticeGeometry& geom() const { return tr->geometry(); }
};

}  // namespace ymflow
