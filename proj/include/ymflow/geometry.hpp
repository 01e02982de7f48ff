#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

namespace ymflow {

/// Periodic models M = R^3; Neumann/Dirichlet model the bounded convex box
/// with absolute resp. relative boundary conditions for the form Laplacian.
enum class BcFlavor : unsigned char { Periodic = 0, Neumann = 1, Dirichlet = 2 };

struct LatticeGeometry {
  std::array<int, 3> n;
  std::array<double, 3> len;
  BcFlavor flavor;

  LatticeGeometry(std::array<int, 3> n_, std::array<double, 3> len_, BcFlavor f)
      : n(n_), len(len_), flavor(f) {
    for (int m = 0; m < 3; ++m) {
      if (n[m] < 4) throw std::invalid_argument("LatticeGeometry: N >= 4 required");
      if (!(len[m] > 0)) throw std::invalid_argument("LatticeGeometry: L > 0 required");
    }
  }

  std::size_t sites() const {
    return static_cast<std::size_t>(n[0]) * n[1] * n[2];
  }
  double cell_volume() const {
    return len[0] * len[1] * len[2] / static_cast<double>(sites());
  }
  double volume() const { return len[0] * len[1] * len[2]; }

  /// Grid coordinate along one axis: midpoints for the box flavors (matching
  /// the DCT-II/DST-II sample points), uniform including 0 for periodic.
  double coord(int axis, int j) const {
    double h = len[axis] / n[axis];
    return flavor == BcFlavor::Periodic ? j * h : (j + 0.5) * h;
  }

  std::size_t index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * n[1] + i2) * n[2] + i3;
  }

  bool operator==(const LatticeGeometry& o) const {
    return n == o.n && len == o.len && flavor == o.flavor;
  }
};

/// Per-axis spectral basis tag of one p-form component.
enum class ParityTag : unsigned char { Cos = 0, Sin = 1, Fourier = 2 };

struct ParitySig {
  std::array<ParityTag, 3> tag;
  bool operator==(const ParitySig& o) const { return tag == o.tag; }
};

inline int component_count(int degree) {
  static const int c[4] = {1, 3, 3, 1};
  if (degree < 0 || degree > 3) throw std::invalid_argument("form degree out of range");
  return c[degree];
}

/// Index set of component `comp` of a degree-p form, as a bitmask over axes.
/// Degree-2 components are ordered dx1^dx2, dx1^dx3, dx2^dx3.
inline unsigned comp_axes_mask(int degree, int comp) {
  static const unsigned m0[1] = {0u};
  static const unsigned m1[3] = {1u, 2u, 4u};
  static const unsigned m2[3] = {3u, 5u, 6u};
  static const unsigned m3[1] = {7u};
  switch (degree) {
    case 0: return m0[comp];
    case 1: return m1[comp];
    case 2: return m2[comp];
    case 3: return m3[comp];
    default: throw std::invalid_argument("form degree out of range");
  }
}

/// Mandated parity table: absolute (Neumann) conditions put sin along axes in
/// the index set, cos elsewhere; relative (Dirichlet) conditions the reverse.
/// This is what makes d map the p-form basis into the (p+1)-form basis.
inline ParitySig parity_for(BcFlavor flavor, int degree, int comp) {
  ParitySig s{};
  unsigned mask = comp_axes_mask(degree, comp);
  for (int m = 0; m < 3; ++m) {
    bool in_set = (mask >> m) & 1u;
    switch (flavor) {
      case BcFlavor::Periodic: s.tag[m] = ParityTag::Fourier; break;
      case BcFlavor::Neumann: s.tag[m] = in_set ? ParityTag::Sin : ParityTag::Cos; break;
      case BcFlavor::Dirichlet: s.tag[m] = in_set ? ParityTag::Cos : ParityTag::Sin; break;
    }
  }
  return s;
}

}  // namespace ymflow
