#include "ymflow/transform.hpp"

#include <cmath>
#include <stdexcept>

#include "ymflow/parallel.hpp"

namespace ymflow {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

AxisBasis AxisBasis::make(int n, double length, ParityTag tag) {
  AxisBasis b;
  b.n = n;
  b.length = length;
  b.tag = tag;
  b.fwd.assign(static_cast<std::size_t>(n) * n, {0.0, 0.0});
  b.inv.assign(static_cast<std::size_t>(n) * n, {0.0, 0.0});
  b.lambda.assign(n, 0.0);
  b.lambda_full.assign(n, 0.0);
  b.deriv.assign(n, {0.0, 0.0});
  b.valid.assign(n, 1);

  auto at = [n](cvec& m, int r, int c) -> std::complex<double>& {
    return m[static_cast<std::size_t>(r) * n + c];
  };

  if (tag == ParityTag::Fourier) {
    double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        double ph = -2.0 * kPi * k * j / n;
        at(b.fwd, k, j) = std::complex<double>(std::cos(ph), std::sin(ph)) * s;
        at(b.inv, j, k) = std::complex<double>(std::cos(ph), -std::sin(ph)) * s;
      }
      int freq = (k <= n / 2) ? k : k - n;
      bool nyquist = (n % 2 == 0) && (k == n / 2);
      double w_full = 2.0 * kPi * freq / length;
      b.lambda_full[k] = w_full * w_full;
      if (nyquist) {
        b.valid[k] = 0;
        freq = 0;
      }
      double w = 2.0 * kPi * freq / length;
      b.lambda[k] = w * w;
      b.deriv[k] = {0.0, w};
    }
    return b;
  }

  // box midpoint grid x_j = (j + 1/2) L / n
  for (int k = 0; k < n; ++k) {
    double w = kPi * k / length;
    b.lambda[k] = w * w;
    b.lambda_full[k] = w * w;
    if (tag == ParityTag::Cos) {
      double norm = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
      for (int j = 0; j < n; ++j) {
        double v = norm * std::cos(kPi * k * (j + 0.5) / n);
        at(b.fwd, k, j) = v;
        at(b.inv, j, k) = v;
      }
      b.deriv[k] = -w;  // cos_k -> sin_k
    } else {
      if (k == 0) {
        b.valid[k] = 0;  // no sin mode 0; top (dead) mode dropped as well
      } else {
        double norm = std::sqrt(2.0 / n);
        for (int j = 0; j < n; ++j) {
          double v = norm * std::sin(kPi * k * (j + 0.5) / n);
          at(b.fwd, k, j) = v;
          at(b.inv, j, k) = v;
        }
      }
      b.deriv[k] = w;  // sin_k -> cos_k
    }
  }
  return b;
}

Transformer::Transformer(const LatticeGeometry& g) : geom_(g) {
  for (int m = 0; m < 3; ++m) {
    if (g.flavor == BcFlavor::Periodic) {
      bases_.push_back(AxisBasis::make(g.n[m], g.len[m], ParityTag::Fourier));
      cutoff_[m] = (g.n[m] - 1) / 3;  // |freq| <= cutoff alias-safe for products
    } else {
      bases_.push_back(AxisBasis::make(g.n[m], g.len[m], ParityTag::Cos));
      bases_.push_back(AxisBasis::make(g.n[m], g.len[m], ParityTag::Sin));
      cutoff_[m] = (2 * g.n[m] - 1) / 3;
    }
    axis_lambda_[m] = basis(m, g.flavor == BcFlavor::Periodic ? ParityTag::Fourier
                                                              : ParityTag::Cos)
                          .lambda;
  }
  lambda_flat_.resize(geom_.sites());
  for (int k1 = 0; k1 < geom_.n[0]; ++k1)
    for (int k2 = 0; k2 < geom_.n[1]; ++k2)
      for (int k3 = 0; k3 < geom_.n[2]; ++k3)
        lambda_flat_[geom_.index(k1, k2, k3)] = lambda(k1, k2, k3);
}

const AxisBasis& Transformer::basis(int axis, ParityTag tag) const {
  if (geom_.flavor == BcFlavor::Periodic) {
    if (tag != ParityTag::Fourier)
      throw std::invalid_argument("parity tag does not match periodic geometry");
    return bases_[axis];
  }
  if (tag == ParityTag::Fourier)
    throw std::invalid_argument("fourier tag on box geometry");
  return bases_[2 * axis + (tag == ParityTag::Cos ? 0 : 1)];
}

void Transformer::apply_axis(cvec& data, int axis, const cvec& mat) const {
  const int n0 = geom_.n[0], n1 = geom_.n[1], n2 = geom_.n[2];
  const int nm = geom_.n[axis];
  std::size_t stride;
  std::size_t pencils;
  if (axis == 0) {
    stride = static_cast<std::size_t>(n1) * n2;
    pencils = stride;
  } else if (axis == 1) {
    stride = n2;
    pencils = static_cast<std::size_t>(n0) * n2;
  } else {
    stride = 1;
    pencils = static_cast<std::size_t>(n0) * n1;
  }

  parallel_for(pencils, [&](std::size_t p) {
    std::size_t base;
    if (axis == 0) {
      base = p;
    } else if (axis == 1) {
      std::size_t i0 = p / n2, i2 = p % n2;
      base = i0 * (static_cast<std::size_t>(n1) * n2) + i2;
    } else {
      base = p * n2;
    }
    std::vector<std::complex<double>> in(nm), out(nm);
    for (int j = 0; j < nm; ++j) in[j] = data[base + j * stride];
    for (int k = 0; k < nm; ++k) {
      std::complex<double> acc{0.0, 0.0};
      const std::complex<double>* row = &mat[static_cast<std::size_t>(k) * nm];
      for (int j = 0; j < nm; ++j) acc += row[j] * in[j];
      out[k] = acc;
    }
    for (int k = 0; k < nm; ++k) data[base + k * stride] = out[k];
  });
}

cvec Transformer::forward(const rvec& grid, const ParitySig& sig) const {
  if (grid.size() != geom_.sites())
    throw std::invalid_argument("forward: grid size mismatch");
  cvec data(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) data[i] = grid[i];
  for (int m = 0; m < 3; ++m) apply_axis(data, m, basis(m, sig.tag[m]).fwd);
  double s = std::sqrt(geom_.cell_volume());
  for (auto& v : data) v *= s;
  apply_mask(data, sig);
  return data;
}

rvec Transformer::inverse(const cvec& spec, const ParitySig& sig) const {
  if (spec.size() != geom_.sites())
    throw std::invalid_argument("inverse: coefficient size mismatch");
  cvec data = spec;
  apply_mask(data, sig);
  double s = 1.0 / std::sqrt(geom_.cell_volume());
  for (auto& v : data) v *= s;
  for (int m = 0; m < 3; ++m) apply_axis(data, m, basis(m, sig.tag[m]).inv);
  rvec out(spec.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = data[i].real();
  return out;
}

ParitySig Transformer::flip(const ParitySig& sig, int axis) {
  ParitySig out = sig;
  if (sig.tag[axis] == ParityTag::Cos)
    out.tag[axis] = ParityTag::Sin;
  else if (sig.tag[axis] == ParityTag::Sin)
    out.tag[axis] = ParityTag::Cos;
  return out;
}

cvec Transformer::derivative(const cvec& spec, const ParitySig& sig, int axis) const {
  const AxisBasis& b = basis(axis, sig.tag[axis]);
  cvec out(spec.size());
  const int n1 = geom_.n[1], n2 = geom_.n[2];
  for (int k1 = 0; k1 < geom_.n[0]; ++k1)
    for (int k2 = 0; k2 < n1; ++k2) {
      std::size_t base = (static_cast<std::size_t>(k1) * n1 + k2) * n2;
      int k = (axis == 0) ? k1 : (axis == 1 ? k2 : 0);
      for (int k3 = 0; k3 < n2; ++k3) {
        if (axis == 2) k = k3;
        out[base + k3] = spec[base + k3] * b.deriv[k];
      }
    }
  ParitySig osig = flip(sig, axis);
  apply_mask(out, osig);
  return out;
}

std::complex<double> Transformer::grad_factor(int axis, int k) const {
  ParityTag t0 = geom_.flavor == BcFlavor::Periodic ? ParityTag::Fourier
                 : geom_.flavor == BcFlavor::Neumann ? ParityTag::Cos
                                                     : ParityTag::Sin;
  return basis(axis, t0).deriv[k];
}

void Transformer::apply_mask(cvec& spec, const ParitySig& sig) const {
  const std::vector<char>* vm[3];
  bool any = false;
  for (int m = 0; m < 3; ++m) {
    vm[m] = &basis(m, sig.tag[m]).valid;
    for (char c : *vm[m])
      if (!c) any = true;
  }
  if (!any) return;
  const int n1 = geom_.n[1], n2 = geom_.n[2];
  for (int k1 = 0; k1 < geom_.n[0]; ++k1) {
    bool ok1 = (*vm[0])[k1];
    for (int k2 = 0; k2 < n1; ++k2) {
      bool ok2 = ok1 && (*vm[1])[k2];
      std::size_t base = (static_cast<std::size_t>(k1) * n1 + k2) * n2;
      for (int k3 = 0; k3 < n2; ++k3)
        if (!ok2 || !(*vm[2])[k3]) spec[base + k3] = 0.0;
    }
  }
}

rvec Transformer::scalar_heat_full(const rvec& f, double t) const {
  if (f.size() != geom_.sites())
    throw std::invalid_argument("scalar_heat_full: size mismatch");
  ParityTag tag = geom_.flavor == BcFlavor::Periodic ? ParityTag::Fourier
                                                     : ParityTag::Cos;
  cvec data(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) data[i] = f[i];
  for (int m = 0; m < 3; ++m) apply_axis(data, m, basis(m, tag).fwd);
  const auto& l0 = basis(0, tag).lambda_full;
  const auto& l1 = basis(1, tag).lambda_full;
  const auto& l2 = basis(2, tag).lambda_full;
  const int n1 = geom_.n[1], n2 = geom_.n[2];
  for (int k1 = 0; k1 < geom_.n[0]; ++k1)
    for (int k2 = 0; k2 < n1; ++k2) {
      std::size_t base = (static_cast<std::size_t>(k1) * n1 + k2) * n2;
      for (int k3 = 0; k3 < n2; ++k3)
        data[base + k3] *= std::exp(-t * (l0[k1] + l1[k2] + l2[k3]));
    }
  for (int m = 0; m < 3; ++m) apply_axis(data, m, basis(m, tag).inv);
  rvec out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = data[i].real();
  return out;
}

void Transformer::apply_dealias(cvec& spec) const {
  const int n1 = geom_.n[1], n2 = geom_.n[2];
  auto keep = [&](int axis, int k) {
    if (geom_.flavor == BcFlavor::Periodic) {
      int freq = (k <= geom_.n[axis] / 2) ? k : k - geom_.n[axis];
      return std::abs(freq) <= cutoff_[axis];
    }
    return k <= cutoff_[axis];
  };
  for (int k1 = 0; k1 < geom_.n[0]; ++k1) {
    bool ok1 = keep(0, k1);
    for (int k2 = 0; k2 < n1; ++k2) {
      bool ok2 = ok1 && keep(1, k2);
      std::size_t base = (static_cast<std::size_t>(k1) * n1 + k2) * n2;
      for (int k3 = 0; k3 < n2; ++k3)
        if (!ok2 || !keep(2, k3)) spec[base + k3] = 0.0;
    }
  }
}

}  // namespace ymflow
