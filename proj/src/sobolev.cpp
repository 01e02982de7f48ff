#include "ymflow/sobolev.hpp"

#include <cmath>

#include "ymflow/calculus.hpp"
#include "ymflow/lie.hpp"
#include "ymflow/rng.hpp"

namespace ymflow {

FormField random_band_limited(const Workspace& ws, GroupKind kind, int degree,
                              int max_mode, double amplitude, unsigned seed) {
  const auto& g = ws.geom();
  const auto& tr = *ws.tr;
  GaussianRng rng(seed);
  SpectralForm s(ws, kind, degree);
  auto in_band = [&](int axis, int k) {
    if (g.flavor == BcFlavor::Periodic) {
      int freq = (k <= g.n[axis] / 2) ? k : k - g.n[axis];
      return std::abs(freq) <= max_mode;
    }
    return k <= max_mode;
  };
  for (int c = 0; c < s.components(); ++c)
    for (int kc = 0; kc < s.kdim(); ++kc) {
      cvec& x = s.data(c, kc);
      for (int k1 = 0; k1 < g.n[0]; ++k1)
        for (int k2 = 0; k2 < g.n[1]; ++k2)
          for (int k3 = 0; k3 < g.n[2]; ++k3) {
            std::size_t i = g.index(k1, k2, k3);
            if (!(in_band(0, k1) && in_band(1, k2) && in_band(2, k3))) continue;
            x[i] = {rng.gaussian(), 0.0};
          }
      tr.apply_mask(x, s.parity(c));
    }
  // Periodic coefficients must be Hermitian for a real grid field; the
  // cheapest route is a grid round trip of the real part.
  FormField f = to_grid(s);
  if (g.flavor == BcFlavor::Periodic) {
    SpectralForm s2 = to_spectral(f);
    f = to_grid(s2);
  }
  double n = l2_norm(f);
  if (n > 0) f *= amplitude / n;
  return f;
}

namespace {

double rayleigh_sweep(const Workspace& ws, int degree, double lp, double hnorm_a,
                      unsigned seed, int trials) {
  // max over trial fields of |u|_lp / |u|_{H_a}; probes random band-limited
  // fields of several bandwidths, heat-smoothed point bumps and low modes.
  const auto& g = ws.geom();
  double best = 0.0;
  auto ratio = [&](const FormField& u) {
    double num = lp_norm(u, lp);
    double den = sobolev_norm(u, hnorm_a);
    if (den > 1e-300) best = std::max(best, num / den);
  };
  int nmax = std::min({g.n[0], g.n[1], g.n[2]});
  for (int t = 0; t < trials; ++t) {
    int band = 1 + static_cast<int>((seed + 7 * t) % static_cast<unsigned>(nmax - 1));
    ratio(random_band_limited(ws, GroupKind::U1, degree, band, 1.0, seed + 131 * t));
  }
  // heat-smoothed point bumps (near-extremal for the Sobolev embedding)
  for (double tau : {0.5, 0.1, 0.02, 0.004}) {
    FormField bump(ws, GroupKind::U1, degree);
    std::size_t center = g.index(g.n[0] / 2, g.n[1] / 2, g.n[2] / 2);
    for (int c = 0; c < bump.components(); ++c) bump.data(c, 0)[center] = 1.0;
    double l0 = g.len[0] * g.len[0] + g.len[1] * g.len[1] + g.len[2] * g.len[2];
    ratio(heat_semigroup(bump, tau * l0 / 100.0));
  }
  for (int band = 1; band <= 3; ++band)
    ratio(random_band_limited(ws, GroupKind::U1, degree, band, 1.0, seed + 999 + band));
  return best;
}

}  // namespace

SobolevConstants measure_sobolev_constants(const Workspace& ws, GroupKind kind,
                                           unsigned seed) {
  SobolevConstants sc;
  sc.c = commutator_bound(kind);
  double k6_0 = rayleigh_sweep(ws, 0, 6.0, 1.0, seed, 48);
  double k6_1 = rayleigh_sweep(ws, 1, 6.0, 1.0, seed + 1, 48);
  double k6_2 = rayleigh_sweep(ws, 2, 6.0, 1.0, seed + 2, 48);
  sc.kappa6 = 1.05 * std::max(k6_0, k6_1);
  sc.kappa = 1.05 * std::max({k6_0, k6_1, k6_2});
  double k3 = 0.0;
  for (int deg = 0; deg <= 2; ++deg)
    k3 = std::max(k3, rayleigh_sweep(ws, deg, 3.0, 0.5, seed + 3 + deg, 48));
  sc.kappa3 = 1.05 * k3;
  return sc;
}

}  // namespace ymflow
