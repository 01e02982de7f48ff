#include "ymflow/calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace ymflow {

namespace {

int popcount_below(unsigned mask, int axis) {
  unsigned below = mask & ((1u << axis) - 1u);
  int c = 0;
  while (below) {
    c += below & 1u;
    below >>= 1u;
  }
  return c;
}

/// Sign of inserting dx^axis into the sorted wedge indexed by `mask` (axis
/// must be a member of mask).
double insert_sign(int axis, unsigned mask) {
  return popcount_below(mask, axis) % 2 == 0 ? 1.0 : -1.0;
}

int comp_of_mask(int degree, unsigned mask) {
  for (int c = 0; c < component_count(degree); ++c)
    if (comp_axes_mask(degree, c) == mask) return c;
  throw std::logic_error("comp_of_mask: bad mask");
}

/// Sign of sorting the concatenation (P, Q) of two disjoint sorted subsets.
double shuffle_sign(unsigned pmask, unsigned qmask) {
  int inv = 0;
  for (int a = 0; a < 3; ++a)
    if ((qmask >> a) & 1u)
      for (int b = a + 1; b < 3; ++b)
        if ((pmask >> b) & 1u) ++inv;
  return inv % 2 == 0 ? 1.0 : -1.0;
}

bool product_mirror(const FormField& u, const FormField& v) {
  if (u.geom().flavor != BcFlavor::Dirichlet) return false;
  return !(u.mirror() ^ v.mirror());
}

void dealias_roundtrip(FormField& f) {
  if (!f.ws().dealias) return;
  const auto& tr = *f.ws().tr;
  for (int c = 0; c < f.components(); ++c)
    for (int kc = 0; kc < f.kdim(); ++kc) {
      cvec spec = tr.forward(f.data(c, kc), f.parity(c));
      tr.apply_dealias(spec);
      f.data(c, kc) = tr.inverse(spec, f.parity(c));
    }
}

}  // namespace

void accumulate_site_bracket(GroupKind kind, double s, const rvec* a, const rvec* b,
                             rvec* out) {
  if (kind == GroupKind::U1) return;  // abelian: all brackets vanish
  const std::size_t n = a[0].size();
  for (std::size_t i = 0; i < n; ++i) {
    out[0][i] += s * (a[1][i] * b[2][i] - a[2][i] * b[1][i]);
    out[1][i] += s * (a[2][i] * b[0][i] - a[0][i] * b[2][i]);
    out[2][i] += s * (a[0][i] * b[1][i] - a[1][i] * b[0][i]);
  }
}

double l2_inner(const FormField& a, const FormField& b) {
  if (a.degree() != b.degree() || !(a.geom() == b.geom()))
    throw std::invalid_argument("l2_inner: incompatible fields");
  double s = 0.0;
  for (int c = 0; c < a.components(); ++c)
    for (int kc = 0; kc < a.kdim(); ++kc) {
      const rvec& x = a.data(c, kc);
      const rvec& y = b.data(c, kc);
      for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    }
  return s * a.geom().cell_volume();
}

double l2_norm(const FormField& f) { return std::sqrt(l2_inner(f, f)); }

double linf_norm(const FormField& f) {
  rvec n = f.pointwise_norm();
  double m = 0.0;
  for (double v : n) m = std::max(m, v);
  return m;
}

double lp_norm(const FormField& f, double p) {
  if (!std::isfinite(p)) return linf_norm(f);
  rvec n = f.pointwise_norm();
  double s = 0.0;
  for (double v : n) s += std::pow(v, p);
  return std::pow(s * f.geom().cell_volume(), 1.0 / p);
}

double sobolev_norm(const SpectralForm& s, double a) {
  const auto& lam = s.ws().tr->lambda_flat();
  double acc = 0.0;
  for (int c = 0; c < s.components(); ++c)
    for (int kc = 0; kc < s.kdim(); ++kc) {
      const cvec& x = s.data(c, kc);
      for (std::size_t i = 0; i < x.size(); ++i)
        acc += std::pow(1.0 + lam[i], a) * std::norm(x[i]);
    }
  return std::sqrt(acc);
}

double sobolev_norm(const FormField& f, double a) {
  return sobolev_norm(to_spectral(f), a);
}

SpectralForm d(const SpectralForm& s) {
  if (s.degree() > 2) throw std::invalid_argument("d: degree out of range");
  const auto& tr = *s.ws().tr;
  SpectralForm out(s.ws(), s.kind(), s.degree() + 1);
  out.set_mirror(s.mirror());
  for (int tc = 0; tc < out.components(); ++tc) {
    unsigned tmask = comp_axes_mask(out.degree(), tc);
    for (int m = 0; m < 3; ++m) {
      if (!((tmask >> m) & 1u)) continue;
      unsigned smask = tmask & ~(1u << m);
      int sc = comp_of_mask(s.degree(), smask);
      double sign = insert_sign(m, tmask);
      for (int kc = 0; kc < s.kdim(); ++kc) {
        cvec dkc = tr.derivative(s.data(sc, kc), s.parity(sc), m);
        cvec& dst = out.data(tc, kc);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += sign * dkc[i];
      }
    }
  }
  return out;
}

SpectralForm d_star(const SpectralForm& s) {
  if (s.degree() < 1) throw std::invalid_argument("d_star: degree out of range");
  const auto& tr = *s.ws().tr;
  SpectralForm out(s.ws(), s.kind(), s.degree() - 1);
  out.set_mirror(s.mirror());
  for (int tc = 0; tc < out.components(); ++tc) {
    unsigned tmask = comp_axes_mask(out.degree(), tc);
    for (int m = 0; m < 3; ++m) {
      if ((tmask >> m) & 1u) continue;
      unsigned smask = tmask | (1u << m);
      int sc = comp_of_mask(s.degree(), smask);
      double sign = -insert_sign(m, smask);
      for (int kc = 0; kc < s.kdim(); ++kc) {
        cvec dkc = tr.derivative(s.data(sc, kc), s.parity(sc), m);
        cvec& dst = out.data(tc, kc);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += sign * dkc[i];
      }
    }
  }
  return out;
}

FormField d(const FormField& f) { return to_grid(d(to_spectral(f))); }
FormField d_star(const FormField& f) { return to_grid(d_star(to_spectral(f))); }

SpectralForm heat_semigroup(const SpectralForm& s, double t) {
  if (t < 0) throw std::domain_error("heat_semigroup: t < 0");
  const auto& lam = s.ws().tr->lambda_flat();
  SpectralForm out = s;
  for (int c = 0; c < s.components(); ++c)
    for (int kc = 0; kc < s.kdim(); ++kc) {
      cvec& x = out.data(c, kc);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] *= std::exp(-t * lam[i]);
    }
  return out;
}

FormField heat_semigroup(const FormField& f, double t) {
  return to_grid(heat_semigroup(to_spectral(f), t));
}

SpectralForm fractional_power(const SpectralForm& s, double a) {
  if (a < -2.0 || a > 2.0)
    throw std::domain_error("fractional_power: exponent out of range [-2,2]");
  const auto& lam = s.ws().tr->lambda_flat();
  SpectralForm out = s;
  for (int c = 0; c < s.components(); ++c)
    for (int kc = 0; kc < s.kdim(); ++kc) {
      cvec& x = out.data(c, kc);
      for (std::size_t i = 0; i < x.size(); ++i)
        x[i] *= std::pow(1.0 + lam[i], 0.5 * a);
    }
  return out;
}

FormField fractional_power(const FormField& f, double a) {
  return to_grid(fractional_power(to_spectral(f), a));
}

SpectralForm minus_laplacian(const SpectralForm& s) {
  const auto& lam = s.ws().tr->lambda_flat();
  SpectralForm out = s;
  for (int c = 0; c < s.components(); ++c)
    for (int kc = 0; kc < s.kdim(); ++kc) {
      cvec& x = out.data(c, kc);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] *= lam[i];
    }
  return out;
}

SpectralForm vertical_projection(const SpectralForm& s) {
  if (s.degree() != 1)
    throw std::invalid_argument("vertical_projection: 1-forms only");
  const auto& tr = *s.ws().tr;
  const auto& g = s.ws().geom();
  SpectralForm out(s.ws(), s.kind(), 1);
  out.set_mirror(s.mirror());
  // Mirror-class fields use the flipped 0-form basis, whose gradient factors
  // are the conjugate tag pair; pick them from the flipped parity directly.
  std::array<cvec, 3> fac;
  for (int m = 0; m < 3; ++m) {
    fac[m].resize(g.n[m]);
    for (int k = 0; k < g.n[m]; ++k) fac[m][k] = tr.grad_factor(m, k);
    if (s.mirror() && g.flavor != BcFlavor::Periodic) {
      // flipped 0-form: cos <-> sin, derivative factor sign flips with tag
      for (int k = 0; k < g.n[m]; ++k) fac[m][k] = -fac[m][k];
    }
  }
  for (int kc = 0; kc < s.kdim(); ++kc) {
    for (int k1 = 0; k1 < g.n[0]; ++k1)
      for (int k2 = 0; k2 < g.n[1]; ++k2)
        for (int k3 = 0; k3 < g.n[2]; ++k3) {
          std::size_t i = g.index(k1, k2, k3);
          std::complex<double> v[3] = {fac[0][k1], fac[1][k2], fac[2][k3]};
          double vv = std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
          if (vv <= 0.0) continue;
          std::complex<double> dot{0.0, 0.0};
          for (int j = 0; j < 3; ++j) dot += std::conj(v[j]) * s.data(j, kc)[i];
          dot /= vv;
          for (int j = 0; j < 3; ++j) out.data(j, kc)[i] = v[j] * dot;
        }
  }
  for (int c = 0; c < 3; ++c)
    for (int kc = 0; kc < s.kdim(); ++kc) tr.apply_mask(out.data(c, kc), out.parity(c));
  return out;
}

FormField vertical_projection(const FormField& f) {
  return to_grid(vertical_projection(to_spectral(f)));
}

FormField wedge_bracket(const FormField& u, const FormField& v) {
  if (u.kind() != v.kind() || !(u.geom() == v.geom()))
    throw std::invalid_argument("wedge_bracket: incompatible fields");
  int r = u.degree(), p = v.degree();
  if (r + p > 3) throw std::invalid_argument("wedge_bracket: degree overflow");
  FormField out(u.ws(), u.kind(), r + p);
  out.set_mirror(product_mirror(u, v));
  for (int tc = 0; tc < out.components(); ++tc) {
    unsigned tmask = comp_axes_mask(r + p, tc);
    // iterate subsets P of tmask with |P| = r
    for (unsigned pmask = 0; pmask <= 7u; ++pmask) {
      if ((pmask & tmask) != pmask) continue;
      if (__builtin_popcount(pmask) != r) continue;
      unsigned qmask = tmask & ~pmask;
      double sign = shuffle_sign(pmask, qmask);
      int uc = comp_of_mask(r, pmask);
      int vc = comp_of_mask(p, qmask);
      accumulate_site_bracket(u.kind(), sign, &u.data(uc, 0), &v.data(vc, 0),
                              &out.data(tc, 0));
    }
  }
  dealias_roundtrip(out);
  return out;
}

FormField interior_bracket(const FormField& u, const FormField& v) {
  if (u.kind() != v.kind() || !(u.geom() == v.geom()))
    throw std::invalid_argument("interior_bracket: incompatible fields");
  int r = u.degree(), p = v.degree();
  if (p - r < 0) throw std::invalid_argument("interior_bracket: degree underflow");
  FormField out(u.ws(), u.kind(), p - r);
  out.set_mirror(product_mirror(u, v));
  for (int tc = 0; tc < out.components(); ++tc) {
    unsigned smask = comp_axes_mask(p - r, tc);
    for (unsigned pmask = 0; pmask <= 7u; ++pmask) {
      if (pmask & smask) continue;
      if (__builtin_popcount(pmask) != r) continue;
      unsigned vmask = pmask | smask;
      if (__builtin_popcount(vmask) != p) continue;
      double sign = -shuffle_sign(pmask, smask);
      int uc = comp_of_mask(r, pmask);
      int vc = comp_of_mask(p, vmask);
      accumulate_site_bracket(u.kind(), sign, &u.data(uc, 0), &v.data(vc, 0),
                              &out.data(tc, 0));
    }
  }
  dealias_roundtrip(out);
  return out;
}

FormField bochner_product(const FormField& B, const FormField& w) {
  if (B.degree() != 2) throw std::invalid_argument("bochner_product: B must be a 2-form");
  FormField out(w.ws(), w.kind(), w.degree());
  out.set_mirror(product_mirror(B, w));
  if (w.degree() == 0 || w.degree() == 3) return out;  // no form indices to curve

  // signed lookup of B_{ab} (a != b) from the sorted storage
  auto bfield = [&](int a, int b, double& sign) -> const rvec* {
    unsigned mask = (1u << a) | (1u << b);
    sign = a < b ? 1.0 : -1.0;
    return &B.data(comp_of_mask(2, mask), 0);
  };

  if (w.degree() == 1) {
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        if (k == j) continue;
        double sb;
        const rvec* bjk = bfield(j, k, sb);
        accumulate_site_bracket(w.kind(), sb, bjk, &w.data(k, 0), &out.data(j, 0));
      }
  } else {  // degree 2
    for (int tc = 0; tc < 3; ++tc) {
      unsigned tmask = comp_axes_mask(2, tc);
      int j = -1, k = -1;
      for (int a = 0; a < 3; ++a)
        if ((tmask >> a) & 1u) (j < 0 ? j : k) = a;
      for (int i = 0; i < 3; ++i) {
        // + [B_ik, w_ij] for i not in {j}, w_ij antisymmetric storage
        if (i != k && i != j) {
          double s1, s2;
          const rvec* bik = bfield(i, k, s1);
          unsigned wm = (1u << std::min(i, j)) | (1u << std::max(i, j));
          double ws = i < j ? 1.0 : -1.0;
          const rvec* wij = &w.data(comp_of_mask(2, wm), 0);
          accumulate_site_bracket(w.kind(), s1 * ws, bik, wij, &out.data(tc, 0));
          const rvec* bij = bfield(i, j, s2);
          unsigned wm2 = (1u << std::min(i, k)) | (1u << std::max(i, k));
          double ws2 = i < k ? 1.0 : -1.0;
          const rvec* wik = &w.data(comp_of_mask(2, wm2), 0);
          accumulate_site_bracket(w.kind(), -s2 * ws2, bij, wik, &out.data(tc, 0));
        }
      }
    }
  }
  dealias_roundtrip(out);
  return out;
}

FormField grid_sum(const FormField& a, const FormField& b) {
  if (a.kind() != b.kind() || a.degree() != b.degree() || !(a.geom() == b.geom()))
    throw std::invalid_argument("grid_sum: incompatible fields");
  FormField out = a;
  out.set_mirror(false);
  for (int c = 0; c < a.components(); ++c)
    for (int kc = 0; kc < a.kdim(); ++kc) {
      rvec& dst = out.data(c, kc);
      const rvec& src = b.data(c, kc);
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    }
  return out;
}

FormField rough_laplacian(const FormField& C, const FormField& w) {
  const auto& tr = *w.ws().tr;
  FormField out(w.ws(), w.kind(), w.degree());
  out.set_mirror(false);
  // Work per component with explicit parity tracking through grad_j^C.
  for (int c = 0; c < w.components(); ++c) {
    for (int j = 0; j < 3; ++j) {
      // first application: dj = spectral d_j w_c (parity flips on axis j)
      ParitySig sig0 = w.parity(c);
      ParitySig sig1 = Transformer::flip(sig0, j);
      std::vector<rvec> dj(w.kdim());
      for (int kc = 0; kc < w.kdim(); ++kc)
        dj[kc] = tr.inverse(tr.derivative(tr.forward(w.data(c, kc), sig0), sig0, j), sig1);
      // bracket part [C_j, w_c] (grid)
      std::vector<rvec> br(w.kdim(), rvec(w.geom().sites(), 0.0));
      accumulate_site_bracket(w.kind(), 1.0, &C.data(j, 0), &w.data(c, 0), br.data());
      // second application to each piece, tracking its own parity
      // piece A: dj (parity sig1), piece B: br (parity mul(C_j, sig0))
      auto apply_grad_and_add = [&](const std::vector<rvec>& piece, const ParitySig& sig) {
        ParitySig sigd = Transformer::flip(sig, j);
        for (int kc = 0; kc < w.kdim(); ++kc) {
          rvec dd = tr.inverse(tr.derivative(tr.forward(piece[kc], sig), sig, j), sigd);
          rvec& dst = out.data(c, kc);
          for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += dd[i];
        }
        std::vector<rvec> br2(w.kdim(), rvec(w.geom().sites(), 0.0));
        accumulate_site_bracket(w.kind(), 1.0, &C.data(j, 0), piece.data(), br2.data());
        for (int kc = 0; kc < w.kdim(); ++kc) {
          rvec& dst = out.data(c, kc);
          for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += br2[kc][i];
        }
      };
      // parity of [C_j, w_c]: per-axis product of C_j and w_c tags
      ParitySig sigCj = C.parity(j);
      ParitySig sigbr;
      for (int m = 0; m < 3; ++m) {
        if (sigCj.tag[m] == ParityTag::Fourier)
          sigbr.tag[m] = ParityTag::Fourier;
        else if (sigCj.tag[m] == sig0.tag[m])
          sigbr.tag[m] = ParityTag::Cos;
        else
          sigbr.tag[m] = ParityTag::Sin;
      }
      apply_grad_and_add(dj, sig1);
      apply_grad_and_add(br, sigbr);
    }
  }
  return out;
}

FormField covariant_d(const FormField& C, const FormField& w) {
  return grid_sum(d(w), wedge_bracket(C, w));
}

FormField covariant_d_star(const FormField& C, const FormField& w) {
  return grid_sum(d_star(w), interior_bracket(C, w));
}

CurvaturePieces curvature_pieces(const FormField& C) {
  if (C.degree() != 1) throw std::invalid_argument("curvature: 1-forms only");
  FormField quad = wedge_bracket(C, C);
  quad *= 0.5;
  return CurvaturePieces{d(C), std::move(quad)};
}

FormField curvature(const FormField& C) { return curvature_pieces(C).total(); }

FormField ym_drift(const FormField& C, const CurvaturePieces& B) {
  // d_C^* B = d^*(dC) + (1/2) d^*[C^C] + [C -| B]; derivatives and products
  // act on each curvature piece in its own parity class.
  FormField out = grid_sum(d_star(B.lin), d_star(B.quad));
  out = grid_sum(out, interior_bracket(C, B.lin));
  return grid_sum(out, interior_bracket(C, B.quad));
}

FormField nonlinearity_x(const FormField& C) {
  // X(C) = -[C -| B] - (1/2) d^*[C ^ C] - [C, d^* C]: the signs are the ones
  // forced by the splitting identity (the first differs from a literal
  // reading of the recorded formula; the identity is the ground truth).
  CurvaturePieces B = curvature_pieces(C);
  FormField x = interior_bracket(C, B.lin);           // [C -| B] piecewise
  x = grid_sum(x, interior_bracket(C, B.quad));
  x *= -1.0;
  FormField cc = wedge_bracket(C, C);                 // [C ^ C]
  FormField dstar_cc = d_star(cc);
  FormField phi = d_star(C);                          // d^* C
  FormField cphi = wedge_bracket(C, phi);             // [C, d^* C]
  FormField out = grid_sum(x, dstar_cc * (-0.5));
  return grid_sum(out, cphi * (-1.0));
}

std::vector<FormField> covariant_d_pieces(const FormField& C,
                                          const std::vector<FormField>& pieces) {
  std::vector<FormField> out;
  for (const auto& p : pieces) {
    out.push_back(d(p));
    out.push_back(wedge_bracket(C, p));
  }
  return out;
}

std::vector<FormField> covariant_d_star_pieces(const FormField& C,
                                               const std::vector<FormField>& pieces) {
  std::vector<FormField> out;
  for (const auto& p : pieces) {
    out.push_back(d_star(p));
    out.push_back(interior_bracket(C, p));
  }
  return out;
}

}  // namespace ymflow
