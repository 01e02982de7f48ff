#include "ymflow/gauge.hpp"

#include <cmath>

#include "ymflow/parallel.hpp"

namespace ymflow {

namespace {

/// Entry basis for differentiating group entries: the quaternion scalar part
/// is even in every axis, the vector parts inherit the flavor's 0-form
/// parity pattern (even under absolute, odd under relative conditions).
ParitySig entry_parity(BcFlavor flavor, bool vector_part) {
  ParitySig s{};
  for (int m = 0; m < 3; ++m) {
    if (flavor == BcFlavor::Periodic)
      s.tag[m] = ParityTag::Fourier;
    else if (flavor == BcFlavor::Neumann || !vector_part)
      s.tag[m] = ParityTag::Cos;
    else
      s.tag[m] = ParityTag::Sin;
  }
  return s;
}

}  // namespace

GaugeField GaugeField::times(const GaugeField& o) const {
  if (kind_ != o.kind_ || !(geom() == o.geom()))
    throw std::invalid_argument("GaugeField::times: incompatible fields");
  GaugeField out = *this;
  for (std::size_t i = 0; i < site_.size(); ++i)
    out.site_[i] = kmul(kind_, site_[i], o.site_[i]);
  return out;
}

GaugeField GaugeField::inverse() const {
  GaugeField out = *this;
  for (auto& q : out.site_) q = q.conj();
  return out;
}

void GaugeField::renormalize() {
  for (auto& q : site_) q.renormalize();
}

void GaugeField::left_multiply_exp(const FormField& omega) {
  if (omega.degree() != 0)
    throw std::invalid_argument("left_multiply_exp: 0-form generator required");
  const int kd = algebra_dim(kind_);
  parallel_for(site_.size(), [&](std::size_t i) {
    double c[3] = {0, 0, 0};
    for (int kc = 0; kc < kd; ++kc) c[kc] = omega.data(0, kc)[i];
    site_[i] = kmul(kind_, exp_coords(kind_, c), site_[i]);
    site_[i].renormalize();
  });
}

FormField GaugeField::log_differential(double* defect) const {
  const auto& tr = *ws_.tr;
  const auto& g = geom();
  const int ncomp = (kind_ == GroupKind::SU2) ? 4 : 2;
  // entry grids: w,x,y,z (su2) or w,x (u1)
  std::vector<rvec> entry(ncomp, rvec(site_.size()));
  for (std::size_t i = 0; i < site_.size(); ++i) {
    entry[0][i] = site_[i].w;
    entry[1][i] = site_[i].x;
    if (ncomp == 4) {
      entry[2][i] = site_[i].y;
      entry[3][i] = site_[i].z;
    }
  }
  std::vector<cvec> spec(ncomp);
  std::vector<ParitySig> sig(ncomp);
  for (int e = 0; e < ncomp; ++e) {
    sig[e] = entry_parity(g.flavor, e > 0);
    spec[e] = tr.forward(entry[e], sig[e]);
  }
  FormField h(ws_, kind_, 1);
  double defect2 = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<rvec> de(ncomp);
    for (int e = 0; e < ncomp; ++e)
      de[e] = tr.inverse(tr.derivative(spec[e], sig[e], axis),
                         Transformer::flip(sig[e], axis));
    for (std::size_t i = 0; i < site_.size(); ++i) {
      KElem dq{de[0][i], de[1][i], ncomp == 4 ? de[2][i] : 0.0,
               ncomp == 4 ? de[3][i] : 0.0};
      KElem m = kmul(kind_, site_[i].conj(), dq);
      if (kind_ == GroupKind::SU2) {
        h.data(axis, 0)[i] = 2.0 * m.x;
        h.data(axis, 1)[i] = 2.0 * m.y;
        h.data(axis, 2)[i] = 2.0 * m.z;
      } else {
        h.data(axis, 0)[i] = std::sqrt(2.0) * m.x;
      }
      defect2 += m.w * m.w;
    }
  }
  if (defect) *defect = std::sqrt(defect2 * g.cell_volume());
  return h;
}

double GaugeField::dist_lp(const GaugeField& o, double p) const {
  rvec n(site_.size());
  for (std::size_t i = 0; i < site_.size(); ++i)
    n[i] = std::sqrt(kdist2(kind_, site_[i], o.site_[i]));
  if (!std::isfinite(p)) {
    double m = 0;
    for (double v : n) m = std::max(m, v);
    return m;
  }
  double s = 0;
  for (double v : n) s += std::pow(v, p);
  return std::pow(s * geom().cell_volume(), 1.0 / p);
}

double GaugeField::dist_to_identity_lp(double p) const {
  GaugeField id(ws_, kind_);
  return dist_lp(id, p);
}

GaugeField GaugeField::from_generator(const FormField& alpha) {
  if (alpha.degree() != 0)
    throw std::invalid_argument("from_generator: 0-form generator required");
  GaugeField g(alpha.ws(), alpha.kind());
  g.left_multiply_exp(alpha);
  return g;
}

FormField adjoint_transform(const FormField& f, const GaugeField& g, bool inverse) {
  if (f.kind() != g.kind() || !(f.geom() == g.geom()))
    throw std::invalid_argument("adjoint_transform: incompatible fields");
  FormField out = f;
  if (f.kind() == GroupKind::U1) return out;
  const std::size_t n = g.sites();
  for (int c = 0; c < f.components(); ++c) {
    parallel_for(n, [&](std::size_t i) {
      KElem q = inverse ? g.at(i).conj() : g.at(i);
      double v[3] = {f.data(c, 0)[i], f.data(c, 1)[i], f.data(c, 2)[i]};
      double w[3];
      ad_action(f.kind(), q, v, w);
      out.data(c, 0)[i] = w[0];
      out.data(c, 1)[i] = w[1];
      out.data(c, 2)[i] = w[2];
    });
  }
  return out;
}

FormField gauge_transform(const FormField& c, const GaugeField& g) {
  if (c.degree() != 1) throw std::invalid_argument("gauge_transform: 1-forms only");
  FormField out = adjoint_transform(c, g, true);
  FormField h = g.log_differential();
  out += h;
  return out;
}

namespace {

/// phi(t_i) snapshots plus cubic Lagrange interpolation between them.
struct PhiInterpolator {
  const Trajectory& traj;
  std::vector<FormField> phis;

  explicit PhiInterpolator(const Trajectory& t) : traj(t) {
    phis.reserve(t.nodes());
    for (int i = 0; i < t.nodes(); ++i) phis.push_back(t.phi_at(i));
  }

  FormField at(double s, int hint_interval) const {
    const auto& tn = traj.mesh.nodes;
    int n = hint_interval;  // s in [t_n, t_{n+1}]
    int lo = std::max(0, n - 1);
    int hi = std::min<int>(static_cast<int>(tn.size()) - 1, n + 2);
    while (hi - lo < 3 && (lo > 0 || hi < static_cast<int>(tn.size()) - 1)) {
      if (lo > 0) --lo;
      if (hi - lo < 3 && hi < static_cast<int>(tn.size()) - 1) ++hi;
    }
    FormField out(phis[0].ws(), phis[0].kind(), 0);
    for (int j = lo; j <= hi; ++j) {
      double w = 1.0;
      for (int m = lo; m <= hi; ++m)
        if (m != j) w *= (s - tn[m]) / (tn[j] - tn[m]);
      out.axpy(w, phis[j]);
    }
    return out;
  }
};

void magnus_gl2_step(GaugeField& g, const PhiInterpolator& interp, double a,
                     double b, int interval) {
  const double h = b - a;
  const double root3 = std::sqrt(3.0);
  double c1 = a + h * (0.5 - root3 / 6.0);
  double c2 = a + h * (0.5 + root3 / 6.0);
  FormField p1 = interp.at(c1, interval);
  FormField p2 = interp.at(c2, interval);
  // Omega = (h/2)(p1 + p2) + (sqrt(3) h^2 / 12) [p2, p1]
  FormField omega = p1 + p2;
  omega *= 0.5 * h;
  if (g.kind() == GroupKind::SU2) {
    FormField br(p1.ws(), p1.kind(), 0);
    accumulate_site_bracket(g.kind(), 1.0, &p2.data(0, 0), &p1.data(0, 0),
                            &br.data(0, 0));
    omega.axpy(root3 * h * h / 12.0, br);
  }
  g.left_multiply_exp(omega);
}

}  // namespace

std::vector<GaugeField> integrate_gauge_family(const Trajectory& traj, int i_eps,
                                               int substeps) {
  if (i_eps < 1 || i_eps >= traj.nodes())
    throw std::domain_error("integrate_gauge_family: bad start node");
  PhiInterpolator interp(traj);
  std::vector<GaugeField> family;
  family.reserve(traj.nodes());
  GaugeField g = GaugeField::identity(traj.ws, traj.kind);
  for (int i = 0; i < traj.nodes(); ++i) {
    if (i > i_eps) {
      double t0 = traj.time(i - 1), t1 = traj.time(i);
      for (int s = 0; s < substeps; ++s)
        magnus_gl2_step(g, interp, t0 + (t1 - t0) * s / substeps,
                        t0 + (t1 - t0) * (s + 1) / substeps, i - 1);
    }
    family.push_back(g);
  }
  return family;
}

GaugeField integrate_gauge_ode(const Trajectory& traj, int i_eps, int i_t,
                               int substeps) {
  if (i_eps > i_t) throw std::domain_error("integrate_gauge_ode: eps > t");
  auto fam = integrate_gauge_family(traj, i_eps, substeps);
  return fam[i_t];
}

FormField zds_chi(const Trajectory& traj, int node) {
  const FormField& c = traj.snaps[node];
  FormField phi = traj.phi_at(node);
  FormField chat = vertical_projection(c);
  CurvaturePieces b = traj.curv_at(node);
  // pieces of d_C^* B_C + [C, phi], vertical-projected classwise
  std::vector<FormField> pieces;
  pieces.push_back(d_star(b.lin));
  pieces.push_back(d_star(b.quad));
  pieces.push_back(interior_bracket(c, b.lin));
  pieces.push_back(interior_bracket(c, b.quad));
  pieces.push_back(wedge_bracket(c, phi));
  FormField out = wedge_bracket(chat, phi);
  for (const auto& p : pieces) {
    FormField proj = vertical_projection(p);
    proj *= -1.0;
    out = grid_sum(out, proj);
  }
  return out;
}

Reconstruction reconstruct_a(const Trajectory& traj, int tau_idx, int ode_substeps) {
  if (traj.flow != FlowKind::Augmented)
    throw std::invalid_argument("reconstruct_a: augmented trajectory required");
  if (tau_idx < 1 || tau_idx >= traj.nodes() - 1)
    throw std::domain_error("reconstruct_a: tau outside mesh interior");
  const int i_eps = 1;  // smallest resolved node stands in for the eps->0 limit
  auto family = integrate_gauge_family(traj, i_eps, ode_substeps);
  GaugeField g0 = family[tau_idx].inverse();

  Trajectory a_traj(traj.ws), ahat_traj(traj.ws);
  a_traj.kind = ahat_traj.kind = traj.kind;
  a_traj.flow = ahat_traj.flow = FlowKind::Direct;
  a_traj.a_index = ahat_traj.a_index = traj.a_index;
  a_traj.mesh = ahat_traj.mesh = traj.mesh;

  Reconstruction rec{std::move(a_traj), std::move(ahat_traj), std::move(g0), {}, {}, {}};

  for (int i = 0; i < traj.nodes(); ++i) {
    if (i < i_eps) {
      rec.a_traj.snaps.push_back(traj.snaps[i]);
      rec.ahat_traj.snaps.push_back(gauge_transform(traj.snaps[i], rec.g0));
      rec.cov_rel.push_back(0.0);
      rec.cov_site.push_back(0.0);
      continue;
    }
    FormField a = gauge_transform(traj.snaps[i], family[i]);
    GaugeField k = family[i].times(rec.g0);
    FormField ahat = gauge_transform(traj.snaps[i], k);
    // curvature covariance (rec422): B_A against g^{-1} B_C g
    FormField b_c = traj.curv_at(i).total();
    FormField b_a = curvature(a);
    FormField b_cov = adjoint_transform(b_c, family[i], true);
    double bc2 = l2_norm(b_c);
    double ba2 = l2_norm(b_a);
    rec.cov_rel.push_back(bc2 > 0 ? std::abs(ba2 / bc2 - 1.0) : ba2);
    FormField diff = b_a;
    diff -= b_cov;
    double binf = linf_norm(b_c);
    rec.cov_site.push_back(binf > 0 ? linf_norm(diff) / binf : linf_norm(diff));
    rec.a_traj.snaps.push_back(std::move(a));
    rec.ahat_traj.snaps.push_back(std::move(ahat));
  }

  auto& ser_a = rec.a_traj.series;
  auto& ser_h = rec.ahat_traj.series;
  for (int i = 0; i < traj.nodes(); ++i) {
    ser_a["t"].push_back(traj.time(i));
    ser_h["t"].push_back(traj.time(i));
    FormField b_a = curvature(rec.a_traj.snaps[i]);
    FormField b_h = curvature(rec.ahat_traj.snaps[i]);
    ser_a["b_2"].push_back(l2_norm(b_a));
    ser_h["b_2"].push_back(l2_norm(b_h));
    ser_a["b_inf"].push_back(linf_norm(b_a));
    ser_h["b_inf"].push_back(linf_norm(b_h));
    ser_a["h1"].push_back(sobolev_norm(rec.a_traj.snaps[i], 1.0));
    ser_h["h1"].push_back(sobolev_norm(rec.ahat_traj.snaps[i], 1.0));
    ser_a["vel_2"].push_back(l2_norm(rec.a_traj.velocity_at(i)));
    ser_h["vel_2"].push_back(l2_norm(rec.ahat_traj.velocity_at(i)));
  }
  for (int i = 1; i + 1 < traj.nodes(); ++i) {
    if (i < i_eps + 1) {
      rec.str5_resid.push_back(0.0);
      continue;
    }
    double dt = traj.time(i + 1) - traj.time(i - 1);
    FormField dA = rec.ahat_traj.snaps[i + 1];
    dA -= rec.ahat_traj.snaps[i - 1];
    dA *= 1.0 / dt;
    CurvaturePieces b = curvature_pieces(rec.ahat_traj.snaps[i]);
    FormField drift = ym_drift(rec.ahat_traj.snaps[i], b);
    FormField resid = grid_sum(dA, drift);
    rec.str5_resid.push_back(l2_norm(resid));
  }
  return rec;
}

RepCheckReport representation_check(const Trajectory& traj, int i_eps, int i_t,
                                    int substeps) {
  if (i_eps < 1 || i_eps > i_t || i_t >= traj.nodes())
    throw std::domain_error("representation_check: bad node range");
  auto family = integrate_gauge_family(traj, i_eps, substeps);
  RepCheckReport rep;
  FormField lhs = family[i_t].log_differential(&rep.defect);

  FormField chat_eps = vertical_projection(traj.snaps[i_eps]);
  FormField chat_t = vertical_projection(traj.snaps[i_t]);
  FormField rhs = chat_eps;
  FormField adc = adjoint_transform(chat_t, family[i_t], true);
  rhs -= adc;

  // trapezoid of a_eps(s) chi(s) over the mesh nodes
  std::vector<FormField> integrand;
  integrand.reserve(i_t - i_eps + 1);
  for (int i = i_eps; i <= i_t; ++i)
    integrand.push_back(adjoint_transform(zds_chi(traj, i), family[i], true));
  for (int i = i_eps; i < i_t; ++i) {
    double w = 0.5 * (traj.time(i + 1) - traj.time(i));
    rhs.axpy(w, integrand[i - i_eps]);
    rhs.axpy(w, integrand[i - i_eps + 1]);
  }

  FormField diff = lhs;
  diff -= rhs;
  rep.lhs_norm = l2_norm(lhs);
  rep.rel_discrepancy = l2_norm(diff) / std::max(rep.lhs_norm, 1e-300);
  return rep;
}

}  // namespace ymflow
