#include "ymflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "ymflow/calculus.hpp"

namespace ymflow {

double gamma_a_squared(double a) { return std::tgamma(1.0 - a) * std::pow(2.0, a - 1.0); }

double loglog_slope(const std::vector<double>& t, const std::vector<double>& q,
                    std::size_t lo, std::size_t hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = lo; i <= hi && i < t.size(); ++i) {
    if (!(t[i] > 0) || !(q[i] > 0)) continue;
    double x = std::log(t[i]), y = std::log(q[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return 0.0;
  double den = n * sxx - sx * sx;
  return den != 0 ? (n * sxy - sx * sy) / den : 0.0;
}

InequalityLedger build_inequality_ledger(const Trajectory& traj,
                                         const SobolevConstants& sc) {
  InequalityLedger led;
  const auto& t = traj.series.at("t");
  const auto& c6 = traj.series.at("c_6");
  const auto& b2 = traj.series.at("b_2");
  led.t = t;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double c64 = std::pow(c6[i], 4);
    double b24 = std::pow(b2[i], 4);
    led.alpha.push_back(sc.a1() + sc.a2() * c64);
    led.beta.push_back(sc.b1() + sc.b2() * c64 + sc.b3() * b24);
    led.lambda_b.push_back(sc.lambda_of_b(b2[i]));
  }
  led.alpha_cum.assign(t.size(), 0.0);
  led.beta_cum.assign(t.size(), 0.0);
  led.psi.assign(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    double dt = t[i] - t[i - 1];
    led.alpha_cum[i] = led.alpha_cum[i - 1] + 0.5 * dt * (led.alpha[i - 1] + led.alpha[i]);
    led.beta_cum[i] = led.beta_cum[i - 1] + 0.5 * dt * (led.beta[i - 1] + led.beta[i]);
    led.psi[i] = led.psi[i - 1] + dt * (led.lambda_b[i - 1] + led.lambda_b[i]);
  }
  return led;
}

namespace {

double central_diff(const std::vector<double>& t, const std::vector<double>& f,
                    std::size_t i) {
  return (f[i + 1] - f[i - 1]) / (t[i + 1] - t[i - 1]);
}

}  // namespace

EnergyIdentityReport energy_identity_check(const Trajectory& traj) {
  EnergyIdentityReport rep;
  const auto& t = traj.series.at("t");
  const auto& b2 = traj.series.at("b_2");
  const auto& p2 = traj.series.at("phi_2");
  std::vector<double> e(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    e[i] = b2[i] * b2[i];
    if (traj.flow == FlowKind::Augmented) e[i] += p2[i] * p2[i];
  }
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    FormField vel = traj.velocity_at(static_cast<int>(i));
    double v2 = l2_inner(vel, vel);
    double lhs = central_diff(t, e, i) + 2.0 * v2;
    double rhs = 0.0;
    if (traj.flow == FlowKind::Augmented) {
      FormField phi = traj.phi_at(static_cast<int>(i));
      FormField cphi = wedge_bracket(traj.snaps[i], phi);
      rhs = -2.0 * l2_inner(vel, cphi);
    }
    double scale = 2.0 * v2 + std::abs(central_diff(t, e, i)) + std::abs(rhs) + 1e-300;
    rep.t.push_back(t[i]);
    rep.resid.push_back(std::abs(lhs - rhs));
    rep.scale.push_back(scale);
    rep.max_rel = std::max(rep.max_rel, rep.resid.back() / scale);
  }
  return rep;
}

EnergyIdentityReport energy_identity_check2(const Trajectory& traj) {
  EnergyIdentityReport rep;
  const auto& t = traj.series.at("t");
  const auto& v2s = traj.series.at("vel_2");
  std::vector<double> e(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) e[i] = v2s[i] * v2s[i];
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const FormField& c = traj.snaps[i];
    FormField vel = traj.velocity_at(static_cast<int>(i));
    FormField dcv = covariant_d(c, vel);
    FormField dsv = covariant_d_star(c, vel);
    double pos = l2_inner(dcv, dcv) + l2_inner(dsv, dsv);
    double lhs = central_diff(t, e, i) + 2.0 * pos;
    FormField b = traj.curv_at(static_cast<int>(i)).total();
    FormField vv = wedge_bracket(vel, vel);
    FormField icv = interior_bracket(c, vel);
    double rhs = -2.0 * l2_inner(b, vv) + 2.0 * l2_inner(icv, dsv);
    double scale = 2.0 * pos + std::abs(central_diff(t, e, i)) + std::abs(rhs) + 1e-300;
    rep.t.push_back(t[i]);
    rep.resid.push_back(std::abs(lhs - rhs));
    rep.scale.push_back(scale);
    rep.max_rel = std::max(rep.max_rel, rep.resid.back() / scale);
  }
  return rep;
}

SlackReport differential_inequality_check1(const Trajectory& traj,
                                           const InequalityLedger& led) {
  SlackReport rep;
  rep.min_rel = 1e300;
  const auto& t = traj.series.at("t");
  const auto& b2 = traj.series.at("b_2");
  const auto& p2 = traj.series.at("phi_2");
  const auto& v2 = traj.series.at("vel_2");
  std::vector<double> e(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) e[i] = b2[i] * b2[i] + p2[i] * p2[i];
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    double lhs = central_diff(t, e, i) + v2[i] * v2[i];
    double rhs = led.alpha[i] * p2[i] * p2[i];
    double slack = rhs - lhs;
    double scale = std::abs(rhs) + v2[i] * v2[i] + std::abs(central_diff(t, e, i)) + 1e-300;
    if (slack / scale < rep.min_rel) {
      rep.min_rel = slack / scale;
      rep.min_slack = slack;
      rep.scale = scale;
      rep.argmin = static_cast<int>(i);
    }
  }
  return rep;
}

SlackReport differential_inequality_check2(const Trajectory& traj,
                                           const InequalityLedger& led) {
  SlackReport rep;
  rep.min_rel = 1e300;
  const auto& t = traj.series.at("t");
  const auto& v2s = traj.series.at("vel_2");
  std::vector<double> e(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) e[i] = v2s[i] * v2s[i];
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const FormField& c = traj.snaps[i];
    FormField vel = traj.velocity_at(static_cast<int>(i));
    FormField dcv = covariant_d(c, vel);
    FormField dsv = covariant_d_star(c, vel);
    double pos = l2_inner(dcv, dcv) + l2_inner(dsv, dsv);
    double lhs = central_diff(t, e, i) + pos;
    double rhs = led.beta[i] * e[i];
    double slack = rhs - lhs;
    double scale = std::abs(rhs) + pos + std::abs(central_diff(t, e, i)) + 1e-300;
    if (slack / scale < rep.min_rel) {
      rep.min_rel = slack / scale;
      rep.min_slack = slack;
      rep.scale = scale;
      rep.argmin = static_cast<int>(i);
    }
  }
  return rep;
}

double gfs_slack(const FormField& c, const FormField& w, const SobolevConstants& sc) {
  CurvaturePieces b = curvature_pieces(c);
  double lb = sc.lambda_of_b(l2_norm(b.total()));
  FormField dw = covariant_d(c, w);
  double pos = l2_inner(dw, dw);
  if (w.degree() >= 1) {
    FormField dsw = covariant_d_star(c, w);
    pos += l2_inner(dsw, dsw);
  }
  double lhs = std::pow(lp_norm(w, 6.0), 2);
  double rhs = sc.kappa * sc.kappa * (pos + lb * l2_inner(w, w));
  return rhs - lhs;
}

double kato_slack(const FormField& c, const FormField& phi, const SobolevConstants& sc) {
  FormField dphi = covariant_d(c, phi);
  double lhs = std::pow(lp_norm(phi, 6.0), 2);
  double rhs = sc.kappa6 * sc.kappa6 * (l2_inner(dphi, dphi) + l2_inner(phi, phi));
  return rhs - lhs;
}

ActionReport action_functionals(const Trajectory& traj, double a) {
  ActionReport rep;
  const auto& t = traj.series.at("t");
  const auto& b2 = traj.series.at("b_2");
  const auto& h1 = traj.series.at("h1");
  std::vector<double> fb(t.size()), fh(t.size()), fm(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    fb[i] = b2[i] * b2[i];
    fh[i] = h1[i] * h1[i];
    fm[i] = fb[i];
  }
  for (std::size_t m = 0; m < t.size(); ++m) {
    rep.rho_a.push_back((1.0 - a) * singular_weight_integral(t, fb, a, m));
    rep.strong_action.push_back(singular_weight_integral(t, fh, a, m));
  }
  rep.magnetic_action = singular_weight_integral(t, fm, 0.5, t.size() - 1);
  // Richardson estimate: drop every other interior node and recompute
  std::vector<double> t2, f2;
  for (std::size_t i = 0; i < t.size(); i += 2) {
    t2.push_back(t[i]);
    f2.push_back(fb[i]);
  }
  if (t2.back() != t.back()) {
    t2.push_back(t.back());
    f2.push_back(fb.back());
  }
  double coarse = (1.0 - a) * singular_weight_integral(t2, f2, a, t2.size() - 1);
  rep.richardson_error = std::abs(rep.rho_a.back() - coarse) / 3.0;
  rep.q_pairing = 1.0 / (0.5 - a / 3.0);
  return rep;
}

Order1Report order1_bound_check(const Trajectory& traj, const InequalityLedger& led) {
  Order1Report rep;
  const double a = traj.a_index;
  const auto& t = traj.series.at("t");
  const auto& b2 = traj.series.at("b_2");
  const auto& p2 = traj.series.at("phi_2");
  const auto& v2 = traj.series.at("vel_2");
  const std::size_t n = t.size();

  if (traj.flow == FlowKind::Direct) {
    rep.equality = true;
    // t^{1-a}|B|^2 + 2 int s^{1-a}|A'|^2 = rho_a(t)
    std::vector<double> fb(n), fv(n);
    for (std::size_t i = 0; i < n; ++i) {
      fb[i] = b2[i] * b2[i];
      fv[i] = std::pow(t[i], 1.0 - a) * v2[i] * v2[i];
    }
    double worst = 0, scale_at = 1e-300;
    for (std::size_t m = 2; m < n; ++m) {
      double rho = (1.0 - a) * singular_weight_integral(t, fb, a, m);
      double lhs = std::pow(t[m], 1.0 - a) * fb[m] + 2.0 * trapezoid_integral(t, fv, 0, m);
      double scale = std::abs(rho) + std::abs(lhs) + 1e-300;
      double r = std::abs(lhs - rho) / scale;
      if (r > worst) {
        worst = r;
        scale_at = scale;
      }
    }
    rep.worst = worst;
    rep.scale = scale_at;
    return rep;
  }

  // augmented: vs38a slack with exponential alpha weights
  std::vector<double> fv(n), fe(n);
  double worst = 1e300, scale_at = 1e-300;
  for (std::size_t m = 2; m < n; ++m) {
    for (std::size_t i = 0; i <= m; ++i) {
      double w = std::exp(led.alpha_between(static_cast<int>(i), static_cast<int>(m)));
      fv[i] = std::pow(t[i], 1.0 - a) * v2[i] * v2[i] * w;
      fe[i] = (b2[i] * b2[i] + p2[i] * p2[i]) * w;
    }
    double lhs = std::pow(t[m], 1.0 - a) * (b2[m] * b2[m] + p2[m] * p2[m]) +
                 trapezoid_integral(t, fv, 0, m);
    double rhs = (1.0 - a) * singular_weight_integral(t, fe, a, m);
    double scale = std::abs(rhs) + std::abs(lhs) + 1e-300;
    double rel = (rhs - lhs) / scale;
    if (rel < worst) {
      worst = rel;
      scale_at = scale;
    }
  }
  rep.worst = worst;
  rep.scale = scale_at;
  return rep;
}

SlackReport order2_bound_check(const Trajectory& traj, const InequalityLedger& led) {
  SlackReport rep;
  rep.min_rel = 1e300;
  const double a = traj.a_index;
  const auto& t = traj.series.at("t");
  const auto& b2 = traj.series.at("b_2");
  const auto& p2 = traj.series.at("phi_2");
  const auto& v2 = traj.series.at("vel_2");
  const std::size_t n = t.size();

  // positive integrand s^{2-a} e^{beta_s^t} (|d_C^* C'|^2 + |d_C C'|^2)
  std::vector<double> pos(n, 0.0), fe(n);
  for (std::size_t i = 1; i < n; ++i) {
    const FormField& c = traj.snaps[i];
    FormField vel = traj.velocity_at(static_cast<int>(i));
    FormField dcv = covariant_d(c, vel);
    FormField dsv = covariant_d_star(c, vel);
    pos[i] = l2_inner(dcv, dcv) + l2_inner(dsv, dsv);
  }
  for (std::size_t m = 2; m < n; ++m) {
    std::vector<double> fint(n, 0.0);
    for (std::size_t i = 0; i <= m; ++i) {
      double w = std::exp(led.beta_between(static_cast<int>(i), static_cast<int>(m)));
      fint[i] = std::pow(t[i], 2.0 - a) * pos[i] * w;
      fe[i] = b2[i] * b2[i] + p2[i] * p2[i];
    }
    double lhs = std::pow(t[m], 2.0 - a) * v2[m] * v2[m] +
                 trapezoid_integral(t, fint, 0, m);
    double rhs = (2.0 - a) * (1.0 - a) * std::exp(led.beta_cum[m]) *
                 singular_weight_integral(t, fe, a, m);
    double scale = std::abs(rhs) + std::abs(lhs) + 1e-300;
    double rel = (rhs - lhs) / scale;
    if (rel < rep.min_rel) {
      rep.min_rel = rel;
      rep.min_slack = rhs - lhs;
      rep.scale = scale;
      rep.argmin = static_cast<int>(m);
    }
  }
  return rep;
}

rvec scalar_heat(const Workspace& ws, const rvec& f, double t) {
  return ws.tr->scalar_heat_full(f, t);
}

NeumannDomReport neumann_domination_check(const Trajectory& traj, int t_idx,
                                          bool for_phi) {
  NeumannDomReport rep;
  rep.for_phi = for_phi;
  const auto& t = traj.series.at("t");
  const double tm = t[t_idx];
  const std::size_t sites = traj.ws.geom().sites();

  rvec lhs;
  if (for_phi)
    lhs = traj.phi_at(t_idx).pointwise_norm();
  else
    lhs = traj.curv_at(t_idx).total().pointwise_norm();

  // trapezoid over s-nodes of e^{(t-s)Delta_N}(|field(s)| + s |source(s)|)
  rvec acc(sites, 0.0);
  rvec prev;
  double prev_t = 0.0;
  for (int i = 0; i <= t_idx; ++i) {
    rvec integrand;
    if (for_phi) {
      FormField phi = traj.phi_at(i);
      FormField vel = traj.velocity_at(i);
      FormField src = interior_bracket(traj.snaps[i], vel);
      rvec pn = phi.pointwise_norm();
      rvec sn = src.pointwise_norm();
      integrand.resize(sites);
      for (std::size_t x = 0; x < sites; ++x) integrand[x] = pn[x] + t[i] * sn[x];
    } else {
      CurvaturePieces bp = traj.curv_at(i);
      FormField b = bp.total();
      FormField phi = traj.phi_at(i);
      FormField hash = bochner_product(b, b);
      FormField bphi = wedge_bracket(b, phi);
      bphi *= -1.0;
      FormField src = grid_sum(hash, bphi);
      rvec bn = b.pointwise_norm();
      rvec sn = src.pointwise_norm();
      integrand.resize(sites);
      for (std::size_t x = 0; x < sites; ++x) integrand[x] = bn[x] + t[i] * sn[x];
    }
    rvec propagated = scalar_heat(traj.ws, integrand, tm - t[i]);
    if (i > 0) {
      double w = 0.5 * (t[i] - prev_t);
      for (std::size_t x = 0; x < sites; ++x) acc[x] += w * (prev[x] + propagated[x]);
    }
    prev = std::move(propagated);
    prev_t = t[i];
  }
  double finf = 0.0;
  for (double v : lhs) finf = std::max(finf, v);
  rep.field_inf = finf;
  double worst = 1e300;
  for (std::size_t x = 0; x < sites; ++x)
    worst = std::min(worst, acc[x] / tm - lhs[x]);
  rep.min_slack_rel = worst / std::max(finf, 1e-300);
  return rep;
}

FitReport blowup_exponent_fit(const Trajectory& traj, const std::string& quantity,
                              double a) {
  (void)a;
  FitReport rep;
  const auto& t = traj.series.at("t");
  const auto& q = traj.series.at(quantity);
  double lam_max = 0;
  for (double l : traj.ws.tr->lambda_flat()) lam_max = std::max(lam_max, l);
  double t_lo = 0.5 / lam_max;
  double t_hi = traj.mesh.horizon / 10.0;
  std::size_t lo = t.size(), hi = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] >= t_lo && t[i] <= t_hi) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  }
  if (lo >= hi || hi - lo + 1 < 8) return rep;  // unresolved
  rep.resolved = true;
  rep.points = static_cast<int>(hi - lo + 1);
  rep.slope = loglog_slope(t, q, lo, hi);
  return rep;
}

UniquenessReport uniqueness_comparison(const Trajectory& ta, const Trajectory& tb,
                                       const SobolevConstants& sc) {
  if (ta.nodes() != tb.nodes() || ta.mesh.nodes != tb.mesh.nodes)
    throw std::invalid_argument("uniqueness_comparison: meshes differ");
  UniquenessReport rep;
  const auto& t = ta.series.at("t");
  const std::size_t n = t.size();
  std::vector<double> f(n), u(n);
  for (std::size_t i = 0; i < n; ++i) {
    FormField diff = ta.snaps[i];
    diff -= tb.snaps[i];
    f[i] = std::pow(l2_norm(diff), 2);
    u[i] = sc.c * (ta.series.at("b_inf")[i] + tb.series.at("b_inf")[i]);
  }
  // the differential statement lives on the open interval: skip the first
  // interior node, whose central-difference stencil reaches t = 0 (for a
  // reconstructed route that node also carries the eps-floor anchor jump)
  double worst = 1e300;
  for (std::size_t i = 2; i + 1 < n; ++i) {
    double fp = central_diff(t, f, i);
    double rhs = u[i] * f[i];
    double scale = std::abs(rhs) + std::abs(fp) + 1e-300;
    worst = std::min(worst, (rhs - fp) / scale);
  }
  if (n <= 3) worst = 0.0;
  rep.u11_min_rel = worst;

  // w(t) = sqrt(int_0^t s u(s)^2 ds), contraction window w <= 1/2
  std::vector<double> su2(n);
  for (std::size_t i = 0; i < n; ++i) su2[i] = t[i] * u[i] * u[i];
  double acc = 0.0;
  rep.window_end = 0.0;
  rep.sup_diff_window = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    acc += 0.5 * (t[i] - t[i - 1]) * (su2[i - 1] + su2[i]);
    if (std::sqrt(acc) <= 0.5) {
      rep.window_end = t[i];
      rep.sup_diff_window = std::max(rep.sup_diff_window, std::sqrt(f[i]));
    }
  }

  // drift rate |A(t) - A0|_2^2 = o(t^{1/2}) (lemu3 mechanism)
  std::vector<double> drift(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    FormField d0 = ta.snaps[i];
    d0 -= ta.snaps[0];
    drift[i] = std::pow(l2_norm(d0), 2);
  }
  std::size_t hi = std::max<std::size_t>(2, n / 3);
  rep.drift_exponent = loglog_slope(t, drift, 1, hi);

  // u24-style bound with K from the measured action integrals
  std::vector<double> ga(n), gb(n);
  const auto& va = ta.series.at("vel_2");
  const auto& vb = tb.series.at("vel_2");
  for (std::size_t i = 0; i < n; ++i) {
    ga[i] = std::sqrt(t[i]) * va[i] * va[i];
    gb[i] = std::sqrt(t[i]) * vb[i] * vb[i];
  }
  rep.u24_bound_ok = 1;
  for (std::size_t m = 1; m < n; ++m) {
    double ia = trapezoid_integral(t, ga, 0, m);
    double ib = trapezoid_integral(t, gb, 0, m);
    double k = 2.0 * std::pow(std::sqrt(ia) + std::sqrt(ib), 2);
    if (f[m] > k * std::sqrt(t[m]) + 1e-14) rep.u24_bound_ok = 0;
  }
  return rep;
}

FreePropReport semigroup_smoothing_check(const FormField& c0, double a,
                                         const std::vector<double>& t_grid) {
  FreePropReport rep;
  rep.gamma_a_sq = gamma_a_squared(a);
  SpectralForm s0 = to_spectral(c0);
  std::vector<double> f(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    SpectralForm st = heat_semigroup(s0, t_grid[i]);
    double h1 = sobolev_norm(st, 1.0);
    f[i] = h1 * h1;
    rep.t.push_back(t_grid[i]);
    rep.weighted.push_back(std::pow(t_grid[i], 1.0 - a) * f[i]);
  }
  double lam_max = 0;
  for (double l : c0.ws().tr->lambda_flat()) lam_max = std::max(lam_max, l);
  double t_resolved = 0.5 * (1.0 - a) / std::max(lam_max, 1e-300);
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (t_grid[i] > t_resolved) break;
    if (rep.weighted[i] < rep.weighted[i - 1] - 1e-14 * rep.weighted[i - 1])
      rep.decreasing_resolved = false;  // must increase with t on this range
  }
  double lhs = singular_weight_integral(t_grid, f, a, t_grid.size() - 1);
  double h_a = sobolev_norm(s0, a);
  double rhs = std::exp(2.0 * t_grid.back()) * rep.gamma_a_sq * h_a * h_a;
  rep.st450a_slack = rhs - lhs;
  return rep;
}

}  // namespace ymflow
