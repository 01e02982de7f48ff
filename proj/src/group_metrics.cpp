#include "ymflow/group_metrics.hpp"

#include <cmath>

#include "ymflow/calculus.hpp"

namespace ymflow {

double metric_rho(const GaugeField& g, const GaugeField& h, double index,
                  MetricKind kind) {
  FormField dg = g.log_differential();
  FormField dh = h.log_differential();
  dg -= dh;
  double diff_norm = (kind == MetricKind::Sobolev) ? sobolev_norm(dg, index)
                                                   : lp_norm(dg, index);
  return diff_norm + g.dist_lp(h, 2.0);
}

namespace {
/// Residual relative to the identity's natural scale; the floor keeps the
/// degenerate 0 = 0 cases (e.g. h = g^-1) from reading as 0/0 noise.
double rel_residual(const FormField& lhs, const FormField& rhs, double floor) {
  FormField diff = lhs;
  diff -= rhs;
  double scale = std::max({l2_norm(lhs), l2_norm(rhs), 1e-6 * floor, 1e-300});
  return l2_norm(diff) / scale;
}
}  // namespace

IdentityBatteryReport group_identity_battery(const GaugeField& g,
                                             const GaugeField& h) {
  IdentityBatteryReport rep;
  FormField hg = g.log_differential();   // g^-1 dg
  FormField hh = h.log_differential();   // h^-1 dh
  double floor = l2_norm(hg) + l2_norm(hh);

  {  // gp15: (hg)^-1 d(hg) = g^-1 dg + Ad(g^-1)(h^-1 dh)
    FormField lhs = h.times(g).log_differential();
    FormField rhs = hg + adjoint_transform(hh, g, true);
    rep.gp15 = rel_residual(lhs, rhs, floor);
  }
  {  // gp16: (h g^-1)^-1 d(h g^-1) = Ad(g)(h^-1 dh - g^-1 dg)
    FormField lhs = h.times(g.inverse()).log_differential();
    FormField diff = hh;
    diff -= hg;
    FormField rhs = adjoint_transform(diff, g, false);
    rep.gp16 = rel_residual(lhs, rhs, floor);
  }
  {  // gp18: (g^-1)^-1 d(g^-1) = -Ad(g)(g^-1 dg)
    FormField lhs = g.inverse().log_differential();
    FormField rhs = adjoint_transform(hg, g, false);
    rhs *= -1.0;
    rep.gp18 = rel_residual(lhs, rhs, floor);
  }
  {  // gp19: (h g h^-1)^-1 d(h g h^-1) = Ad(h)((Ad g^-1 - 1)(h^-1 dh) + g^-1 dg)
    FormField lhs = h.times(g).times(h.inverse()).log_differential();
    FormField adm = adjoint_transform(hh, g, true);
    adm -= hh;
    adm += hg;
    FormField rhs = adjoint_transform(adm, h, false);
    rep.gp19 = rel_residual(lhs, rhs, floor);
  }
  return rep;
}

MultiplierReport multiplier_bound_check(const GaugeField& g, const FormField& u,
                                        double b, const SobolevConstants& sc) {
  MultiplierReport rep;
  FormField h = g.log_differential();
  double h3 = lp_norm(h, 3.0);
  FormField adu = adjoint_transform(u, g, false);
  rep.lhs_gp3 = sobolev_norm(adu, b);
  rep.rhs_gp3 = (1.0 + sc.c1() * h3) * sobolev_norm(u, b);

  FormField dev = adu;
  dev -= u;
  rep.lhs_gp8b = sobolev_norm(dev, b);
  // |Ad g - 1|_{p1} with p1 = 6 (delta_1 = 1/2, so kappa_{delta_1} = kappa3)
  rvec amn(g.sites());
  for (std::size_t i = 0; i < g.sites(); ++i)
    amn[i] = ad_minus_one_norm(g.kind(), g.at(i));
  double p1 = 6.0;
  double s = 0.0;
  for (double v : amn) s += std::pow(v, p1);
  double ad_p1 = std::pow(s * g.geom().cell_volume(), 1.0 / p1);
  rep.rhs_gp8b = (sc.kappa3 * ad_p1 + sc.c1() * h3) * sobolev_norm(u, b + 0.5);
  return rep;
}

MetricEstimateReport metric_estimates_check(const GaugeField& g, const GaugeField& h,
                                            const GaugeField& k, double a,
                                            const SobolevConstants& sc) {
  MetricEstimateReport rep;
  GaugeField e = GaugeField::identity(g.ws(), g.kind());
  double c2 = sc.c2();
  double rho_gh = metric_rho(g, h, a, MetricKind::Sobolev);
  double rho_ke = metric_rho(k, e, a, MetricKind::Sobolev);
  double rho_ge = metric_rho(g, e, a, MetricKind::Sobolev);
  double rho_he = metric_rho(h, e, a, MetricKind::Sobolev);

  double lhs28 = metric_rho(g.times(k), h.times(k), a, MetricKind::Sobolev);
  rep.slack_gp28a = (1.0 + c2 * rho_ke) * rho_gh - lhs28;

  double lhs30 = metric_rho(g.times(h), e, a, MetricKind::Sobolev);
  rep.slack_gp30a = rho_ge + rho_he + c2 * rho_ge * rho_he - lhs30;

  double lhs31 = metric_rho(g.inverse(), e, a, MetricKind::Sobolev);
  rep.slack_gp31a = rho_ge + c2 * rho_ge * rho_ge - lhs31;

  rep.scale = std::max({rho_gh, rho_ge, rho_he, 1e-300});
  return rep;
}

double ad_deviation_norm(const GaugeField& g, const FormField& u, double b) {
  FormField dev = adjoint_transform(u, g, false);
  dev -= u;
  return sobolev_norm(dev, b);
}

}  // namespace ymflow
