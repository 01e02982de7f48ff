#pragma once

#include "ymflow/gauge.hpp"
#include "ymflow/sobolev.hpp"

namespace ymflow {

enum class MetricKind : unsigned char { Sobolev = 0, Lp = 1 };

/// rho_a(g,h) = |g^-1 dg - h^-1 dh|_{H_a} + |g - h|_2 (Sobolev kind) or the
/// same with the L^p norm of the differential difference (Lp kind).
double metric_rho(const GaugeField& g, const GaugeField& h, double index,
                  MetricKind kind);

struct IdentityBatteryReport {
  double gp15 = 0, gp16 = 0, gp18 = 0, gp19 = 0;
  double max_rel() const { return std::max({gp15, gp16, gp18, gp19}); }
};

/// Two-route residuals of the product/inverse/conjugation identities for
/// logarithmic differentials: pointwise product then spectral derivative
/// against the closed formulas.
IdentityBatteryReport group_identity_battery(const GaugeField& g,
                                             const GaugeField& h);

struct MultiplierReport {
  double lhs_gp3 = 0, rhs_gp3 = 0;      // |Ad g u|_{H_b} vs (1+c1|h|_3)|u|_{H_b}
  double lhs_gp8b = 0, rhs_gp8b = 0;    // |(Ad g - 1)u|_{H_b} vs kappa/c1 bound
  double slack_gp3() const { return rhs_gp3 - lhs_gp3; }
  double slack_gp8b() const { return rhs_gp8b - lhs_gp8b; }
};

/// gp3 with c1 = sqrt(2) c kappa6 and gp8b with delta_1 = 1/2 (p_1 = 6).
MultiplierReport multiplier_bound_check(const GaugeField& g, const FormField& u,
                                        double b, const SobolevConstants& sc);

struct MetricEstimateReport {
  double slack_gp28a = 0;  // (1 + c2 rho_a(k,e)) rho_a(g,h) - rho_a(gk,hk)
  double slack_gp30a = 0;  // subadditivity with c2 correction
  double slack_gp31a = 0;  // inverse bound
  double scale = 0;
};
MetricEstimateReport metric_estimates_check(const GaugeField& g, const GaugeField& h,
                                            const GaugeField& k, double a,
                                            const SobolevConstants& sc);

/// |(Ad g - 1) u|_{H_b} for the strong-continuity trend experiments.
double ad_deviation_norm(const GaugeField& g, const FormField& u, double b);

}  // namespace ymflow
