#pragma once

#include "ymflow/gauge.hpp"
#include "ymflow/sobolev.hpp"

namespace ymflow {

/// Per-node coefficients of the differential inequalities and their
/// cumulative integrals: alpha(s) = a1 + a2 |C|_6^4, beta(s) = b1 + b2 |C|_6^4
/// + b3 |B|_2^4, lambda(B) = 1 + gamma |B|_2^4, psi(t) = 2 int_0^t lambda ds.
struct InequalityLedger {
  std::vector<double> t, alpha, beta, lambda_b, alpha_cum, beta_cum, psi;

  double alpha_between(int i, int j) const { return alpha_cum[j] - alpha_cum[i]; }
  double beta_between(int i, int j) const { return beta_cum[j] - beta_cum[i]; }
};
InequalityLedger build_inequality_ledger(const Trajectory& traj,
                                         const SobolevConstants& sc);

struct EnergyIdentityReport {
  std::vector<double> t, resid, scale;
  double max_rel = 0;  // max resid/scale over interior nodes
};
/// vs522 (augmented) or the dissipation identity (direct), by central
/// differences of the recorded series against the analytic right side.
EnergyIdentityReport energy_identity_check(const Trajectory& traj);
/// vs523, second order.
EnergyIdentityReport energy_identity_check2(const Trajectory& traj);

struct SlackReport {
  double min_slack = 0;      // worst signed slack (RHS - LHS)
  double min_rel = 0;        // worst slack normalized by the local scale
  double scale = 0;          // scale at the worst node
  int argmin = -1;
};
SlackReport differential_inequality_check1(const Trajectory& traj,
                                           const InequalityLedger& led);
SlackReport differential_inequality_check2(const Trajectory& traj,
                                           const InequalityLedger& led);

/// Gaffney-Friedrichs-Sobolev slack |w|_6^2 <= kappa^2 (|d_C^* w|^2 + |d_C w|^2
/// + lambda(B_C)|w|^2) and the 0-form Kato bound.
double gfs_slack(const FormField& c, const FormField& w, const SobolevConstants& sc);
double kato_slack(const FormField& c, const FormField& phi, const SobolevConstants& sc);

struct ActionReport {
  std::vector<double> rho_a;          // (1-a) int_0^t s^-a |B|_2^2, per node
  std::vector<double> strong_action;  // int_0^t s^-a |C|_{H1}^2, per node
  double magnetic_action = 0;         // a = 1/2 weight, full horizon
  double richardson_error = 0;        // |full - half mesh| estimate for rho_a(T)
  double q_pairing = 0;               // Sobolev pairing exponent q_a
};
ActionReport action_functionals(const Trajectory& traj, double a);

/// Order-1 bounds: the direct-flow equality (residual) or the augmented
/// inequality with exponential weights (slack).
struct Order1Report {
  double worst = 0;   // max |resid|/scale (direct) or min slack/scale (augmented)
  double scale = 0;
  bool equality = false;
};
Order1Report order1_bound_check(const Trajectory& traj, const InequalityLedger& led);
SlackReport order2_bound_check(const Trajectory& traj, const InequalityLedger& led);

struct NeumannDomReport {
  double min_slack_rel = 0;  // min over sites of (RHS - LHS) / |field(t)|_inf
  double field_inf = 0;
  bool for_phi = false;
};
NeumannDomReport neumann_domination_check(const Trajectory& traj, int t_idx,
                                          bool for_phi = false);

struct FitReport {
  double slope = 0;
  int points = 0;
  bool resolved = false;
};
/// Log-log least-squares slope over the early-time window
/// [t_min_resolved, T/10]; quantity is a series key ("b_inf", "b_6", ...).
FitReport blowup_exponent_fit(const Trajectory& traj, const std::string& quantity,
                              double a);

struct UniquenessReport {
  double u11_min_rel = 0;     // worst (RHS - f')/scale over interior nodes
  double window_end = 0;      // largest node time with w(t) <= 1/2
  double sup_diff_window = 0; // sup_t |A1 - A2|_2 inside the window
  double drift_exponent = 0;  // fitted slope of |A(t) - A0|_2^2 (target >= 0.45)
  double u24_bound_ok = 1;    // f(t) <= 2 t^{1/2} (sqrt I1 + sqrt I2)^2 held
};
UniquenessReport uniqueness_comparison(const Trajectory& a, const Trajectory& b,
                                       const SobolevConstants& sc);

struct FreePropReport {
  std::vector<double> t, weighted;  // t^{1-a} |e^{tDelta} C0|_{H1}^2
  bool decreasing_resolved = true;  // monotone toward 0 on the resolved range
  double st450a_slack = 0;          // e^{2T} gamma_a^2 |C0|_{Ha}^2 - quadrature
  double gamma_a_sq = 0;            // int_0^inf tau^-a e^-2tau dtau
};
FreePropReport semigroup_smoothing_check(const FormField& c0, double a,
                                         const std::vector<double>& t_grid);

/// Scalar heat semigroup used by the Neumann-domination averages (Neumann
/// basis on the box, self-adjoint version on the periodic surrogate).
rvec scalar_heat(const Workspace& ws, const rvec& f, double t);

double gamma_a_squared(double a);  // Gamma(1-a) 2^{a-1}

/// Least-squares slope of log q against log t.
double loglog_slope(const std::vector<double>& t, const std::vector<double>& q,
                    std::size_t lo, std::size_t hi);

}  // namespace ymflow
