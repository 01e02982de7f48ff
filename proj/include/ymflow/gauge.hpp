#pragma once

#include "ymflow/flow.hpp"

namespace ymflow {

/// K-valued lattice function. SU(2) sites are stored as unit quaternions, so
/// group products and the ODE stepper stay exactly in K up to roundoff.
class GaugeField {
 public:
  GaugeField(Workspace ws, GroupKind kind)
      : ws_(std::move(ws)), kind_(kind), site_(ws_.geom().sites()) {}

  static GaugeField identity(const Workspace& ws, GroupKind kind) {
    return GaugeField(ws, kind);
  }

  GroupKind kind() const { return kind_; }
  const Workspace& ws() const { return ws_; }
  const LatticeGeometry& geom() const { return ws_.geom(); }
  KElem& at(std::size_t i) { return site_[i]; }
  const KElem& at(std::size_t i) const { return site_[i]; }
  std::size_t sites() const { return site_.size(); }

  GaugeField times(const GaugeField& o) const;    // pointwise this * o
  GaugeField inverse() const;
  void left_multiply_exp(const FormField& omega);  // g <- exp(omega) g sitewise
  void renormalize();

  /// h = g^{-1} dg: spectral derivative of the group entries in the
  /// flavor-adapted entry basis, then projection to the algebra; the scalar
  /// part discarded by the projection is reported as `defect` (L2).
  FormField log_differential(double* defect = nullptr) const;

  /// L^p distance |g - h|_p of the matrix representatives.
  double dist_lp(const GaugeField& o, double p) const;
  double dist_to_identity_lp(double p) const;

  /// Build exp_k of a band-limited random algebra-valued 0-form (sample
  /// generator for the gauge-group batteries; exp is never used as a chart).
  static GaugeField from_generator(const FormField& alpha);

 private:
  Workspace ws_;
  GroupKind kind_;
  std::vector<KElem> site_;
};

/// Ad(g^{-1}) applied sitewise to every component of a form field.
FormField adjoint_transform(const FormField& f, const GaugeField& g,
                            bool inverse = true);

/// C^g = g^{-1} C g + g^{-1} dg.
FormField gauge_transform(const FormField& c, const GaugeField& g);

/// Integrate dg/dt g^{-1} = d^* C(t) sitewise from node i_eps to every later
/// node of the trajectory (Magnus integrator with two-point Gauss nodes and
/// cubic interpolation of phi between snapshots). family[i] = g_eps(t_i) for
/// i >= i_eps; earlier entries are the identity.
std::vector<GaugeField> integrate_gauge_family(const Trajectory& traj, int i_eps,
                                               int substeps = 4);
GaugeField integrate_gauge_ode(const Trajectory& traj, int i_eps, int i_t,
                               int substeps = 4);

struct Reconstruction {
  Trajectory a_traj;     // A(t) = C(t)^{g_eps(t)}
  Trajectory ahat_traj;  // \hat A(t) = A(t)^{g0}, g0 = g(tau)^{-1}
  GaugeField g0;
  std::vector<double> cov_rel;     // | |B_A|_2/|B_C|_2 - 1 | per node
  std::vector<double> cov_site;    // sitewise covariance residual / |B_C|_inf
  std::vector<double> str5_resid;  // |Ahat' + d_Ahat^* B_Ahat|_2, interior nodes
};
Reconstruction reconstruct_a(const Trajectory& traj, int tau_idx,
                             int ode_substeps = 4);

struct RepCheckReport {
  double rel_discrepancy = 0;  // |LHS - RHS|_2 / |LHS|_2
  double lhs_norm = 0;
  double defect = 0;  // algebra-projection defect of g^{-1} dg
};
/// Both sides of the integral representation of g_eps^{-1} d g_eps: the ODE
/// route against Chat(eps) - a_eps(t) Chat(t) + int a_eps(s) chi(s) ds.
RepCheckReport representation_check(const Trajectory& traj, int i_eps, int i_t,
                                    int substeps = 4);

/// chi(s) = [Chat, phi] - P_perp(d_C^* B_C + [C, phi]) assembled classwise.
FormField zds_chi(const Trajectory& traj, int node);

}  // namespace ymflow
