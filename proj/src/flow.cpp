#include "ymflow/flow.hpp"

#include <cmath>
#include <iostream>

#include "ymflow/rng.hpp"

namespace ymflow {

double etd_phi1(double z) {
  if (std::abs(z) < 1e-5) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
  return std::expm1(z) / z;
}

double etd_phi2(double z) {
  if (std::abs(z) < 1e-5) return 0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0;
  return (std::expm1(z) - z) / (z * z);
}

FormField generate_initial_data(const Workspace& ws, GroupKind kind, double a,
                                double amplitude, double eps_reg,
                                std::uint64_t seed) {
  const auto& g = ws.geom();
  const auto& tr = *ws.tr;
  GaussianRng rng(seed);
  SpectralForm s(ws, kind, 1);
  double expo = 0.5 * a + 0.75 + 0.5 * eps_reg;
  for (int c = 0; c < s.components(); ++c)
    for (int kc = 0; kc < s.kdim(); ++kc) {
      cvec& x = s.data(c, kc);
      const auto& lam = tr.lambda_flat();
      for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = rng.gaussian() * std::pow(1.0 + lam[i], -expo);
      tr.apply_mask(x, s.parity(c));
    }
  FormField f = to_grid(s);
  if (g.flavor == BcFlavor::Periodic) f = to_grid(to_spectral(f));  // hermitize
  if (amplitude == 0.0) {
    f *= 0.0;
    return f;
  }
  double n = sobolev_norm(f, a);
  if (n > 0) f *= amplitude / n;
  return f;
}

namespace {

/// Elementwise multiplier m(lambda) on every component of a spectral form.
template <class Fn>
void apply_lambda_multiplier(SpectralForm& s, Fn&& m) {
  const auto& lam = s.ws().tr->lambda_flat();
  for (int c = 0; c < s.components(); ++c)
    for (int kc = 0; kc < s.kdim(); ++kc) {
      cvec& x = s.data(c, kc);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] *= m(lam[i]);
    }
}

SpectralForm spectral_x(const FormField& c) {
  FormField x = nonlinearity_x(c);
  return to_spectral(x);  // principal class: the flavor's form-domain Galerkin
}

FormField etd2rk_augmented(const FormField& c, double h) {
  SpectralForm cs = to_spectral(c);
  SpectralForm s1 = spectral_x(c);
  SpectralForm pred = cs;
  apply_lambda_multiplier(pred, [h](double l) { return std::exp(-h * l); });
  {
    SpectralForm t = s1;
    apply_lambda_multiplier(t, [h](double l) { return h * etd_phi1(-h * l); });
    pred += t;
  }
  FormField pred_grid = to_grid(pred);
  SpectralForm s2 = spectral_x(pred_grid);
  s2 -= s1;
  apply_lambda_multiplier(s2, [h](double l) { return h * etd_phi2(-h * l); });
  pred += s2;
  return to_grid(pred);
}

/// Fixed point of the step-local integral equation with the linear part
/// exact and X linearly interpolated in time (exponential trapezoid); agrees
/// with the ETD2RK step to O(h^2).
FormField picard_augmented(const FormField& c, double h, const FlowOptions& opts) {
  SpectralForm cs = to_spectral(c);
  SpectralForm s1 = spectral_x(c);
  SpectralForm base = cs;
  apply_lambda_multiplier(base, [h](double l) { return std::exp(-h * l); });
  {
    SpectralForm t = s1;
    apply_lambda_multiplier(
        t, [h](double l) { return h * (etd_phi1(-h * l) - etd_phi2(-h * l)); });
    base += t;
  }
  SpectralForm y = base;
  {
    SpectralForm t = s1;
    apply_lambda_multiplier(t, [h](double l) { return h * etd_phi2(-h * l); });
    y += t;  // first iterate: endpoint slope = X(C_n)
  }
  double prev_res = -1.0;
  int growth = 0;
  for (int it = 0; it < opts.picard_max_iter; ++it) {
    SpectralForm sy = spectral_x(to_grid(y));
    apply_lambda_multiplier(sy, [h](double l) { return h * etd_phi2(-h * l); });
    SpectralForm next = base;
    next += sy;
    SpectralForm diff = next;
    diff -= y;
    double res = diff.l2_norm();
    double scale = std::max(1e-300, next.l2_norm());
    y = next;
    if (res <= opts.picard_tol * scale) return to_grid(y);
    if (prev_res >= 0 && res > prev_res) {
      if (++growth >= 5)
        throw StepError("picard iteration not contracting; reduce step");
    } else {
      growth = 0;
    }
    prev_res = res;
  }
  throw StepError("picard iteration did not converge; reduce step");
}

/// f(d^* d) on a spectral 1-form: eigenvalue lambda on the gradient-orthogonal
/// part and 0 on the gradient (vertical) direction of each mode.
template <class Fn>
void apply_dstar_d_multiplier(SpectralForm& s, Fn&& m) {
  const auto& tr = *s.ws().tr;
  const auto& g = s.ws().geom();
  std::array<cvec, 3> fac;
  for (int a = 0; a < 3; ++a) {
    fac[a].resize(g.n[a]);
    for (int k = 0; k < g.n[a]; ++k) fac[a][k] = tr.grad_factor(a, k);
  }
  for (int kc = 0; kc < s.kdim(); ++kc) {
    for (int k1 = 0; k1 < g.n[0]; ++k1)
      for (int k2 = 0; k2 < g.n[1]; ++k2)
        for (int k3 = 0; k3 < g.n[2]; ++k3) {
          std::size_t i = g.index(k1, k2, k3);
          std::complex<double> v[3] = {fac[0][k1], fac[1][k2], fac[2][k3]};
          double lam = std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
          std::complex<double> w[3] = {s.data(0, kc)[i], s.data(1, kc)[i],
                                       s.data(2, kc)[i]};
          std::complex<double> dot{0.0, 0.0};
          if (lam > 0) {
            for (int j = 0; j < 3; ++j) dot += std::conj(v[j]) * w[j];
            dot /= lam;
          }
          double ml = m(lam), m0 = m(0.0);
          for (int j = 0; j < 3; ++j) {
            std::complex<double> pv = (lam > 0) ? v[j] * dot : std::complex<double>{0, 0};
            s.data(j, kc)[i] = ml * (w[j] - pv) + m0 * pv;
          }
        }
  }
  for (int c = 0; c < 3; ++c)
    for (int kc = 0; kc < s.kdim(); ++kc) tr.apply_mask(s.data(c, kc), s.parity(c));
}

/// N(A) = -d_A^* B_A + d^* d A (the non-stiff remainder of the direct flow).
SpectralForm direct_remainder(const FormField& a) {
  CurvaturePieces b = curvature_pieces(a);
  FormField drift = ym_drift(a, b);
  drift *= -1.0;
  SpectralForm sa = to_spectral(a);
  SpectralForm dstar_d = d_star(d(sa));
  SpectralForm out = to_spectral(drift);
  out += dstar_d;
  return out;
}

FormField etd2rk_direct(const FormField& a, double h, const FlowOptions& opts) {
  CurvaturePieces b = curvature_pieces(a);
  double binf = linf_norm(b.total());
  if (binf * h > opts.cfl_threshold)
    throw StepError("direct flow step rejected: |B|_inf * h over threshold");
  SpectralForm as = to_spectral(a);
  SpectralForm s1 = direct_remainder(a);
  SpectralForm pred = as;
  apply_dstar_d_multiplier(pred, [h](double l) { return std::exp(-h * l); });
  {
    SpectralForm t = s1;
    apply_dstar_d_multiplier(t, [h](double l) { return h * etd_phi1(-h * l); });
    pred += t;
  }
  FormField pred_grid = to_grid(pred);
  SpectralForm s2 = direct_remainder(pred_grid);
  s2 -= s1;
  apply_dstar_d_multiplier(s2, [h](double l) { return h * etd_phi2(-h * l); });
  pred += s2;
  return to_grid(pred);
}

}  // namespace

FormField step_augmented(const FormField& c, double h, const FlowOptions& opts) {
  if (!(h > 0)) throw std::domain_error("step_augmented: h must be positive");
  if (opts.integrator == Integrator::Picard) return picard_augmented(c, h, opts);
  return etd2rk_augmented(c, h);
}

FormField step_direct_ym(const FormField& a, double h, const FlowOptions& opts) {
  if (!(h > 0)) throw std::domain_error("step_direct_ym: h must be positive");
  return etd2rk_direct(a, h, opts);
}

FormField Trajectory::velocity_at(int i) const {
  const FormField& f = snaps[i];
  if (flow == FlowKind::Augmented) {
    SpectralForm s = to_spectral(f);
    apply_lambda_multiplier(s, [](double l) { return -l; });
    return grid_sum(to_grid(s), nonlinearity_x(f));
  }
  CurvaturePieces b = curvature_pieces(f);
  FormField v = ym_drift(f, b);
  v *= -1.0;
  return v;
}

Trajectory run_flow(const FormField& c0, const TimeMesh& mesh, FlowKind kind,
                    double a_index, const FlowOptions& opts) {
  Trajectory traj(c0.ws());
  traj.kind = c0.kind();
  traj.flow = kind;
  traj.a_index = a_index;
  traj.mesh = mesh;
  traj.snaps.reserve(mesh.nodes.size());
  traj.snaps.push_back(c0);

  auto& ser = traj.series;
  const char* keys[] = {"t",     "h_a",   "h1",    "path_sup", "c_3",
                        "c_6",   "phi_2", "phi_3", "phi_6",    "phi_inf",
                        "b_2",   "b_6",   "b_inf", "vel_2"};
  for (const char* k : keys) ser[k];

  double path_sup = 0.0;
  auto record = [&](int node) {
    const FormField& f = traj.snaps[node];
    double t = mesh.nodes[node];
    FormField phi = traj.phi_at(node);
    FormField b = traj.curv_at(node).total();
    FormField vel = traj.velocity_at(node);
    double h1 = sobolev_norm(f, 1.0);
    if (t > 0)
      path_sup = std::max(path_sup, std::pow(t, 0.5 * (1.0 - a_index)) * h1);
    ser["t"].push_back(t);
    ser["h_a"].push_back(sobolev_norm(f, a_index));
    ser["h1"].push_back(h1);
    ser["path_sup"].push_back(path_sup);
    ser["c_3"].push_back(lp_norm(f, 3.0));
    ser["c_6"].push_back(lp_norm(f, 6.0));
    ser["phi_2"].push_back(l2_norm(phi));
    ser["phi_3"].push_back(lp_norm(phi, 3.0));
    ser["phi_6"].push_back(lp_norm(phi, 6.0));
    ser["phi_inf"].push_back(linf_norm(phi));
    ser["b_2"].push_back(l2_norm(b));
    ser["b_6"].push_back(lp_norm(b, 6.0));
    ser["b_inf"].push_back(linf_norm(b));
    ser["vel_2"].push_back(l2_norm(vel));
  };
  record(0);

  for (std::size_t n = 1; n < mesh.nodes.size(); ++n) {
    double t0 = mesh.nodes[n - 1], t1 = mesh.nodes[n];
    FormField cur = traj.snaps.back();
    int pieces = opts.substeps;
    int rejections = 0;
    int i = 0;
    while (i < pieces) {
      double h = (t1 - t0) / pieces;
      try {
        FormField next = (kind == FlowKind::Augmented)
                             ? step_augmented(cur, h, opts)
                             : step_direct_ym(cur, h, opts);
        cur = std::move(next);
        ++i;
      } catch (const StepError& e) {
        if (++rejections >= 10) {
          std::cerr << "flow aborted at t in [" << t0 << "," << t1
                    << "]: " << e.what() << "\n";
          throw std::runtime_error(std::string("flow aborted: ") + e.what());
        }
        // halve every remaining substep of this interval
        pieces = 2 * pieces;
        i = 2 * i;
      }
    }
    traj.snaps.push_back(std::move(cur));
    record(static_cast<int>(n));
  }
  return traj;
}

}  // namespace ymflow
