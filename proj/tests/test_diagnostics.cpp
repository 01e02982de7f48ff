#include <cmath>

#include "doctest.h"
#include "ymflow/calculus.hpp"
#include "ymflow/diagnostics.hpp"
#include "ymflow/gauge.hpp"
#include "ymflow/sobolev.hpp"

using namespace ymflow;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

Workspace pws(int n, bool dealias = false) {
  double L = 2.0 * kPi;
  return Workspace(LatticeGeometry({n, n, n}, {L, L, L}, BcFlavor::Periodic), dealias);
}

Trajectory su2_run(const Workspace& ws, double amp, double T, int steps,
                   unsigned seed, int mode = 1) {
  FormField c0 = random_band_limited(ws, GroupKind::SU2, 1, mode, amp, seed);
  FlowOptions opts;
  TimeMesh mesh(T, steps, 2.0);
  return run_flow(c0, mesh, FlowKind::Augmented, 0.5, opts);
}

}  // namespace

TEST_CASE("paper constants bundle from the measured kappas") {
  Workspace ws = pws(8);
  SobolevConstants sc = measure_sobolev_constants(ws, GroupKind::SU2);
  CHECK(sc.c == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sc.a1() == 0.5);
  CHECK(sc.a2() == doctest::Approx(2.0 * sc.kappa6 * sc.kappa6).epsilon(1e-12));
  CHECK(sc.b1() == 0.75);
  CHECK(sc.b2() == doctest::Approx(std::pow(4.0 * sc.kappa, 2)).epsilon(1e-12));
  CHECK(sc.b3() ==
        doctest::Approx(std::pow(sc.kappa, 6) * 19.0 * 27.0 / 16.0).epsilon(1e-12));
  CHECK(sc.gamma() == doctest::Approx(6.75 * std::pow(sc.kappa, 6)).epsilon(1e-12));
  CHECK(sc.kappa6 > 0);
  CHECK(sc.kappa >= sc.kappa6 * (1.0 - 1e-12));
  CHECK(sc.kappa3 > 0);
}

TEST_CASE("energy identities: abelian dissipation and su(2) refinement order") {
  Workspace ws = pws(8);
  FlowOptions opts;
  // zero data: all terms vanish
  FormField zero(ws, GroupKind::SU2, 1);
  TimeMesh mesh(0.05, 10, 2.0);
  Trajectory z = run_flow(zero, mesh, FlowKind::Augmented, 0.5, opts);
  auto repz = energy_identity_check(z);
  for (double r : repz.resid) CHECK(r <= 1e-20);

  // abelian: the bracket right side is identically zero
  FormField ca = generate_initial_data(ws, GroupKind::U1, 0.75, 0.5, 0.1, 3);
  Trajectory ta = run_flow(ca, TimeMesh(0.08, 32, 2.0), FlowKind::Augmented, 0.75, opts);
  auto repa = energy_identity_check(ta);
  CHECK(repa.max_rel <= 0.05);

  // su(2): residual halves (within a factor) when the mesh is refined
  Workspace ws12 = pws(12);
  Trajectory c1 = su2_run(ws12, 0.25, 0.08, 24, 7);
  Trajectory c2 = su2_run(ws12, 0.25, 0.08, 48, 7);
  auto r1 = energy_identity_check(c1);
  auto r2 = energy_identity_check(c2);
  // compare at matching times (node i of coarse = node 2i of fine, interior)
  int i = c1.nodes() / 2;
  double rc = r1.resid[i - 1] / r1.scale[i - 1];
  double rf = r2.resid[2 * i - 1] / r2.scale[2 * i - 1];
  double order = std::log2(rc / rf);
  CHECK(order >= 0.9);

  auto s1 = energy_identity_check2(c1);
  auto s2 = energy_identity_check2(c2);
  double sc_ = s1.resid[i - 1] / s1.scale[i - 1];
  double sf = s2.resid[2 * i - 1] / s2.scale[2 * i - 1];
  CHECK(std::log2(sc_ / sf) >= 0.9);

  // direct-flow dissipation identity
  FormField sm = heat_semigroup(
      random_band_limited(ws12, GroupKind::SU2, 1, 1, 0.3, 11), 1e-3);
  Trajectory d1 = run_flow(sm, TimeMesh(0.08, 24, 2.0), FlowKind::Direct, 0.5, opts);
  Trajectory d2 = run_flow(sm, TimeMesh(0.08, 48, 2.0), FlowKind::Direct, 0.5, opts);
  auto dr1 = energy_identity_check(d1);
  auto dr2 = energy_identity_check(d2);
  double dc = dr1.resid[i - 1] / dr1.scale[i - 1];
  double df = dr2.resid[2 * i - 1] / dr2.scale[2 * i - 1];
  CHECK(std::log2(dc / df) >= 0.9);
}

TEST_CASE("differential inequalities vs529/vs530 hold with paper constants") {
  Workspace ws = pws(12);
  SobolevConstants sc = measure_sobolev_constants(ws, GroupKind::SU2);
  Trajectory traj = su2_run(ws, 0.3, 0.1, 48, 13);
  InequalityLedger led = build_inequality_ledger(traj, sc);
  for (double v : led.alpha) CHECK(v >= 0.5);
  for (double v : led.beta) CHECK(v >= 0.75);
  for (std::size_t i = 1; i < led.psi.size(); ++i) CHECK(led.psi[i] >= led.psi[i - 1]);

  auto r1 = differential_inequality_check1(traj, led);
  CHECK(r1.min_rel >= -1e-6);
  auto r2 = differential_inequality_check2(traj, led);
  CHECK(r2.min_rel >= -1e-6);
}

TEST_CASE("action functionals: zero data, closed-form single mode, monotone") {
  Workspace ws = pws(8);
  FlowOptions opts;
  FormField zero(ws, GroupKind::SU2, 1);
  Trajectory z = run_flow(zero, TimeMesh(0.05, 10, 2.0), FlowKind::Augmented, 0.5, opts);
  auto repz = action_functionals(z, 0.5);
  CHECK(repz.rho_a.back() == 0.0);

  // single abelian mode: B = dC decays as e^{-lam t}; rho_a has a closed form
  const auto& g = ws.geom();
  FormField c0(ws, GroupKind::U1, 1);
  for (int i1 = 0; i1 < g.n[0]; ++i1)
    for (int i2 = 0; i2 < g.n[1]; ++i2)
      for (int i3 = 0; i3 < g.n[2]; ++i3)
        c0.data(1, 0)[g.index(i1, i2, i3)] = 0.5 * std::cos(g.coord(0, i1));
  double lam = ws.tr->lambda(1, 0, 0);
  double b0 = std::pow(l2_norm(curvature(c0)), 2);
  double a = 0.5, T = 0.2;
  Trajectory tm = run_flow(c0, TimeMesh(T, 512, 2.0), FlowKind::Augmented, a, opts);
  auto rep = action_functionals(tm, a);
  // closed form: (1-a) b0 int_0^T s^-a e^{-2 lam s} ds
  double exact = 0.0;
  int n = 200000;
  for (int i = 0; i < n; ++i) {
    double u0 = std::pow(T, 0.5) * i / n, u1 = std::pow(T, 0.5) * (i + 1) / n;
    double s0 = u0 * u0, s1 = u1 * u1;
    exact += 0.5 * (u1 - u0) * (std::exp(-2 * lam * s0) + std::exp(-2 * lam * s1));
  }
  exact *= (1.0 - a) * b0 / (1.0 - a);
  CHECK(std::abs(rep.rho_a.back() - exact) <= 1e-6 * exact);
  for (std::size_t i = 1; i < rep.rho_a.size(); ++i)
    CHECK(rep.rho_a[i] >= rep.rho_a[i - 1] * (1.0 - 1e-12));
  CHECK(rep.q_pairing == doctest::Approx(3.0));  // q_{1/2} = 3

  // gauge invariance: rho_a from B_A equals rho_a from B_C within quadrature
  Workspace ws12 = pws(10);
  Trajectory ts = su2_run(ws12, 0.05, 0.08, 32, 17);
  Reconstruction rec = reconstruct_a(ts, ts.nodes() / 2);
  auto rc = action_functionals(ts, 0.5);
  auto ra = action_functionals(rec.a_traj, 0.5);
  CHECK(std::abs(rc.rho_a.back() - ra.rho_a.back()) <=
        1e-6 * rc.rho_a.back() + 3.0 * rc.richardson_error);
}

TEST_CASE("order-1 and order-2 bounds along trajectories") {
  Workspace ws = pws(12);
  SobolevConstants sc = measure_sobolev_constants(ws, GroupKind::SU2);
  FlowOptions opts;

  // direct flow: fa10a is an identity; residual within quadrature error
  FormField sm = heat_semigroup(
      random_band_limited(ws, GroupKind::SU2, 1, 1, 0.3, 19), 1e-3);
  Trajectory dt = run_flow(sm, TimeMesh(0.1, 64, 2.0), FlowKind::Direct, 0.5, opts);
  InequalityLedger dl = build_inequality_ledger(dt, sc);
  auto d1 = order1_bound_check(dt, dl);
  CHECK(d1.equality);
  CHECK(d1.worst <= 1e-3);

  // augmented flow: vs38a and vs640a slacks
  Trajectory at = su2_run(ws, 0.3, 0.1, 48, 23);
  InequalityLedger al = build_inequality_ledger(at, sc);
  auto a1 = order1_bound_check(at, al);
  CHECK_FALSE(a1.equality);
  CHECK(a1.worst >= -1e-6);
  auto a2 = order2_bound_check(at, al);
  CHECK(a2.min_rel >= -1e-6);

  // abelian direct flow: closed-form both sides of fa10a
  FormField ca = generate_initial_data(ws, GroupKind::U1, 0.75, 0.4, 0.1, 29);
  Trajectory adt = run_flow(ca, TimeMesh(0.1, 96, 2.0), FlowKind::Direct, 0.75, opts);
  InequalityLedger adl = build_inequality_ledger(adt, sc);
  auto ad1 = order1_bound_check(adt, adl);
  CHECK(ad1.worst <= 1e-3);
}

TEST_CASE("Neumann domination: zero data, abelian equality-like, su(2) battery") {
  Workspace ws = pws(12);
  FlowOptions opts;
  FormField zero(ws, GroupKind::SU2, 1);
  Trajectory z = run_flow(zero, TimeMesh(0.05, 10, 2.0), FlowKind::Augmented, 0.5, opts);
  auto rz = neumann_domination_check(z, z.nodes() - 1, false);
  CHECK(rz.min_slack_rel >= -1e-12);

  // abelian: B solves the scalar heat equation componentwise. The phi check
  // needs the discrete kernel resolved, so it probes the late-time node.
  FormField ca = generate_initial_data(ws, GroupKind::U1, 0.75, 0.5, 0.1, 31);
  Trajectory ta = run_flow(ca, TimeMesh(0.1, 48, 2.0), FlowKind::Augmented, 0.75, opts);
  auto rb = neumann_domination_check(ta, 2 * ta.nodes() / 3, false);
  CHECK(rb.min_slack_rel >= -1e-7);
  auto rp = neumann_domination_check(ta, ta.nodes() - 1, true);
  CHECK(rp.min_slack_rel >= -1e-4);

  Trajectory ts = su2_run(ws, 0.3, 0.1, 48, 37);
  auto rs = neumann_domination_check(ts, 2 * ts.nodes() / 3, false);
  CHECK(rs.min_slack_rel >= -1e-4);
  auto rsp = neumann_domination_check(ts, ts.nodes() - 1, true);
  CHECK(rsp.min_slack_rel >= -1e-4);
}

TEST_CASE("blow-up exponent fits") {
  Workspace ws = pws(12, true);
  FlowOptions opts;
  // smooth data: bounded quantities fit a near-zero slope
  FormField sm = heat_semigroup(
      random_band_limited(ws, GroupKind::SU2, 1, 1, 0.25, 41), 5e-3);
  Trajectory st = run_flow(sm, TimeMesh(0.5, 160, 4.0), FlowKind::Augmented, 0.5, opts);
  auto fs = blowup_exponent_fit(st, "b_inf", 0.5);
  CHECK(fs.resolved);
  CHECK(std::abs(fs.slope) <= 0.35);

  // rough a = 1/2 data: slopes must not be steeper than the paper targets
  FormField rough = generate_initial_data(ws, GroupKind::SU2, 0.5, 0.35, 0.1, 43);
  Trajectory rt = run_flow(rough, TimeMesh(0.5, 160, 4.0), FlowKind::Augmented, 0.5, opts);
  auto fb = blowup_exponent_fit(rt, "b_inf", 0.5);
  CHECK(fb.resolved);
  CHECK(fb.slope >= -1.0 - 0.15);
  auto f6 = blowup_exponent_fit(rt, "b_6", 0.5);
  CHECK(f6.resolved);
  CHECK(f6.slope >= -0.75 - 0.15);
}

TEST_CASE("uniqueness comparison: identical trajectories and the trivial slack") {
  Workspace ws = pws(10);
  SobolevConstants sc = measure_sobolev_constants(ws, GroupKind::SU2);
  FlowOptions opts;
  FormField sm = heat_semigroup(
      random_band_limited(ws, GroupKind::SU2, 1, 1, 0.3, 47), 1e-3);
  Trajectory t1 = run_flow(sm, TimeMesh(0.1, 32, 2.0), FlowKind::Direct, 0.5, opts);
  auto rep = uniqueness_comparison(t1, t1, sc);
  CHECK(rep.u11_min_rel >= 0.0);  // f == 0, slack = RHS = 0
  CHECK(rep.sup_diff_window == 0.0);
  CHECK(rep.u24_bound_ok == 1);

  TimeMesh other(0.1, 16, 2.0);
  Trajectory t2 = run_flow(sm, other, FlowKind::Direct, 0.5, opts);
  CHECK_THROWS_AS(uniqueness_comparison(t1, t2, sc), std::invalid_argument);
}
