#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ymflow/calculus.hpp"
#include "ymflow/diagnostics.hpp"
#include "ymflow/flow.hpp"
#include "ymflow/gauge.hpp"
#include "ymflow/oracles.hpp"
#include "ymflow/sobolev.hpp"

namespace py = pybind11;
using namespace ymflow;

namespace {

struct PyGeometry {
  Workspace ws;
  GroupKind kind;
};

BcFlavor flavor_of(const std::string& s) {
  if (s == "periodic") return BcFlavor::Periodic;
  if (s == "neumann") return BcFlavor::Neumann;
  if (s == "dirichlet") return BcFlavor::Dirichlet;
  throw std::invalid_argument("bc must be periodic|neumann|dirichlet");
}

GroupKind group_of(const std::string& s) {
  if (s == "su2") return GroupKind::SU2;
  if (s == "u1") return GroupKind::U1;
  throw std::invalid_argument("group must be su2|u1");
}

py::array_t<double> field_to_array(const FormField& f) {
  std::array<int, 3> n = f.geom().n;
  py::array_t<double> out({f.components(), f.kdim(), n[0], n[1], n[2]});
  auto buf = out.mutable_unchecked<5>();
  for (int c = 0; c < f.components(); ++c)
    for (int kc = 0; kc < f.kdim(); ++kc)
      for (int i1 = 0; i1 < n[0]; ++i1)
        for (int i2 = 0; i2 < n[1]; ++i2)
          for (int i3 = 0; i3 < n[2]; ++i3)
            buf(c, kc, i1, i2, i3) = f.data(c, kc)[f.geom().index(i1, i2, i3)];
  return out;
}

FormField array_to_field(const PyGeometry& g, int degree, py::array_t<double> arr) {
  FormField f(g.ws, g.kind, degree);
  auto buf = arr.unchecked<5>();
  std::array<int, 3> n = f.geom().n;
  if (buf.shape(0) != f.components() || buf.shape(1) != f.kdim() ||
      buf.shape(2) != n[0] || buf.shape(3) != n[1] || buf.shape(4) != n[2])
    throw std::invalid_argument("array shape does not match the geometry");
  for (int c = 0; c < f.components(); ++c)
    for (int kc = 0; kc < f.kdim(); ++kc)
      for (int i1 = 0; i1 < n[0]; ++i1)
        for (int i2 = 0; i2 < n[1]; ++i2)
          for (int i3 = 0; i3 < n[2]; ++i3)
            f.data(c, kc)[f.geom().index(i1, i2, i3)] = buf(c, kc, i1, i2, i3);
  return f;
}

}  // namespace

PYBIND11_MODULE(_ymflow, m) {
  m.doc() = "Yang-Mills heat flow on 3D lattices: augmented-equation "
            "integrator, ZDS gauge recovery and verification diagnostics";

  py::class_<PyGeometry>(m, "Geometry")
      .def(py::init([](int n, double L, const std::string& bc, const std::string& group,
                       bool dealias) {
             return PyGeometry{
                 Workspace(LatticeGeometry({n, n, n}, {L, L, L}, flavor_of(bc)),
                           dealias),
                 group_of(group)};
           }),
           py::arg("n"), py::arg("length") = 6.283185307179586,
           py::arg("bc") = "periodic", py::arg("group") = "su2",
           py::arg("dealias") = true)
      .def_property_readonly("sites",
                             [](const PyGeometry& g) { return g.ws.geom().sites(); });

  m.def("bracket", [](py::array_t<double> a, py::array_t<double> b) {
    auto ba = a.unchecked<1>();
    auto bb = b.unchecked<1>();
    if (ba.shape(0) != 3 || bb.shape(0) != 3)
      throw std::invalid_argument("su(2) coordinates expected");
    double x[3] = {ba(0), ba(1), ba(2)};
    double y[3] = {bb(0), bb(1), bb(2)};
    double out[3];
    bracket_coords(GroupKind::SU2, x, y, out);
    return py::make_tuple(out[0], out[1], out[2]);
  });

  m.def("exp_su2", [](py::array_t<double> a) {
    auto ba = a.unchecked<1>();
    double x[3] = {ba(0), ba(1), ba(2)};
    KElem q = exp_coords(GroupKind::SU2, x);
    return py::make_tuple(q.w, q.x, q.y, q.z);
  });

  m.def("commutator_bound",
        [](const std::string& g) { return commutator_bound(group_of(g)); });

  m.def(
      "generate_initial_data",
      [](const PyGeometry& g, double a, double amplitude, double eps, std::uint64_t seed) {
        return field_to_array(generate_initial_data(g.ws, g.kind, a, amplitude, eps, seed));
      },
      py::arg("geometry"), py::arg("a") = 0.5, py::arg("amplitude") = 0.1,
      py::arg("eps") = 0.1, py::arg("seed") = 1);

  m.def(
      "sobolev_norm",
      [](const PyGeometry& g, int degree, py::array_t<double> arr, double a) {
        return sobolev_norm(array_to_field(g, degree, arr), a);
      },
      py::arg("geometry"), py::arg("degree"), py::arg("field"), py::arg("a"));

  m.def(
      "heat_semigroup",
      [](const PyGeometry& g, int degree, py::array_t<double> arr, double t) {
        return field_to_array(heat_semigroup(array_to_field(g, degree, arr), t));
      },
      py::arg("geometry"), py::arg("degree"), py::arg("field"), py::arg("t"));

  m.def(
      "run_flow",
      [](const PyGeometry& g, py::array_t<double> c0, double T, int steps, double a,
         const std::string& kind) {
        TimeMesh mesh(T, steps, TimeMesh::default_grading(a));
        FlowOptions opts;
        Trajectory traj =
            run_flow(array_to_field(g, 1, c0), mesh,
                     kind == "direct" ? FlowKind::Direct : FlowKind::Augmented, a, opts);
        py::dict series;
        for (const auto& [k, v] : traj.series) series[py::str(k)] = v;
        return series;
      },
      py::arg("geometry"), py::arg("c0"), py::arg("T"), py::arg("steps"),
      py::arg("a") = 0.5, py::arg("kind") = "augmented");

  m.def("abelian_pipeline_error", [](int n, double T, int steps) {
    // end-to-end oracle: ZDS-reconstructed A against the closed-form
    // per-mode solution of A' = -d^* d A
    double L = 6.283185307179586;
    Workspace ws(LatticeGeometry({n, n, n}, {L, L, L}, BcFlavor::Periodic), false);
    FormField c0 = generate_initial_data(ws, GroupKind::U1, 0.75, 0.8, 0.1, 4242);
    TimeMesh mesh(T, steps, 1.0);
    FlowOptions opts;
    Trajectory traj = run_flow(c0, mesh, FlowKind::Augmented, 0.75, opts);
    Reconstruction rec = reconstruct_a(traj, steps / 2);
    // exact: anchored at the first node
    SpectralForm s_eps = to_spectral(traj.snaps[1]);
    double worst = 0.0;
    for (int i : {steps / 2, steps - 1}) {
      double dt = traj.time(i) - traj.time(1);
      SpectralForm vert = vertical_projection(s_eps);
      SpectralForm rest = s_eps;
      rest -= vert;
      SpectralForm ex = heat_semigroup(rest, dt);
      ex += vert;
      FormField exact = to_grid(ex);
      FormField diff = rec.a_traj.snaps[i] - exact;
      worst = std::max(worst, l2_norm(diff) / l2_norm(exact));
    }
    return worst;
  });

  m.def("oracle_slacks", [](std::uint64_t seed, int trials) {

    py::dict out;
    auto pack = [&](const char* name, const std::vector<OracleTrial>& ts) {
      double worst = 1e300;
      for (const auto& t : ts) worst = std::min(worst, t.rel());
      out[name] = worst;
    };
    pack("lemu1", oracle_lemu1(seed, trials));
    pack("ce303", oracle_actint(seed + 1, trials));
    pack("ce304", oracle_kernel_bound(seed + 2, trials));
    pack("vs91", oracle_initial_behavior(seed + 3, trials));
    pack("hk0", oracle_heat_power(seed + 4, trials));
    return out;
  }, py::arg("seed") = 2025, py::arg("trials") = 25);
}
