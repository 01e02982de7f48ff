#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "ymflow/calculus.hpp"
#include "ymflow/config.hpp"
#include "ymflow/io.hpp"
#include "ymflow/sobolev.hpp"

using namespace ymflow;

namespace {
std::string tmpdir() {
  auto p = std::filesystem::temp_directory_path() / "ymflow_io_test";
  std::filesystem::create_directories(p);
  return p.string();
}
}  // namespace

TEST_CASE("snapshot round trip is bit exact") {
  Workspace ws(LatticeGeometry({6, 5, 4}, {1.5, 2.0, 2.5}, BcFlavor::Neumann), true);
  FormField f = random_band_limited(ws, GroupKind::SU2, 2, 2, 1.3, 5);
  std::string p1 = tmpdir() + "/a.ymh";
  std::string p2 = tmpdir() + "/b.ymh";
  write_snapshot(p1, f, 0.125);
  double t = -1;
  FormField g = read_snapshot(p1, ws, &t);
  CHECK(t == 0.125);
  write_snapshot(p2, g, t);
  CHECK(files_identical(p1, p2));
  FormField diff = f - g;
  CHECK(l2_norm(diff) == 0.0);

  SnapshotHeader h = peek_snapshot(p1);
  CHECK(h.degree == 2);
  CHECK(h.kind == GroupKind::SU2);
  CHECK(h.flavor == BcFlavor::Neumann);
  CHECK(h.n[0] == 6);
  CHECK(h.len[2] == 2.5);
}

TEST_CASE("series CSV round trip keeps full precision") {
  std::map<std::string, std::vector<double>> s;
  s["t"] = {0.0, 0.1234567890123456789, 0.2};
  s["x"] = {1.0 / 3.0, 2.0 / 7.0, 1e-300};
  std::string p = tmpdir() + "/series.csv";
  write_series_csv(p, s);
  auto r = read_series_csv(p);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r["t"][i] == s["t"][i]);
    CHECK(r["x"][i] == s["x"][i]);
  }
}

TEST_CASE("trajectory save/load round trip") {
  Workspace ws(LatticeGeometry({6, 6, 6},
                               {6.283185307179586, 6.283185307179586, 6.283185307179586},
                               BcFlavor::Periodic),
               true);
  FormField c0 = generate_initial_data(ws, GroupKind::U1, 0.5, 0.4, 0.1, 9);
  FlowOptions opts;
  Trajectory traj = run_flow(c0, TimeMesh(0.05, 8, 2.0), FlowKind::Augmented, 0.5, opts);
  std::string dir = tmpdir() + "/traj";
  save_trajectory(dir, traj);
  Trajectory back = load_trajectory(dir);
  CHECK(back.nodes() == traj.nodes());
  CHECK(back.a_index == traj.a_index);
  CHECK(back.flow == FlowKind::Augmented);
  for (int i = 0; i < traj.nodes(); ++i) {
    FormField diff = back.snaps[i] - traj.snaps[i];
    CHECK(l2_norm(diff) == 0.0);
  }
  for (const auto& [k, v] : traj.series) {
    REQUIRE(back.series.count(k) == 1);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(back.series.at(k)[i] == v[i]);
  }
}

TEST_CASE("config parsing: defaults, values, unknown keys, ranges") {
  RunConfig cfg = RunConfig::from_lines({"n1 = 16", "bc = neumann", "group = u1",
                                         "a = 0.75", "T = 0.5 # comment",
                                         "integrator = picard", "seed = 99"});
  CHECK(cfg.n1 == 16);
  CHECK(cfg.bc == BcFlavor::Neumann);
  CHECK(cfg.group == GroupKind::U1);
  CHECK(cfg.a_index == 0.75);
  CHECK(cfg.horizon == 0.5);
  CHECK(cfg.integrator == Integrator::Picard);
  CHECK(cfg.seed == 99);

  CHECK_THROWS_AS(RunConfig::from_lines({"mystery = 1"}), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_lines({"a = 1.5"}), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_lines({"n1 = 2"}), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_lines({"T = -1"}), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_lines({"bc = moving"}), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_lines({"steps"}), ConfigError);
}

TEST_CASE("seeded runs are byte identical") {
  Workspace ws(LatticeGeometry({6, 6, 6},
                               {6.283185307179586, 6.283185307179586, 6.283185307179586},
                               BcFlavor::Periodic),
               true);
  std::string p1 = tmpdir() + "/run1.csv";
  std::string p2 = tmpdir() + "/run2.csv";
  for (const std::string& p : {p1, p2}) {
    FormField c0 = generate_initial_data(ws, GroupKind::SU2, 0.5, 0.3, 0.1, 77);
    FlowOptions opts;
    Trajectory traj =
        run_flow(c0, TimeMesh(0.04, 8, 2.0), FlowKind::Augmented, 0.5, opts);
    write_series_csv(p, traj.series);
  }
  CHECK(files_identical(p1, p2));
}
