#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ymflow/flow.hpp"

namespace ymflow {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat key=value run configuration ('#' starts a comment). Unknown keys are
/// rejected. Documented keys and defaults are in RunConfig's initializers.
struct RunConfig {
  int n1 = 12, n2 = 12, n3 = 12;
  double l1 = 6.283185307179586, l2 = 6.283185307179586, l3 = 6.283185307179586;
  BcFlavor bc = BcFlavor::Periodic;
  GroupKind group = GroupKind::SU2;
  double a_index = 0.5;
  double amplitude = 0.1;
  double eps_reg = 0.1;
  double horizon = 0.25;
  int steps = 64;
  double gamma_mesh = 0.0;  // 0 -> default grading 2/(1-a) clipped to [2,8]
  Integrator integrator = Integrator::Etd2rk;
  FlowKind flow = FlowKind::Augmented;
  int substeps = 1;
  std::uint64_t seed = 1;
  bool dealias = true;
  std::string diagnostics = "";  // comma list; empty = none
  std::string out_dir = "out";
  bool save_traj = false;
  int tau_index = -1;  // anchor node for reconstruction; -1 -> steps/2

  static RunConfig from_file(const std::string& path);
  static RunConfig from_lines(const std::vector<std::string>& lines);

  LatticeGeometry geometry() const {
    return LatticeGeometry({n1, n2, n3}, {l1, l2, l3}, bc);
  }
  TimeMesh mesh() const {
    double g = gamma_mesh > 0 ? gamma_mesh : TimeMesh::default_grading(a_index);
    return TimeMesh(horizon, steps, g);
  }
  std::vector<std::string> diagnostic_list() const;
};

}  // namespace ymflow
