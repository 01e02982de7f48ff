#pragma once

#include <map>
#include <string>
#include <vector>

#include "ymflow/calculus.hpp"
#include "ymflow/mesh.hpp"

namespace ymflow {

enum class FlowKind : unsigned char { Augmented = 0, Direct = 1 };
enum class Integrator : unsigned char { Etd2rk = 0, Picard = 1 };

/// Step rejection (Picard non-contraction or direct-flow CFL); callers halve
/// the step in response.
struct StepError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FlowOptions {
  Integrator integrator = Integrator::Etd2rk;
  int substeps = 1;  // uniform substeps per mesh interval
  double picard_tol = 1e-10;
  int picard_max_iter = 50;
  double cfl_threshold = 0.5;
};

/// Random rough initial data: spectral coefficients xi_k (1+lambda_k)^-(a/2
/// + 3/4 + eps/2) with iid unit Gaussians per component and algebra
/// coordinate, normalized so that |C0|_{H_a} = amplitude.
FormField generate_initial_data(const Workspace& ws, GroupKind kind, double a,
                                double amplitude, double eps_reg,
                                std::uint64_t seed);

struct Trajectory {
  Workspace ws;
  GroupKind kind = GroupKind::SU2;
  FlowKind flow = FlowKind::Augmented;
  double a_index = 0.5;
  TimeMesh mesh;
  std::vector<FormField> snaps;  // C(t_n) (augmented) or A(t_n) (direct)
  std::map<std::string, std::vector<double>> series;

  explicit Trajectory(Workspace w) : ws(std::move(w)) {}

  int nodes() const { return static_cast<int>(snaps.size()); }
  double time(int i) const { return mesh.nodes[i]; }

  FormField phi_at(int i) const { return d_star(snaps[i]); }
  CurvaturePieces curv_at(int i) const { return curvature_pieces(snaps[i]); }
  /// Time derivative from the equation at node i.
  FormField velocity_at(int i) const;
};

Trajectory run_flow(const FormField& c0, const TimeMesh& mesh, FlowKind kind,
                    double a_index, const FlowOptions& opts = {});

/// One integrator step of the augmented equation C' = Delta C + X(C).
FormField step_augmented(const FormField& c, double h, const FlowOptions& opts);
/// One exponential step of the direct Yang-Mills flow A' = -d_A^* B_A.
FormField step_direct_ym(const FormField& a, double h, const FlowOptions& opts);

/// phi1(z) = (e^z - 1)/z and phi2(z) = (e^z - 1 - z)/z^2, stable near 0.
double etd_phi1(double z);
double etd_phi2(double z);

}  // namespace ymflow
