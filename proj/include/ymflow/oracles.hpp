#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ymflow {

/// Randomized verification of the abstract functional inequalities on
/// admissible synthetic data; every trial reports a signed slack that must be
/// nonnegative up to quadrature tolerance.
struct OracleTrial {
  std::string name;
  double slack = 0;      // RHS - LHS
  double scale = 0;      // magnitude used for relative tolerances
  double rel() const { return slack / (scale > 0 ? scale : 1.0); }
};

std::vector<OracleTrial> oracle_lemu1(std::uint64_t seed, int trials);
std::vector<OracleTrial> oracle_actint(std::uint64_t seed, int trials);  // ce303
std::vector<OracleTrial> oracle_kernel_bound(std::uint64_t seed, int trials);  // ce304
std::vector<OracleTrial> oracle_initial_behavior(std::uint64_t seed, int trials);  // vs91/fa7/fa8.5
std::vector<OracleTrial> oracle_heat_power(std::uint64_t seed, int trials);  // hk0

/// Closed-form cross checks:
///  - lemu1 with constant beta, c = 3/4, b = 1 against the Beta-function
///    evaluation; returns |quadrature - closed form| / closed form.
double lemu1_beta_crosscheck();
/// Convolution constant (1/t) int_0^t (t-s)^-mu s^-nu ds = t^{-mu-nu} C_{mu,nu}
/// with C_{mu,nu} = B(1-nu, 1-mu).
double beta_convolution_constant(double mu, double nu);

}  // namespace ymflow
