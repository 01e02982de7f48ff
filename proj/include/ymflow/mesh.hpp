#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ymflow {

/// Graded time mesh t_n = T (n/N)^gamma. The grading resolves the integrable
/// s^{-a} singular weights of the action functionals near t = 0.
struct TimeMesh {
  double horizon = 0;
  int steps = 0;
  double grading = 2.0;
  std::vector<double> nodes;

  TimeMesh() = default;
  TimeMesh(double T, int n_steps, double gamma)
      : horizon(T), steps(n_steps), grading(gamma) {
    if (!(T > 0) || n_steps < 1 || !(gamma >= 1.0))
      throw std::invalid_argument("TimeMesh: bad parameters");
    nodes.resize(n_steps + 1);
    for (int n = 0; n <= n_steps; ++n)
      nodes[n] = T * std::pow(static_cast<double>(n) / n_steps, gamma);
    nodes.front() = 0.0;
    nodes.back() = T;
  }

  static double default_grading(double a) {
    double g = 2.0 / (1.0 - a);
    return std::min(8.0, std::max(2.0, g));
  }
};

/// Quadrature of int_0^{t_m} s^{-a} f(s) ds by the substitution u = s^{1-a}
/// (so s^{-a} ds = du/(1-a)) and the trapezoid rule on the graded nodes.
/// f(0) is taken as f(t_1); the first cell contributes O(t_1^{1-a}).
inline double singular_weight_integral(const std::vector<double>& nodes,
                                       const std::vector<double>& f, double a,
                                       std::size_t m) {
  if (m >= nodes.size() || f.size() < nodes.size())
    throw std::invalid_argument("singular_weight_integral: bad sizes");
  double acc = 0.0;
  double one_minus_a = 1.0 - a;
  for (std::size_t n = 1; n <= m; ++n) {
    double u0 = std::pow(nodes[n - 1], one_minus_a);
    double u1 = std::pow(nodes[n], one_minus_a);
    double f0 = (n == 1 && nodes[0] == 0.0) ? f[1] : f[n - 1];
    acc += 0.5 * (u1 - u0) * (f0 + f[n]);
  }
  return acc / one_minus_a;
}

/// Plain trapezoid of int_{t_j}^{t_m} f(s) ds over the mesh nodes.
inline double trapezoid_integral(const std::vector<double>& nodes,
                                 const std::vector<double>& f, std::size_t j,
                                 std::size_t m) {
  double acc = 0.0;
  for (std::size_t n = j + 1; n <= m; ++n)
    acc += 0.5 * (nodes[n] - nodes[n - 1]) * (f[n - 1] + f[n]);
  return acc;
}

}  // namespace ymflow
