#pragma once

#include "ymflow/form_field.hpp"

namespace ymflow {

/// Discrete Sobolev constants of one lattice geometry, estimated once by
/// maximizing the relevant Rayleigh quotients over random trial fields plus
/// the extremal low modes, then frozen with a 1.05 safety factor. They stand
/// in for the continuum constants in every inequality check.
struct SobolevConstants {
  double kappa6 = 0;   // |u|_6 <= kappa6 |u|_{H1}, 0- and 1-forms
  double kappa = 0;    // Gaffney-Friedrichs-Sobolev constant, degrees 0..2
  double kappa3 = 0;   // |u|_3 <= kappa3 |u|_{H1/2}, degrees 0..2
  double c = 0;        // commutator bound of the structure group

  // coefficient bundle of the differential inequalities
  double a1() const { return 0.5; }
  double a2() const { return 2.0 * kappa6 * kappa6 * std::pow(c, 4); }
  double b1() const { return 0.75; }
  double b2() const { return std::pow(4.0 * kappa * c * c, 2); }
  double b3() const {
    return std::pow(kappa, 6) * std::pow(c, 4) * (19.0 * 27.0 / 16.0);
  }
  double gamma() const { return 6.75 * std::pow(kappa, 6) * std::pow(c, 4); }
  double lambda_of_b(double b_l2) const {
    return 1.0 + gamma() * std::pow(b_l2, 4);
  }
  double c1() const { return std::sqrt(2.0) * c * kappa6; }  // Ad g multiplier
  double c2() const { return kappa3 * c1(); }                // rho_a estimates
};

SobolevConstants measure_sobolev_constants(const Workspace& ws, GroupKind kind,
                                           unsigned seed = 2024);

/// Random band-limited scalar lattice of the given parity class (helper for
/// the Rayleigh sweeps and for test field construction).
FormField random_band_limited(const Workspace& ws, GroupKind kind, int degree,
                              int max_mode, double amplitude, unsigned seed);

}  // namespace ymflow
