#pragma once

#include "ymflow/form_field.hpp"

namespace ymflow {

// Norms and inner products (midpoint quadrature, consistent with transforms).
double l2_inner(const FormField& a, const FormField& b);
double l2_norm(const FormField& f);
double lp_norm(const FormField& f, double p);  // p = inf -> sup norm
double linf_norm(const FormField& f);
double sobolev_norm(const FormField& f, double a);
double sobolev_norm(const SpectralForm& s, double a);

// Exterior derivative / coderivative (spectral; exact complex: d^2 = 0).
SpectralForm d(const SpectralForm& s);
SpectralForm d_star(const SpectralForm& s);
FormField d(const FormField& f);
FormField d_star(const FormField& f);

// Functional calculus of the form Laplacian.
SpectralForm heat_semigroup(const SpectralForm& s, double t);
FormField heat_semigroup(const FormField& f, double t);
SpectralForm fractional_power(const SpectralForm& s, double a);
FormField fractional_power(const FormField& f, double a);
SpectralForm minus_laplacian(const SpectralForm& s);  // multiply by lambda

// L2-orthogonal projection onto exact 1-forms (per-mode gradient direction).
SpectralForm vertical_projection(const SpectralForm& s);
FormField vertical_projection(const FormField& f);

// Pointwise commutator products (grid-level; dealias filter per workspace).
FormField wedge_bracket(const FormField& u, const FormField& v);
FormField interior_bracket(const FormField& u, const FormField& v);

/// Pointwise product from the Bochner-Weitzenboeck formula:
/// -(d_C d_C^* + d_C^* d_C) w = sum_j (grad_j^C)^2 w + B # w, with
///   (B # w)_j  = sum_k [B_jk, w_k]                       on 1-forms,
///   (B # w)_jk = sum_i ([B_ik, w_ij] - [B_ij, w_ik])     on 2-forms,
/// and zero on 0- and 3-forms (derived from [grad_i, grad_j] = ad B_ij).
FormField bochner_product(const FormField& B, const FormField& w);

/// sum_j (grad_j^C)^2 w with grad_j^C = spectral d_j + ad(C_j).
FormField rough_laplacian(const FormField& C, const FormField& w);

// Covariant operators and the Yang-Mills structures.
FormField covariant_d(const FormField& C, const FormField& w);
FormField covariant_d_star(const FormField& C, const FormField& w);

/// Curvature split into its exact derivative part and the commutator part;
/// the pieces live in different parity classes under Dirichlet conditions and
/// downstream derivatives must act on them separately.
FormField grid_sum(const FormField& a, const FormField& b);

struct CurvaturePieces {
  FormField lin;   // dC
  FormField quad;  // (1/2)[C ^ C]
  FormField total() const { return grid_sum(lin, quad); }
};
CurvaturePieces curvature_pieces(const FormField& C);
FormField curvature(const FormField& C);

/// d_C^* B_C computed exactly through the curvature pieces.
FormField ym_drift(const FormField& C, const CurvaturePieces& B);

/// The nonlinearity of the augmented equation, defined by the splitting
/// d_C^* B + d_C d^* C = (d^* d + d d^*) C - X(C) (the correctness test).
FormField nonlinearity_x(const FormField& C);

/// Covariant operators applied to a list of parity-class pieces; every
/// derivative acts in its piece's own class (needed for exact identity
/// checks under Dirichlet conditions, where products change class).
std::vector<FormField> covariant_d_pieces(const FormField& C,
                                          const std::vector<FormField>& pieces);
std::vector<FormField> covariant_d_star_pieces(const FormField& C,
                                               const std::vector<FormField>& pieces);

/// Pointwise bracket accumulation out += s * [a, b] on matching lattices.
void accumulate_site_bracket(GroupKind kind, double s, const rvec* a, const rvec* b,
                             rvec* out);

}  // namespace ymflow
