#pragma once

#include <vector>

#include "ymflow/lie.hpp"
#include "ymflow/transform.hpp"

namespace ymflow {

/// Grid-sampled Lie-algebra valued p-form. Each component carries dim(k)
/// real lattices holding the coordinates in the orthonormal algebra basis,
/// under the parity signature mandated by (degree, bc flavor).
class FormField {
 public:
  FormField(Workspace ws, GroupKind kind, int degree);

  int degree() const { return degree_; }
  GroupKind kind() const { return kind_; }
  int components() const { return static_cast<int>(comps_); }
  int kdim() const { return kdim_; }
  const Workspace& ws() const { return ws_; }
  const LatticeGeometry& geom() const { return ws_.geom(); }
  /// Parity class of one component: the mandated table, with every axis tag
  /// flipped when the field lives in the mirror class (products of fields
  /// land there under Dirichlet conditions).
  ParitySig parity(int comp) const {
    ParitySig s = parity_for(geom().flavor, degree_, comp);
    if (mirror_)
      for (int m = 0; m < 3; ++m) s = Transformer::flip(s, m);
    return s;
  }
  bool mirror() const { return mirror_; }
  void set_mirror(bool m) { mirror_ = m; }

  rvec& data(int comp, int kc) { return data_[comp * kdim_ + kc]; }
  const rvec& data(int comp, int kc) const { return data_[comp * kdim_ + kc]; }

  FormField& operator+=(const FormField& o);
  FormField& operator-=(const FormField& o);
  FormField& operator*=(double s);
  void axpy(double a, const FormField& x);  // this += a*x
  FormField operator+(const FormField& o) const;
  FormField operator-(const FormField& o) const;
  FormField operator*(double s) const;

  /// Pointwise |omega(x)| over form and algebra indices.
  rvec pointwise_norm() const;

  bool compatible(const FormField& o) const;

 private:
  Workspace ws_;
  GroupKind kind_;
  int degree_;
  std::size_t comps_;
  int kdim_;
  bool mirror_ = false;
  std::vector<rvec> data_;
};

/// Spectral counterpart of FormField (coefficients per component/coordinate).
class SpectralForm {
 public:
  SpectralForm(Workspace ws, GroupKind kind, int degree);

  int degree() const { return degree_; }
  GroupKind kind() const { return kind_; }
  int components() const { return static_cast<int>(comps_); }
  int kdim() const { return kdim_; }
  const Workspace& ws() const { return ws_; }
  ParitySig parity(int comp) const {
    ParitySig s = parity_for(ws_.geom().flavor, degree_, comp);
    if (mirror_)
      for (int m = 0; m < 3; ++m) s = Transformer::flip(s, m);
    return s;
  }
  bool mirror() const { return mirror_; }
  void set_mirror(bool m) { mirror_ = m; }

  cvec& data(int comp, int kc) { return data_[comp * kdim_ + kc]; }
  const cvec& data(int comp, int kc) const { return data_[comp * kdim_ + kc]; }

  SpectralForm& operator+=(const SpectralForm& o);
  SpectralForm& operator-=(const SpectralForm& o);
  SpectralForm& operator*=(double s);
  void axpy(double a, const SpectralForm& x);

  double l2_norm() const;

 private:
  Workspace ws_;
  GroupKind kind_;
  int degree_;
  std::size_t comps_;
  int kdim_;
  bool mirror_ = false;
  std::vector<cvec> data_;
};

SpectralForm to_spectral(const FormField& f);
FormField to_grid(const SpectralForm& s);

}  // namespace ymflow
