#include "ymflow/form_field.hpp"

#include <cmath>
#include <stdexcept>

namespace ymflow {

FormField::FormField(Workspace ws, GroupKind kind, int degree)
    : ws_(std::move(ws)),
      kind_(kind),
      degree_(degree),
      comps_(component_count(degree)),
      kdim_(algebra_dim(kind)) {
  data_.assign(comps_ * kdim_, rvec(ws_.geom().sites(), 0.0));
}

bool FormField::compatible(const FormField& o) const {
  return kind_ == o.kind_ && degree_ == o.degree_ && geom() == o.geom() &&
         mirror_ == o.mirror_;
}

FormField& FormField::operator+=(const FormField& o) {
  if (!compatible(o)) throw std::invalid_argument("FormField: incompatible operands");
  for (std::size_t c = 0; c < data_.size(); ++c)
    for (std::size_t i = 0; i < data_[c].size(); ++i) data_[c][i] += o.data_[c][i];
  return *this;
}

FormField& FormField::operator-=(const FormField& o) {
  if (!compatible(o)) throw std::invalid_argument("FormField: incompatible operands");
  for (std::size_t c = 0; c < data_.size(); ++c)
    for (std::size_t i = 0; i < data_[c].size(); ++i) data_[c][i] -= o.data_[c][i];
  return *this;
}

FormField& FormField::operator*=(double s) {
  for (auto& comp : data_)
    for (auto& v : comp) v *= s;
  return *this;
}

void FormField::axpy(double a, const FormField& x) {
  if (!compatible(x)) throw std::invalid_argument("FormField: incompatible operands");
  for (std::size_t c = 0; c < data_.size(); ++c)
    for (std::size_t i = 0; i < data_[c].size(); ++i) data_[c][i] += a * x.data_[c][i];
}

FormField FormField::operator+(const FormField& o) const {
  FormField r = *this;
  r += o;
  return r;
}
FormField FormField::operator-(const FormField& o) const {
  FormField r = *this;
  r -= o;
  return r;
}
FormField FormField::operator*(double s) const {
  FormField r = *this;
  r *= s;
  return r;
}

rvec FormField::pointwise_norm() const {
  rvec out(geom().sites(), 0.0);
  for (const auto& comp : data_)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += comp[i] * comp[i];
  for (auto& v : out) v = std::sqrt(v);
  return out;
}

SpectralForm::SpectralForm(Workspace ws, GroupKind kind, int degree)
    : ws_(std::move(ws)),
      kind_(kind),
      degree_(degree),
      comps_(component_count(degree)),
      kdim_(algebra_dim(kind)) {
  data_.assign(comps_ * kdim_, cvec(ws_.geom().sites(), {0.0, 0.0}));
}

SpectralForm& SpectralForm::operator+=(const SpectralForm& o) {
  for (std::size_t c = 0; c < data_.size(); ++c)
    for (std::size_t i = 0; i < data_[c].size(); ++i) data_[c][i] += o.data_[c][i];
  return *this;
}

SpectralForm& SpectralForm::operator-=(const SpectralForm& o) {
  for (std::size_t c = 0; c < data_.size(); ++c)
    for (std::size_t i = 0; i < data_[c].size(); ++i) data_[c][i] -= o.data_[c][i];
  return *this;
}

SpectralForm& SpectralForm::operator*=(double s) {
  for (auto& comp : data_)
    for (auto& v : comp) v *= s;
  return *this;
}

void SpectralForm::axpy(double a, const SpectralForm& x) {
  for (std::size_t c = 0; c < data_.size(); ++c)
    for (std::size_t i = 0; i < data_[c].size(); ++i) data_[c][i] += a * x.data_[c][i];
}

double SpectralForm::l2_norm() const {
  double s = 0.0;
  for (const auto& comp : data_)
    for (const auto& v : comp) s += std::norm(v);
  return std::sqrt(s);
}

SpectralForm to_spectral(const FormField& f) {
  SpectralForm s(f.ws(), f.kind(), f.degree());
  s.set_mirror(f.mirror());
  for (int c = 0; c < f.components(); ++c)
    for (int kc = 0; kc < f.kdim(); ++kc)
      s.data(c, kc) = f.ws().tr->forward(f.data(c, kc), f.parity(c));
  return s;
}

FormField to_grid(const SpectralForm& s) {
  FormField f(s.ws(), s.kind(), s.degree());
  f.set_mirror(s.mirror());
  for (int c = 0; c < s.components(); ++c)
    for (int kc = 0; kc < s.kdim(); ++kc)
      f.data(c, kc) = s.ws().tr->inverse(s.data(c, kc), s.parity(c));
  return f;
}

}  // namespace ymflow
