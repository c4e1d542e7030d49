#pragma once

#include <cstdint>
#include <vector>

#include "tik/tensor.hpp"

namespace tik {

using Exponent = std::vector<std::uint8_t>;

// All exponent vectors of total degree d in n variables, lexicographically descending
// (x_1^d first). Shared per (n, d).
class MonomialBasis {
 public:
  static const MonomialBasis& get(std::size_t n, std::size_t d);
  std::size_t size() const { return mons_.size(); }
  const Exponent& at(std::size_t i) const { return mons_[i]; }
  std::size_t index_of(const Exponent& e) const;

 private:
  MonomialBasis(std::size_t n, std::size_t d);
  std::size_t n_, d_;
  std::vector<Exponent> mons_;
  std::vector<std::size_t> lookup_;
  u64 key(const Exponent& e) const;
};

// Homogeneous polynomial of degree d in n variables, dense over MonomialBasis(n, d).
class FormD {
 public:
  FormD(const Field& f, std::size_t n, std::size_t d);

  const Field& field() const { return f_; }
  u32 p() const { return f_.p(); }
  std::size_t vars() const { return n_; }
  std::size_t degree() const { return d_; }
  const MonomialBasis& basis() const { return *basis_; }
  const std::vector<u32>& coeffs() const { return c_; }
  u32 coeff(const Exponent& e) const { return c_[basis_->index_of(e)]; }
  void set(const Exponent& e, u32 v) { c_[basis_->index_of(e)] = v % f_.p(); }
  void add(const Exponent& e, u32 v);
  bool is_zero() const;

  bool operator==(const FormD& o) const { return f_ == o.f_ && n_ == o.n_ && d_ == o.d_ && c_ == o.c_; }
  bool operator!=(const FormD& o) const { return !(*this == o); }
  bool operator<(const FormD& o) const { return c_ < o.c_; }

  FormD scaled(u32 s) const;
  FormD operator+(const FormD& o) const;

  static FormD linear(const Field& f, const Vec& coeffs);
  static FormD constant(const Field& f, std::size_t n, u32 c);

 private:
  Field f_;
  std::size_t n_, d_;
  const MonomialBasis* basis_;
  std::vector<u32> c_;
};

FormD multiply(const FormD& a, const FormD& b);
// g(x) = f(P x)
FormD act_form(const FormD& f, const Mat& p);
// Same variables plus `extra` new ones appended at the end.
FormD extend_vars(const FormD& f, std::size_t extra);
// f(x) with the last variable set to zero, dropping it.
FormD drop_last_var(const FormD& f);

// Symmetric T with sum T(i,j,k) x_i x_j x_k = f; needs p >= 5.
TensorD symmetrize_cubic(const FormD& f);
// sum T(i,j,k) x_i x_j x_k
FormD evaluate_diag(const TensorD& t);

// { u : f(x + t u) == f(x) identically }, the directions f does not depend on. Brute force over F^n.
Mat invariant_directions(const FormD& f, u64 budget);

}  // namespace tik
