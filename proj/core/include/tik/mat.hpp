#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tik/gf.hpp"

namespace tik {

using Vec = std::vector<u32>;

// Dense row-major matrix over a prime field.
class Mat {
 public:
  Mat() : f_(Field::trusted(2)) {}
  Mat(const Field& f, std::size_t rows, std::size_t cols) : f_(f), r_(rows), c_(cols), a_(rows * cols, 0) {}

  static Mat identity(const Field& f, std::size_t n);
  // Entries given row-major as integers, reduced mod p.
  static Mat from_ints(const Field& f, std::size_t rows, std::size_t cols, const std::vector<long long>& v);
  static Mat column(const Field& f, const Vec& v);
  static Mat scalar(const Field& f, u32 s) { return from_ints(f, 1, 1, {s}); }

  const Field& field() const { return f_; }
  u32 p() const { return f_.p(); }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }

  u32& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  u32 operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  const std::vector<u32>& data() const { return a_; }
  std::vector<u32>& data() { return a_; }

  bool operator==(const Mat& o) const { return f_ == o.f_ && r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool operator<(const Mat& o) const;

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat scaled(u32 s) const;
  Mat transpose() const;
  Vec apply(const Vec& v) const;
  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  bool is_zero() const;

  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);

  std::string to_string() const;

 private:
  Field f_;
  std::size_t r_ = 0, c_ = 0;
  std::vector<u32> a_;
};

Mat block_diag(const std::vector<Mat>& blocks);
Mat kron(const Mat& a, const Mat& b);
Mat mat_pow(const Mat& m, u64 e);

// Reduced row-echelon form with leftmost pivot and first-nonzero-row choice.
struct Rref {
  Mat m;
  std::vector<std::size_t> pivots;
};
Rref rref(Mat m);
std::size_t rank(const Mat& m);
u32 det(const Mat& m);
std::optional<Mat> try_inverse(const Mat& m);
Mat inverse(const Mat& m);
bool invertible(const Mat& m);

// Basis of {x : m x = 0} as columns.
Mat right_kernel(const Mat& m);
// Basis of {y : yᵗ m = 0} as rows.
Mat left_kernel(const Mat& m);

// Solves m X = rhs. When consistent, every solution is particular + nullspace * t.
struct Solution {
  bool consistent = false;
  Mat particular;
  Mat nullspace;
};
Solution solve(const Mat& m, const Mat& rhs);

bool is_monomial(const Mat& m);
bool is_permutation(const Mat& m);
bool is_diagonal(const Mat& m);
bool is_alternating(const Mat& m);
bool is_symmetric(const Mat& m);
bool is_upper_unitriangular(const Mat& m);

// Single nonzero alpha[c] per column c, sitting in row perm[c].
struct MonomialMatrix {
  std::vector<std::size_t> perm;
  std::vector<u32> scale;
  Mat expand(const Field& f) const;
  static MonomialMatrix from_mat(const Mat& m);
};

// Elementary matrix E_{ij} of given shape.
Mat unit_matrix(const Field& f, std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);

// Incrementally maintained span inside F^dim with coordinates over accepted generators.
class Span {
 public:
  Span(const Field& f, std::size_t dim) : f_(f), n_(dim) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }
  // Adds v when it is independent of the current span; returns whether it was added.
  bool add(const Vec& v);
  bool contains(const Vec& v) const;
  Vec residual(Vec v) const;
  // Coefficients of v over the accepted generators, in insertion order.
  std::optional<Vec> coords(const Vec& v) const;
  const std::vector<Vec>& generators() const { return gens_; }

 private:
  Field f_;
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> piv_;
  std::vector<Vec> comb_;
  std::vector<Vec> gens_;
};

Vec flatten(const Mat& m);
Mat unflatten(const Field& f, std::size_t rows, std::size_t cols, const Vec& v);

// Lexicographic index of a vector read as a base-p numeral, first coordinate most significant.
u64 vec_index(const Vec& v, u32 p);
Vec vec_from_index(u64 idx, std::size_t n, u32 p);

}  // namespace tik
