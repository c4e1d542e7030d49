#pragma once

#include <optional>
#include <vector>

#include "tik/mat.hpp"

namespace tik {

// Ordered slices of identical shape.
using MatrixTuple = std::vector<Mat>;

void check_tuple_shape(const MatrixTuple& t);
bool tuple_alternating(const MatrixTuple& t);
bool tuple_symmetric(const MatrixTuple& t);

// Span of the flattened slices of t.
Span tuple_span(const MatrixTuple& t, const Field& f, std::size_t rows, std::size_t cols);
bool span_contains(const MatrixTuple& space, const Mat& m);
bool span_equal(const MatrixTuple& a, const MatrixTuple& b);
std::size_t span_dim(const MatrixTuple& t);

// A tuple whose slices are linearly independent; the flags are computed, not trusted.
class MatrixSpace {
 public:
  explicit MatrixSpace(MatrixTuple basis);
  const MatrixTuple& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  bool alternating() const { return alternating_; }
  bool symmetric() const { return symmetric_; }
  bool contains(const Mat& m) const { return span_contains(basis_, m); }
  bool operator==(const MatrixSpace& o) const { return span_equal(basis_, o.basis_); }

 private:
  MatrixTuple basis_;
  bool alternating_ = false, symmetric_ = false;
};

// Linear combination sum_k c[k] * t[k].
Mat combine(const MatrixTuple& t, const Vec& c);
// New slice k' is sum_k r(k,k') * t[k]; the slice mix uses columns of r.
MatrixTuple mix(const MatrixTuple& t, const Mat& r);

// Invertible r with target == mix(source, r). Dependent sources leave freedom; it is
// searched within the budget and the first invertible choice in lexicographic order wins.
std::optional<Mat> solve_mixing(const MatrixTuple& source, const MatrixTuple& target, u64 budget);

// dim of { S u : S in span(t) }, the rank of the matrix [t_1 u, ..., t_m u].
std::size_t lateral_rank(const MatrixTuple& t, const Vec& u);

}  // namespace tik
