#pragma once

#include <map>
#include <vector>

#include "tik/algebra.hpp"
#include "tik/enumerate.hpp"
#include "tik/matspace.hpp"

namespace tik {

struct MatrixGroup {
  Field field;
  std::size_t n = 0;  // ambient matrix size
  std::vector<Mat> gens;
};

// Generators B_i = [[1, e_i^t, 0], [0, I_n, B_i], [0, 0, I_m]] with B_i = [A_1 e_i .. A_m e_i], and
// C_j = [[1, 0, e_j^t], [0, I_n, 0], [0, 0, I_m]]. The commutator map of the result is 2A.
MatrixGroup baer_group(const MatrixTuple& a);

// All elements by closure under the generators, sorted. Throws Budget past `budget` elements.
std::vector<Mat> enumerate_group(const MatrixGroup& g, u64 budget);

Mat commutator(const Mat& x, const Mat& y);  // x^-1 y^-1 x y

// Commutator map of a class-2, exponent-p group over bases of G/[G,G] and [G,G].
// Every element is written uniquely as prod_a basis[a]^c_a * prod_k center[k]^z_k (a, k ascending).
struct BaerMap {
  MatrixTuple slices;           // slice k, entry (a, b): coordinate k of [basis[a], basis[b]]
  std::size_t n = 0;            // dim G/[G,G]
  std::vector<Mat> basis;       // lifts of a basis of G/[G,G], chosen greedily from the generators
  std::vector<Mat> center;      // basis of [G,G]
  std::map<Mat, Vec> coords;    // element -> (c, z), length n + m
  std::size_t m() const { return center.size(); }
};
BaerMap baer_alt(const MatrixGroup& g, u64 budget);

// Truncated series over GF(p). Both need (g - I)^p = 0, resp. x^p = 0, so every denominator k or
// k! with k < p is invertible; checked.
Mat matrix_log(const Mat& g);
Mat matrix_exp(const Mat& x);

struct LieAlgebra {
  std::vector<Mat> basis;
  AlgebraSC sc;  // [b_i, b_j] = sum_k sc(i,j,k) b_k
};
// Span of the inputs closed under [x, y] = xy - yx.
LieAlgebra lie_closure(const std::vector<Mat>& gens);

}  // namespace tik
