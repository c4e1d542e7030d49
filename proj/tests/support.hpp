#pragma once

#include "tik/enumerate.hpp"
#include "tik/matspace.hpp"

namespace tik::testing {

// m alternating n x n slices that are linearly independent (needs m <= n(n-1)/2).
inline MatrixTuple independent_alternating(const Field& f, std::size_t n, std::size_t m, Rng& rng) {
  require(2 * m <= n * (n - 1), ErrorKind::Precondition, "more independent alternating slices than dim Lambda(n)");
  for (;;) {
    MatrixTuple t;
    for (std::size_t k = 0; k < m; ++k) t.push_back(random_alternating(f, n, rng));
    if (span_dim(t) == m) return t;
  }
}

inline MatrixTuple sandwich(const MatrixTuple& a, const Mat& p) {
  MatrixTuple out;
  for (const Mat& s : a) out.push_back(p.transpose() * s * p);
  return out;
}

inline Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace tik::testing
