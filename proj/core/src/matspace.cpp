#include "tik/matspace.hpp"

#include <functional>

#include "tik/enumerate.hpp"

namespace tik {

void check_tuple_shape(const MatrixTuple& t) {
  for (const auto& m : t)
    require(m.rows() == t.front().rows() && m.cols() == t.front().cols() && m.p() == t.front().p(),
            ErrorKind::Dimension, "tuple slices differ in shape or field");
}

bool tuple_alternating(const MatrixTuple& t) {
  for (const auto& m : t)
    if (!is_alternating(m)) return false;
  return true;
}

bool tuple_symmetric(const MatrixTuple& t) {
  for (const auto& m : t)
    if (!is_symmetric(m)) return false;
  return true;
}

Span tuple_span(const MatrixTuple& t, const Field& f, std::size_t rows, std::size_t cols) {
  Span s(f, rows * cols);
  for (const auto& m : t) {
    require(m.rows() == rows && m.cols() == cols, ErrorKind::Dimension, "span: slice shape");
    s.add(flatten(m));
  }
  return s;
}

bool span_contains(const MatrixTuple& space, const Mat& m) {
  if (space.empty()) return m.is_zero();
  Span s = tuple_span(space, space.front().field(), space.front().rows(), space.front().cols());
  require(m.rows() == space.front().rows() && m.cols() == space.front().cols(), ErrorKind::Dimension,
          "span membership: shape");
  return s.contains(flatten(m));
}

std::size_t span_dim(const MatrixTuple& t) {
  if (t.empty()) return 0;
  return tuple_span(t, t.front().field(), t.front().rows(), t.front().cols()).dim();
}

bool span_equal(const MatrixTuple& a, const MatrixTuple& b) {
  if (a.empty() || b.empty()) return span_dim(a) == span_dim(b);
  require(a.front().rows() == b.front().rows() && a.front().cols() == b.front().cols(), ErrorKind::Dimension,
          "span equality: shape");
  Span sa = tuple_span(a, a.front().field(), a.front().rows(), a.front().cols());
  for (const auto& m : b)
    if (!sa.contains(flatten(m))) return false;
  return sa.dim() == span_dim(b);
}

MatrixSpace::MatrixSpace(MatrixTuple basis) : basis_(std::move(basis)) {
  check_tuple_shape(basis_);
  require(span_dim(basis_) == basis_.size(), ErrorKind::Precondition, "matrix space basis is dependent");
  alternating_ = tuple_alternating(basis_);
  symmetric_ = tuple_symmetric(basis_);
}

Mat combine(const MatrixTuple& t, const Vec& c) {
  require(!t.empty() && c.size() == t.size(), ErrorKind::Dimension, "combine: length");
  const Field& f = t.front().field();
  Mat out(f, t.front().rows(), t.front().cols());
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!c[k]) continue;
    const auto& src = t[k].data();
    auto& dst = out.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = f.add(dst[i], f.mul(c[k], src[i]));
  }
  return out;
}

MatrixTuple mix(const MatrixTuple& t, const Mat& r) {
  require(r.rows() == t.size(), ErrorKind::Dimension, "mix: matrix rows must equal slice count");
  MatrixTuple out;
  out.reserve(r.cols());
  for (std::size_t k = 0; k < r.cols(); ++k) out.push_back(combine(t, r.col(k)));
  return out;
}

std::optional<Mat> solve_mixing(const MatrixTuple& source, const MatrixTuple& target, u64 budget) {
  if (source.size() != target.size()) return std::nullopt;
  const std::size_t m = source.size();
  if (m == 0) return Mat();
  const Field f = source.front().field();
  const std::size_t len = source.front().rows() * source.front().cols();
  // Columns of a are the flattened source slices: a * r_col = flattened target slice.
  Mat a(f, len, m), rhs(f, len, m);
  for (std::size_t k = 0; k < m; ++k) {
    require(source[k].rows() * source[k].cols() == len && target[k].rows() * target[k].cols() == len,
            ErrorKind::Dimension, "solve_mixing: slice shape");
    for (std::size_t i = 0; i < len; ++i) {
      a(i, k) = source[k].data()[i];
      rhs(i, k) = target[k].data()[i];
    }
  }
  Solution s = solve(a, rhs);
  if (!s.consistent) return std::nullopt;
  if (s.nullspace.cols() == 0) {
    if (invertible(s.particular)) return s.particular;
    return std::nullopt;
  }
  // Each column independently ranges over particular + nullspace; search for an invertible choice.
  const std::size_t kdim = s.nullspace.cols();
  const u64 per_col = checked_pow(f.p(), kdim);
  check_budget(checked_pow(per_col, m), budget, "mixing solution space");
  Mat r(f, m, m);
  Span chosen(f, m);
  std::function<bool(std::size_t, const Span&)> rec = [&](std::size_t col, const Span& sp) -> bool {
    if (col == m) return true;
    for (u64 idx = 0; idx < per_col; ++idx) {
      Vec t = vec_from_index(idx, kdim, f.p());
      Vec v = s.particular.col(col);
      Vec add = s.nullspace.apply(t);
      for (std::size_t i = 0; i < m; ++i) v[i] = f.add(v[i], add[i]);
      if (sp.contains(v)) continue;
      Span next = sp;
      next.add(v);
      for (std::size_t i = 0; i < m; ++i) r(i, col) = v[i];
      if (rec(col + 1, next)) return true;
    }
    return false;
  };
  if (rec(0, chosen)) return r;
  return std::nullopt;
}

std::size_t lateral_rank(const MatrixTuple& t, const Vec& u) {
  if (t.empty()) return 0;
  const Field& f = t.front().field();
  Mat m(f, t.front().rows(), t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    Vec col = t[k].apply(u);
    for (std::size_t i = 0; i < col.size(); ++i) m(i, k) = col[i];
  }
  return rank(m);
}

}  // namespace tik
