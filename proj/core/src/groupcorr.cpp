#include "tik/groupcorr.hpp"

#include <deque>
#include <set>

namespace tik {

namespace {

Mat power(const Mat& g, u64 e) { return mat_pow(g, e); }

// Closure of `seed` (a subgroup, as a set) under right multiplication by powers of g.
std::set<Mat> extend_by(const std::set<Mat>& seed, const Mat& g) {
  std::set<Mat> out;
  Mat gt = Mat::identity(g.field(), g.rows());
  for (u32 t = 0; t < g.p(); ++t) {
    for (const Mat& s : seed) out.insert(s * gt);
    gt = gt * g;
  }
  return out;
}

}  // namespace

MatrixGroup baer_group(const MatrixTuple& a) {
  require(!a.empty(), ErrorKind::Precondition, "baer_group needs at least one slice");
  check_tuple_shape(a);
  require(tuple_alternating(a), ErrorKind::Precondition, "baer_group needs alternating slices");
  const std::size_t m = a.size();
  const Field f = a[0].field();
  require(f.p() % 2 == 1, ErrorKind::Precondition, "baer_group needs an odd prime");
  const std::size_t n = a[0].rows(), side = 1 + n + m;

  MatrixGroup g{f, side, {}};
  for (std::size_t i = 0; i < n; ++i) {
    Mat b = Mat::identity(f, side);
    b(0, 1 + i) = 1;
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t r = 0; r < n; ++r) b(1 + r, 1 + n + k) = a[k](r, i);
    g.gens.push_back(b);
  }
  for (std::size_t j = 0; j < m; ++j) {
    Mat c = Mat::identity(f, side);
    c(0, 1 + n + j) = 1;
    g.gens.push_back(c);
  }
  return g;
}

std::vector<Mat> enumerate_group(const MatrixGroup& g, u64 budget) {
  std::set<Mat> seen{Mat::identity(g.field, g.n)};
  std::deque<Mat> queue{Mat::identity(g.field, g.n)};
  while (!queue.empty()) {
    Mat x = queue.front();
    queue.pop_front();
    for (const Mat& s : g.gens) {
      Mat y = x * s;
      if (seen.insert(y).second) {
        if (seen.size() > budget) fail(ErrorKind::Budget, "group enumeration exceeds budget " + std::to_string(budget));
        queue.push_back(std::move(y));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

Mat commutator(const Mat& x, const Mat& y) { return inverse(x) * inverse(y) * x * y; }

BaerMap baer_alt(const MatrixGroup& g, u64 budget) {
  const Field& f = g.field;
  const u32 p = f.p();
  require(p % 2 == 1, ErrorKind::Precondition, "baer_alt needs an odd prime");
  for (const Mat& s : g.gens)
    require(s.rows() == g.n && s.cols() == g.n && is_upper_unitriangular(s), ErrorKind::Precondition,
            "baer_alt needs unitriangular generators");

  const Mat id = Mat::identity(f, g.n);
  std::vector<Mat> elements = enumerate_group(g, budget);
  for (const Mat& x : elements)
    require(power(x, p) == id, ErrorKind::Precondition, "group violates exponent p: some g^p != 1");

  // Commutators of generator pairs must be central; then [G,G] is central and spanned by them.
  std::vector<Mat> comms;
  for (std::size_t a = 0; a < g.gens.size(); ++a)
    for (std::size_t b = a + 1; b < g.gens.size(); ++b) {
      Mat c = commutator(g.gens[a], g.gens[b]);
      for (const Mat& s : g.gens)
        require(c * s == s * c, ErrorKind::Precondition, "group violates class 2: [[x,y],z] != 1 for generators");
      comms.push_back(std::move(c));
    }

  BaerMap out;
  std::set<Mat> derived{id};
  for (const Mat& c : comms) {
    if (derived.count(c)) continue;
    out.center.push_back(c);
    derived = extend_by(derived, c);
  }
  std::set<Mat> reached = derived;
  for (const Mat& s : g.gens) {
    if (reached.count(s)) continue;
    out.basis.push_back(s);
    reached = extend_by(reached, s);
  }
  out.n = out.basis.size();
  const std::size_t m = out.center.size();
  require(reached.size() == elements.size(), ErrorKind::Precondition, "generators do not reach the enumerated group");

  // Normal form prod_a basis[a]^c_a * prod_k center[k]^z_k, over all coordinate vectors.
  const std::size_t len = out.n + m;
  const u64 total = checked_pow(p, len);
  require(total == elements.size(), ErrorKind::Precondition, "group order is not p^(n+m) for the computed bases");
  for (u64 idx = 0; idx < total; ++idx) {
    Vec v = vec_from_index(idx, len, p);
    Mat x = id;
    for (std::size_t a = 0; a < out.n; ++a) x = x * power(out.basis[a], v[a]);
    for (std::size_t k = 0; k < m; ++k) x = x * power(out.center[k], v[out.n + k]);
    require(out.coords.emplace(std::move(x), v).second, ErrorKind::Precondition,
            "normal form is not unique; the group is not class 2 with exponent p");
  }

  out.slices.assign(m, Mat(f, out.n, out.n));
  for (std::size_t a = 0; a < out.n; ++a)
    for (std::size_t b = 0; b < out.n; ++b) {
      const Vec& v = out.coords.at(commutator(out.basis[a], out.basis[b]));
      for (std::size_t k = 0; k < m; ++k) out.slices[k](a, b) = v[out.n + k];
    }
  return out;
}

Mat matrix_log(const Mat& g) {
  require(g.square(), ErrorKind::Dimension, "matrix_log needs a square matrix");
  const Field& f = g.field();
  const Mat nil = g - Mat::identity(f, g.rows());
  require(power(nil, f.p()).is_zero(), ErrorKind::Precondition,
          "matrix_log needs (g - I)^p = 0; the series denominators vanish otherwise");
  Mat out(f, g.rows(), g.cols());
  Mat term = nil;
  for (u32 k = 1; k < f.p(); ++k) {
    u32 c = f.inv(k);
    out = out + term.scaled(k % 2 ? c : f.neg(c));
    term = term * nil;
  }
  return out;
}

Mat matrix_exp(const Mat& x) {
  require(x.square(), ErrorKind::Dimension, "matrix_exp needs a square matrix");
  const Field& f = x.field();
  require(power(x, f.p()).is_zero(), ErrorKind::Precondition,
          "matrix_exp needs x^p = 0; the series denominators vanish otherwise");
  Mat out = Mat::identity(f, x.rows());
  Mat term = out;
  u32 fact = 1;
  for (u32 k = 1; k < f.p(); ++k) {
    term = term * x;
    fact = f.mul(fact, k);
    out = out + term.scaled(f.inv(fact));
  }
  return out;
}

LieAlgebra lie_closure(const std::vector<Mat>& gens) {
  require(!gens.empty(), ErrorKind::Precondition, "lie_closure needs at least one matrix to fix the shape");
  const Field& f = gens[0].field();
  const std::size_t n = gens[0].rows();
  for (const Mat& g : gens) require(g.rows() == n && g.cols() == n, ErrorKind::Dimension, "lie_closure needs equal square shapes");

  Span span(f, n * n);
  std::vector<Mat> basis;
  auto offer = [&](const Mat& x) {
    if (span.add(flatten(x))) basis.push_back(x);
  };
  for (const Mat& g : gens) offer(g);
  // Every pair is bracketed once; new elements join the end of the list and get paired later.
  for (std::size_t j = 1; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) offer(basis[i] * basis[j] - basis[j] * basis[i]);

  const std::size_t d = basis.size();
  Tensor3 sc(f, d, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec c = *span.coords(flatten(basis[i] * basis[j] - basis[j] * basis[i]));
      for (std::size_t k = 0; k < d; ++k) sc(i, j, k) = c[k];
    }
  return {basis, AlgebraSC(sc)};
}

}  // namespace tik
