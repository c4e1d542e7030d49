#include "tik/algebra.hpp"

#include <algorithm>

namespace tik {

AlgebraSC::AlgebraSC(Tensor3 sc) : sc_(std::move(sc)) {
  require(sc_.dim(0) == sc_.dim(1) && sc_.dim(1) == sc_.dim(2), ErrorKind::Dimension,
          "structure constants must be n x n x n");
}

Vec AlgebraSC::mul(const Vec& a, const Vec& b) const {
  const std::size_t n = dim();
  require(a.size() == n && b.size() == n, ErrorKind::Dimension, "algebra product: vector length");
  const Field& f = field();
  std::vector<u64> acc(n, 0);
  const u64 p = f.p();
  for (std::size_t i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!b[j]) continue;
      u64 c = static_cast<u64>(a[i]) * b[j] % p;
      for (std::size_t k = 0; k < n; ++k) acc[k] = (acc[k] + c * sc_(i, j, k)) % p;
    }
  }
  return Vec(acc.begin(), acc.end());
}

Vec AlgebraSC::basis(std::size_t i) const {
  Vec v(dim(), 0);
  v[i] = 1;
  return v;
}

bool AlgebraSC::associative() const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec ij = mul(basis(i), basis(j));
      for (std::size_t k = 0; k < n; ++k)
        if (mul(ij, basis(k)) != mul(basis(i), mul(basis(j), basis(k)))) return false;
    }
  return true;
}

bool AlgebraSC::commutative() const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (sc_(i, j, k) != sc_(j, i, k)) return false;
  return true;
}

bool AlgebraSC::alternating() const {
  const Field& f = field();
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (sc_(i, i, k)) return false;
      for (std::size_t j = 0; j < n; ++j)
        if (sc_(i, j, k) != f.neg(sc_(j, i, k))) return false;
    }
  return true;
}

bool AlgebraSC::jacobi() const {
  const Field& f = field();
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec a = mul(basis(i), mul(basis(j), basis(k)));
        Vec b = mul(basis(j), mul(basis(k), basis(i)));
        Vec c = mul(basis(k), mul(basis(i), basis(j)));
        for (std::size_t t = 0; t < n; ++t)
          if (f.add(f.add(a[t], b[t]), c[t])) return false;
      }
  return true;
}

bool AlgebraSC::nilpotent3() const {
  const std::size_t n = dim();
  Vec zero(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec ij = mul(basis(i), basis(j));
      for (std::size_t k = 0; k < n; ++k) {
        if (mul(ij, basis(k)) != zero) return false;
        if (mul(basis(k), ij) != zero) return false;
      }
    }
  return true;
}

std::optional<Vec> AlgebraSC::unit() const {
  // Solve u * x_j = x_j and x_j * u = x_j for all j as one linear system in u.
  const std::size_t n = dim();
  const Field& f = field();
  Mat a(f, 2 * n * n, n), rhs(f, 2 * n * n, 1);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        a(j * n + k, i) = sc_(i, j, k);
        a(n * n + j * n + k, i) = sc_(j, i, k);
      }
      rhs(j * n + k, 0) = rhs(n * n + j * n + k, 0) = (j == k);
    }
  Solution s = solve(a, rhs);
  if (!s.consistent) return std::nullopt;
  return s.particular.col(0);
}

AlgebraSC act_algebra(const AlgebraSC& a, const Mat& p) {
  return AlgebraSC(act(a.sc(), Witness{Tag::AlgebraIso, {p}}));
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::canonical_edges() const {
  auto e = edges;
  if (!directed)
    for (auto& [u, v] : e)
      if (u > v) std::swap(u, v);
  std::sort(e.begin(), e.end());
  return e;
}

bool Graph::simple() const {
  auto e = canonical_edges();
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i].first == e[i].second) return false;
    if (i && e[i] == e[i - 1]) return false;
  }
  return true;
}

std::vector<std::size_t> perm_from_matrix(const Mat& p) {
  require(is_permutation(p), ErrorKind::Precondition, "expected a permutation matrix");
  std::vector<std::size_t> perm(p.cols());
  for (std::size_t c = 0; c < p.cols(); ++c)
    for (std::size_t r = 0; r < p.rows(); ++r)
      if (p(r, c)) perm[c] = r;
  return perm;
}

Graph act_graph(const Graph& g, const std::vector<std::size_t>& perm) {
  require(perm.size() == g.n, ErrorKind::Dimension, "graph permutation size");
  Graph out = g;
  for (auto& [u, v] : out.edges) {
    u = perm[u];
    v = perm[v];
  }
  return out;
}

Graph act_graph(const Graph& g, const Mat& perm_matrix) { return act_graph(g, perm_from_matrix(perm_matrix)); }

}  // namespace tik
