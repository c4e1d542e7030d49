#include "tik/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace tik {

namespace {

u64 g_budget = 0;

u64 sat_mul(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<u64>::max() / b) return std::numeric_limits<u64>::max();
  return a * b;
}

bool gl_rows(const Field& f, std::size_t n, std::size_t depth, Mat& m, std::vector<Span>& spans,
             const std::function<bool(const Mat&)>& visit) {
  if (depth == n) return visit(m);
  const u64 total = checked_pow(f.p(), n);
  for (u64 idx = 1; idx < total; ++idx) {
    Vec v = vec_from_index(idx, n, f.p());
    if (spans[depth].contains(v)) continue;
    for (std::size_t j = 0; j < n; ++j) m(depth, j) = v[j];
    spans[depth + 1] = spans[depth];
    spans[depth + 1].add(v);
    if (!gl_rows(f, n, depth + 1, m, spans, visit)) return false;
  }
  return true;
}

}  // namespace

u64 default_budget() {
  if (g_budget) return g_budget;
  if (const char* env = std::getenv("TIK_BUDGET")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v >= 1) return static_cast<u64>(v);
  }
  return 100000000ull;
}

void set_default_budget(u64 b) { g_budget = b; }

u64 checked_pow(u64 base, u64 e) {
  u64 acc = 1;
  for (u64 i = 0; i < e; ++i) acc = sat_mul(acc, base);
  return acc;
}

u64 gl_order(std::size_t n, u32 p) {
  u64 pn = checked_pow(p, n), acc = 1, pi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    acc = sat_mul(acc, pn - pi);
    pi = sat_mul(pi, p);
  }
  return acc;
}

u64 factorial(std::size_t n) {
  u64 acc = 1;
  for (std::size_t i = 2; i <= n; ++i) acc = sat_mul(acc, i);
  return acc;
}

u64 monomial_order(std::size_t n, u32 p) { return sat_mul(factorial(n), checked_pow(p - 1, n)); }

void check_budget(u64 needed, u64 budget, const std::string& what) {
  if (needed > budget)
    fail(ErrorKind::Budget, what + " needs " + std::to_string(needed) + " elements, budget " + std::to_string(budget));
}

bool enumerate_gl(const Field& f, std::size_t n, u64 budget, const std::function<bool(const Mat&)>& visit) {
  check_budget(gl_order(n, f.p()), budget, "GL(" + std::to_string(n) + "," + std::to_string(f.p()) + ")");
  Mat m(f, n, n);
  if (n == 0) return visit(m);
  std::vector<Span> spans(n + 1, Span(f, n));
  return gl_rows(f, n, 0, m, spans, visit);
}

bool enumerate_permutations(std::size_t n, const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (!visit(perm)) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

bool enumerate_monomial(const Field& f, std::size_t n, u64 budget, const std::function<bool(const MonomialMatrix&)>& visit) {
  check_budget(monomial_order(n, f.p()), budget, "Mon(" + std::to_string(n) + "," + std::to_string(f.p()) + ")");
  const u64 scalars = checked_pow(f.p() - 1, n);
  return enumerate_permutations(n, [&](const std::vector<std::size_t>& perm) {
    MonomialMatrix mm;
    mm.perm = perm;
    for (u64 s = 0; s < scalars; ++s) {
      Vec digits = vec_from_index(s, n, f.p() - 1);
      mm.scale.resize(n);
      for (std::size_t i = 0; i < n; ++i) mm.scale[i] = digits[i] + 1;
      if (!visit(mm)) return false;
    }
    return true;
  });
}

Mat random_mat(const Field& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Mat m(f, rows, cols);
  for (auto& x : m.data()) x = rng.elem(f);
  return m;
}

Mat sample_gl(const Field& f, std::size_t n, Rng& rng) {
  for (;;) {
    Mat m = random_mat(f, n, n, rng);
    if (det(m) != 0) return m;
  }
}

Mat sample_gl(std::size_t n, u32 p, u64 seed) {
  Rng rng(seed);
  return sample_gl(Field(p), n, rng);
}

std::vector<std::size_t> sample_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

MonomialMatrix sample_monomial(const Field& f, std::size_t n, Rng& rng) {
  MonomialMatrix mm;
  mm.perm = sample_permutation(n, rng);
  for (std::size_t i = 0; i < n; ++i) mm.scale.push_back(rng.nonzero(f));
  return mm;
}

MonomialMatrix sample_monomial(std::size_t n, u32 p, u64 seed) {
  Rng rng(seed);
  return sample_monomial(Field(p), n, rng);
}

Mat permutation_matrix(const Field& f, const std::vector<std::size_t>& perm) {
  MonomialMatrix mm{perm, Vec(perm.size(), 1)};
  return mm.expand(f);
}

Mat random_alternating(const Field& f, std::size_t n, Rng& rng) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = rng.elem(f);
      m(j, i) = f.neg(m(i, j));
    }
  return m;
}

Mat random_symmetric(const Field& f, std::size_t n, Rng& rng) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = rng.elem(f);
  return m;
}

Mat random_unitriangular(const Field& f, std::size_t n, Rng& rng) {
  Mat m = Mat::identity(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = rng.elem(f);
  return m;
}

}  // namespace tik
