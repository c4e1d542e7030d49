#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tik/mat.hpp"

namespace tik {

// Enumeration budget: TIK_BUDGET when set, otherwise 1e8. Callers may pass their own.
u64 default_budget();
void set_default_budget(u64 b);

// Saturates at UINT64_MAX.
u64 gl_order(std::size_t n, u32 p);
u64 monomial_order(std::size_t n, u32 p);
u64 factorial(std::size_t n);
u64 checked_pow(u64 base, u64 e);

// Throws a Budget error naming the required count.
void check_budget(u64 needed, u64 budget, const std::string& what);

// Visitors return false to stop early; the enumerators return false when stopped.
// GL(n,p) in lexicographic order of row-major entries.
bool enumerate_gl(const Field& f, std::size_t n, u64 budget, const std::function<bool(const Mat&)>& visit);
// Permutations of {0..n-1} in lexicographic order.
bool enumerate_permutations(std::size_t n, const std::function<bool(const std::vector<std::size_t>&)>& visit);
// Permutation outer, scalar vector inner, both lexicographic.
bool enumerate_monomial(const Field& f, std::size_t n, u64 budget, const std::function<bool(const MonomialMatrix&)>& visit);

// Deterministic generator: mt19937_64 with plain modular reduction so streams match across standard libraries.
class Rng {
 public:
  explicit Rng(u64 seed) : g_(seed) {}
  u64 next() { return g_(); }
  u64 below(u64 bound) { return g_() % bound; }
  u32 elem(const Field& f) { return static_cast<u32>(below(f.p())); }
  u32 nonzero(const Field& f) { return 1 + static_cast<u32>(below(f.p() - 1)); }

 private:
  std::mt19937_64 g_;
};

Mat random_mat(const Field& f, std::size_t rows, std::size_t cols, Rng& rng);
Mat sample_gl(const Field& f, std::size_t n, Rng& rng);
Mat sample_gl(std::size_t n, u32 p, u64 seed);
MonomialMatrix sample_monomial(const Field& f, std::size_t n, Rng& rng);
MonomialMatrix sample_monomial(std::size_t n, u32 p, u64 seed);
std::vector<std::size_t> sample_permutation(std::size_t n, Rng& rng);
Mat permutation_matrix(const Field& f, const std::vector<std::size_t>& perm);
Mat random_alternating(const Field& f, std::size_t n, Rng& rng);
Mat random_symmetric(const Field& f, std::size_t n, Rng& rng);
Mat random_unitriangular(const Field& f, std::size_t n, Rng& rng);

}  // namespace tik
