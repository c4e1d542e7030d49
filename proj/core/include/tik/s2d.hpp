#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tik/groupcorr.hpp"
#include "tik/oracle.hpp"

namespace tik {

// Alternating n x n tuple, 1 <= i <= n-1 -> alternating tuple of side n + 2ni + n.
// Row a < i gets its own block of 2n columns at n + 2na, one new slice per entry; rows i..n-1
// share the last n columns, again one new slice per entry. Appended slice count 2ni + n(n-i).
MatrixTuple individualization_gadget(const MatrixTuple& a, std::size_t i);
std::size_t gadget_side(std::size_t n, std::size_t i);

// Does an isometry a -> b of the form diag(monomial i x i, GL(n-i)) exist?
using DecisionOracle = std::function<bool(const MatrixTuple& a, const MatrixTuple& b, std::size_t i)>;

// Searches the block form directly; refuses when n! (p-1)^i |GL(n-i,p)| exceeds the budget.
bool structural_decide(const MatrixTuple& a, const MatrixTuple& b, std::size_t i, u64 budget);
DecisionOracle structural_oracle(u64 budget);
// Unrestricted isometry search between the two gadgets. Only the smallest cases fit a budget.
DecisionOracle brute_oracle(u64 budget);

struct SearchStats {
  std::vector<u64> guesses;       // oracle queries per step, steps 1..n-1
  std::vector<u64> guess_bounds;  // p^(2n) times the number of complements at that step
  u64 queries = 0;
  u64 monomials = 0;              // final monomial candidates tried
  std::size_t max_query_side = 0;
  std::size_t query_side_bound = 0;  // 2n^2 + 2n
};

// Search for P, R with mix(P^t a P, R) spanning b, driven only by oracle answers. The result is
// verified before it is returned, so a dishonest oracle can cause a refusal but never a wrong witness.
// Throws OracleInconsistent when a step after the first rejects every guess.
std::optional<Witness> find_isometry(const MatrixTuple& a, const MatrixTuple& b, const DecisionOracle& oracle,
                                     u64 budget, SearchStats* stats = nullptr);

// Images of g's generators, in order, under an isomorphism G -> H; the map is checked to be a
// homomorphism on every (element, generator) pair and to be onto before it is returned.
std::optional<std::vector<Mat>> find_group_isomorphism(const MatrixGroup& g, const MatrixGroup& h,
                                                       const DecisionOracle& oracle, u64 budget,
                                                       SearchStats* stats = nullptr);

}  // namespace tik
