#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tik/algebra.hpp"
#include "tik/enumerate.hpp"
#include "tik/form.hpp"
#include "tik/tensor.hpp"

namespace tik {

// Problems a witness can be checked against. Several share a witness tag:
// MonomialIsometry uses Isometry witnesses with P monomial, DigraphIso uses GraphIso.
enum class Problem {
  TI3,
  Isometry,
  MonomialIsometry,
  PseudoIsometry,
  Conjugacy,
  AlgebraIso,
  TrilinearEq,
  FormEq,
  MonCodeEq,
  GraphIso,
  DigraphIso,
  TId,
};

const char* problem_name(Problem p);
Problem problem_from_name(const std::string& s);
Tag problem_tag(Problem p);

// Matrix spaces travel as Tensor3 whose frontal slices are the tuple; codes as Mat.
using Instance = std::variant<Tensor3, TensorD, AlgebraSC, FormD, Mat, Graph>;

const Field& instance_field(const Instance& x);

// act(a, w) == b, with span equality for Isometry, MonomialIsometry and Conjugacy.
// Throws on a tag or instance-type mismatch; returns false for singular or misshapen matrices.
bool verify_witness(Problem problem, const Instance& a, const Instance& b, const Witness& w);
Instance act_instance(Problem problem, const Instance& a, const Witness& w);

// Column-by-column search for invertible matrices. Column c draws from candidates[c]
// in order, skipping vectors dependent on earlier columns; `prefix` may reject partial
// matrices, `done` returns true to stop. Visited nodes are charged against the budget.
struct ColumnSearch {
  Field field;
  std::size_t n = 0;
  std::vector<std::vector<Vec>> candidates;
  std::function<bool(std::size_t c, const std::vector<Vec>& cols)> prefix;
  std::function<bool(const Mat& m)> done;
  u64 budget = 0;
  u64 nodes = 0;

  // True when `done` accepted some matrix.
  bool run();
};

// dims of {S u : S in span(t)} for every u in F^n, indexed by vec_index.
std::vector<std::size_t> lateral_rank_table(const MatrixTuple& t, std::size_t n, u64 budget);

// Enumerates the two smallest directions with rank filters and solves the third linearly.
std::optional<Witness> decide_3ti_smart(const Tensor3& a, const Tensor3& b, u64 budget);

// Span isometry P^t A P = B, P in GL(n); the first hit in column-lexicographic order.
std::optional<Witness> decide_isometry(const MatrixTuple& a, const MatrixTuple& b, u64 budget);
// Exact tuple version: mix(P^t A P, R) == B.
std::optional<Witness> decide_pseudo_isometry(const MatrixTuple& a, const MatrixTuple& b, u64 budget);
// Span conjugacy P^-1 A P = B by full GL(n) enumeration with rank filtering.
std::optional<Witness> decide_conjugacy(const MatrixTuple& a, const MatrixTuple& b, u64 budget);
// Span isometry restricted to monomial P.
std::optional<Witness> decide_monomial_isometry(const MatrixTuple& a, const MatrixTuple& b, u64 budget);

// Isometry search with P = diag(monomial of size `monomial_block`, GL(n - monomial_block)).
// monomial_block = 0 gives the unrestricted search.
std::optional<Witness> search_block_isometry(const MatrixTuple& a, const MatrixTuple& b, std::size_t monomial_block,
                                             u64 budget);

std::optional<Witness> decide_algebra_iso(const AlgebraSC& a, const AlgebraSC& b, u64 budget);
std::optional<Witness> decide_trilinear(const Tensor3& a, const Tensor3& b, u64 budget);
std::optional<Witness> decide_form_eq(const FormD& f, const FormD& g, u64 budget);
std::optional<Witness> decide_code_monomial(const Mat& a, const Mat& b, u64 budget);
// Returns a GraphIso witness; directed graphs compare oriented edge multisets.
std::optional<Witness> decide_graph_iso(const Graph& g, const Graph& h, u64 budget);

// Dispatch by problem. Equal inputs get the identity witness.
std::optional<Witness> decide(Problem problem, const Instance& a, const Instance& b, u64 budget);

// Shape parameters per problem:
//   TI3 (l, n, m); Isometry and MonomialIsometry (n, m) alternating; PseudoIsometry and
//   Conjugacy (n, m); AlgebraIso, TrilinearEq (n); FormEq (n, d); MonCodeEq (d, n);
//   GraphIso, DigraphIso (n); TId (n_1, .., n_d).
Instance gen_instance(Problem problem, const std::vector<std::size_t>& dims, const Field& f, Rng& rng);
Witness random_witness(Problem problem, const Instance& a, Rng& rng);

struct InstancePair {
  Instance a, b;
  std::optional<Witness> witness;
};
// Isomorphic pairs are (a, act(a, w)); non-isomorphic pairs are rejection-sampled against
// the decider, so they exist only where the decider is feasible.
InstancePair gen_pair(Problem problem, const std::vector<std::size_t>& dims, u32 p, u64 seed, bool isomorphic,
                      u64 budget);

}  // namespace tik
