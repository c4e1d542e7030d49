#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tik/oracle.hpp"

namespace tik {

// Generator matrix (d x n, rank d, d > 1) -> (d+2n) x n x (1+2n) tensor. Frontal slice 0 holds
// the code over 2n zero rows; slice 1+2i+j is E(d+2i+j, i), so lateral slice i carries I_2 in block i.
Tensor3 moncode_to_3ti(const Mat& code);

// Simple graph -> elementary alternating matrices E(u,v) - E(v,u), one per edge, in edge order.
MatrixTuple graph_to_altspace(const Graph& g, const Field& f);

// Lambda(n)^m -> Lambda(n+n^2)^(m+n^2): slice m + i*n + j is E(i, n+i*n+j) minus its transpose.
// m = 0 is allowed, which is why the side is passed explicitly.
MatrixTuple monomial_gadget(const Field& f, std::size_t n, const MatrixTuple& a);

// Index helpers shared by construction and witness maps for the 3-tensor gadget.
struct AltGadgetLayout {
  std::size_t l, n, m;
  std::size_t side() const { return l + 7 * n + 3; }
  std::size_t slices() const { return m + l * (2 * n + 1) + n * (4 * n + 2); }
  std::size_t e_col(std::size_t q) const { return l + n + q; }
  std::size_t f_col(std::size_t q) const { return l + 3 * n + 1 + q; }
  std::size_t e_slice(std::size_t row, std::size_t q) const { return m + row * (2 * n + 1) + q; }
  std::size_t f_slice(std::size_t row, std::size_t q) const { return m + l * (2 * n + 1) + row * (4 * n + 2) + q; }
};

// l x n x m nondegenerate tensor with l <= n -> alternating (or symmetric) space of side l+7n+3.
MatrixTuple ti3_to_alt_isometry(const Tensor3& t);
MatrixTuple ti3_to_sym_isometry(const Tensor3& t);

// Slices [[0, A_k], [0, 0]] of side l+n; the unital variant appends diag(I_l, 0) last.
MatrixTuple ti3_to_conjugacy(const Tensor3& t, bool with_unit);

// Independent n x n slices -> algebra of dimension n+m with x_i x_j = sum_k A_k(i,j) y_k.
AlgebraSC isometry_to_algebra(const MatrixTuple& a);
// Same structure constants as an (n+m)^3 trilinear form.
Tensor3 isometry_to_trilinear(const MatrixTuple& a);
// Appends a unit u last: u x = x u = x, u u = u.
AlgebraSC adjoin_unit(const AlgebraSC& a);

enum class PseudoVariant { CommutativeNilpotent, UnitalCommutative, NilpotentLie };
// Symmetric input for the commutative variants, alternating input for the Lie variant;
// the output flags (commutativity, nilpotency, alternation, Jacobi, unit) are checked.
AlgebraSC specialize_pseudo(const MatrixTuple& a, PseudoVariant variant);

bool nilpotent(const AlgebraSC& a);

// Path algebra of the chain quiver 1 -> 2 -> .. -> d with n_d extra arrows 1 -> d, modulo the
// relation rewriting each full chain x_{1,i1} .. x_{d-1,i_{d-1}} as sum_j t(i, j) x_{d,j}.
struct ChainPath {
  std::size_t start = 0;
  std::vector<std::size_t> arrows;  // arrow index per step, step s uses direction start + s
  std::size_t end() const { return start + arrows.size(); }
};
struct DtiAlgebra {
  AlgebraSC algebra;
  std::vector<std::size_t> dims;
  // Basis: d idempotents, then paths (ordered by start, length, arrows), then x_{d,*}.
  std::vector<ChainPath> paths;
  std::size_t order() const { return dims.size(); }
  std::size_t arrow_index(std::size_t direction, std::size_t a) const;  // basis index of a single arrow
  std::size_t top_index(std::size_t a) const { return order() + paths.size() + a; }
};
DtiAlgebra dti_to_algebra(const TensorD& t);
// d + n_d + sum over chain paths of length 1..d-2.
std::size_t dti_algebra_dimension(const std::vector<std::size_t>& dims);
// The displayed count that also includes the full-length chains: d + n_d + sum_{k=0}^{d-2} sum_i prod n_j.
std::size_t dti_displayed_dimension(const std::vector<std::size_t>& dims);

// Path(G)/R^2: vertex idempotents first, then one radical element per edge in list order.
AlgebraSC grigoriev_algebra(const Graph& g, const Field& f);
// Weighted digraph with weight(i,j) = dim e_i R e_j - dim e_i R^2 e_j, where the first
// `idempotents` basis vectors are the vertex idempotents and the rest span the radical.
Graph grigoriev_reconstruct(const AlgebraSC& a, std::size_t idempotents);

// f -> z^(d-3) f with z appended as the last variable.
FormD cubic_to_degree_d(const FormD& f, std::size_t d);
// Recovers a source equivalence from an equivalence of the padded forms. Throws
// RecoveryUnsupported when the scalar on z has no cube root of the required power.
Mat cubic_recover(const FormD& f, const FormD& g, std::size_t d, const Mat& w, u64 budget);

struct ReductionParams {
  u32 p = 2;               // field for graph inputs
  std::size_t degree = 4;  // target degree (cubic-to-degree-d) or target order (pad-d)
};

struct SourcePair {
  Instance a, b;
  Witness witness;
  ReductionParams params;
};

struct Reduction {
  std::string name;
  Problem source, target;
  std::string dims;
  std::function<Instance(const Instance& a, const ReductionParams&)> construct;
  // Source witness a -> b to a target witness construct(a) -> construct(b).
  std::function<Witness(const Instance& a, const Instance& b, const Witness& w, const ReductionParams&)> forward;
  // Target witness back to a source witness; throws WitnessInvalid when the result fails to verify.
  std::function<Witness(const Instance& a, const Instance& b, const Witness& w, const ReductionParams&)> recover;
  // Random isomorphic source pair with sides at most 3, satisfying the construction's preconditions.
  std::function<SourcePair(u32 p, Rng& rng)> sample;
};

const std::vector<Reduction>& reductions();
const Reduction& find_reduction(const std::string& name);

}  // namespace tik
