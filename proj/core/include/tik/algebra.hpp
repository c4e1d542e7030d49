#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tik/tensor.hpp"

namespace tik {

// Structure constants: x_i * x_j = sum_k sc(i,j,k) x_k.
class AlgebraSC {
 public:
  explicit AlgebraSC(Tensor3 sc);
  static AlgebraSC zero(const Field& f, std::size_t n) { return AlgebraSC(Tensor3(f, n, n, n)); }

  const Field& field() const { return sc_.field(); }
  std::size_t dim() const { return sc_.dim(0); }
  const Tensor3& sc() const { return sc_; }
  Tensor3& sc() { return sc_; }

  Vec mul(const Vec& a, const Vec& b) const;
  Vec basis(std::size_t i) const;

  bool associative() const;
  bool commutative() const;
  // x * x = 0 for all x.
  bool alternating() const;
  bool jacobi() const;
  // every product of three elements vanishes, in both bracketings
  bool nilpotent3() const;
  std::optional<Vec> unit() const;

  bool operator==(const AlgebraSC& o) const { return sc_ == o.sc_; }
  bool operator!=(const AlgebraSC& o) const { return !(*this == o); }

 private:
  Tensor3 sc_;
};

// Structure constants in the basis given by the columns of p.
AlgebraSC act_algebra(const AlgebraSC& a, const Mat& p);

// Simple graphs use unordered edges; digraphs keep orientation and allow loops and repeats.
struct Graph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  bool directed = false;

  // Sorted edge multiset, with (min, max) orientation for undirected graphs.
  std::vector<std::pair<std::size_t, std::size_t>> canonical_edges() const;
  bool operator==(const Graph& o) const { return n == o.n && directed == o.directed && canonical_edges() == o.canonical_edges(); }
  bool simple() const;
};

std::vector<std::size_t> perm_from_matrix(const Mat& p);
// Vertex i becomes perm[i].
Graph act_graph(const Graph& g, const std::vector<std::size_t>& perm);
Graph act_graph(const Graph& g, const Mat& perm_matrix);

}  // namespace tik
