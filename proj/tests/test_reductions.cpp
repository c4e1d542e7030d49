#include "doctest.h"
#include "support.hpp"
#include "tik/reductions.hpp"

using namespace tik;
using namespace tik::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Unsupported;
}

Graph graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges, bool directed = false) {
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  g.directed = directed;
  return g;
}

}  // namespace

TEST_SUITE("reductions") {

TEST_CASE("every registered reduction round-trips witnesses") {
  for (const auto& red : reductions()) {
    for (u32 p : {2u, 3u, 5u}) {
      Rng rng(1000 + p);
      for (int trial = 0; trial < 20; ++trial) {
        CAPTURE(red.name);
        CAPTURE(p);
        CAPTURE(trial);
        SourcePair s = red.sample(p, rng);
        REQUIRE(verify_witness(red.source, s.a, s.b, s.witness));
        Instance ta = red.construct(s.a, s.params), tb = red.construct(s.b, s.params);
        Witness fw = red.forward(s.a, s.b, s.witness, s.params);
        REQUIRE(verify_witness(red.target, ta, tb, fw));
        Witness back = red.recover(s.a, s.b, fw, s.params);
        CHECK(verify_witness(red.source, s.a, s.b, back));
      }
    }
  }
}


TEST_CASE("monomial code gadget shape") {
  const Field f(2);
  const Tensor3 t = moncode_to_3ti(Mat::identity(f, 2));
  CHECK(t.dims() == std::array<std::size_t, 3>{6, 2, 5});
  // each lateral slice is one code column plus an I_2 block
  for (const Mat& s : t.slices(Direction::Lateral)) CHECK(rank(s) == 3);
  CHECK_THROWS_AS(moncode_to_3ti(Mat::identity(f, 1)), Error);
}

TEST_CASE("graph spaces and the monomial gadget") {
  const Field f(3);
  const MatrixTuple tri = graph_to_altspace(graph(3, {{0, 1}, {1, 2}, {0, 2}}), f);
  REQUIRE(tri.size() == 3);
  CHECK(tri[1](1, 2) == 1);
  CHECK(tri[1](2, 1) == 2);
  const MatrixTuple g = monomial_gadget(f, 2, {Mat::from_ints(f, 2, 2, {0, 1, 2, 0})});
  REQUIRE(g.size() == 5);
  CHECK(g[0].rows() == 6);
  for (const Mat& s : g) CHECK(s.transpose() == s.scaled(f.neg(1)));
  CHECK(monomial_gadget(f, 1, {}).size() == 1);
}

TEST_CASE("3-tensor gadget sizes at (2, 2, 2)") {
  const Field f(3);
  Tensor3 t(f, 2, 2, 2);
  t.data() = {1, 0, 0, 1, 0, 1, 1, 0};
  REQUIRE(is_nondegenerate(t));
  const MatrixTuple alt = ti3_to_alt_isometry(t), sym = ti3_to_sym_isometry(t);
  REQUIRE(alt.size() == 32);
  CHECK(alt[0].rows() == 19);
  CHECK(sym.size() == 32);
  CHECK(span_dim(alt) == 32);
  const MatrixTuple conj = ti3_to_conjugacy(t, false), unital = ti3_to_conjugacy(t, true);
  REQUIRE(conj.size() == 2);
  CHECK(conj[0].rows() == 4);
  CHECK(unital.size() == 3);
  CHECK(unital[2] == block_diag({Mat::identity(f, 2), Mat(f, 2, 2)}));
}

TEST_CASE("algebras from matrix spaces") {
  const Field f(5);
  const AlgebraSC one = isometry_to_algebra({Mat::identity(f, 1)});
  REQUIRE(one.dim() == 2);
  CHECK(one.mul(unit_vec(2, 0), unit_vec(2, 0)) == unit_vec(2, 1));
  CHECK(one.nilpotent3());
  CHECK_FALSE(one.unit().has_value());

  const AlgebraSC u = adjoin_unit(AlgebraSC::zero(f, 2));
  REQUIRE(u.dim() == 3);
  CHECK(u.unit() == std::optional<Vec>(unit_vec(3, 2)));
  CHECK(u.associative());

  Rng rng(21);
  const MatrixTuple a = independent_alternating(f, 3, 2, rng);
  const AlgebraSC lie = specialize_pseudo(a, PseudoVariant::NilpotentLie);
  CHECK(lie.alternating());
  CHECK(lie.jacobi());
  CHECK(nilpotent(lie));
}

TEST_CASE("path algebra of a 2x2x2 tensor") {
  const Field f(3);
  TensorD t(f, {2, 2, 2});
  t.data() = {1, 2, 0, 1, 1, 0, 2, 2};
  const DtiAlgebra alg = dti_to_algebra(t);
  CHECK(alg.algebra.dim() == 9);
  CHECK(dti_algebra_dimension({2, 2, 2}) == 9);
  CHECK(dti_displayed_dimension({2, 2, 2}) == 13);
  CHECK(alg.algebra.associative());
}

TEST_CASE("radical-square-zero algebra of a path") {
  const Field f(2);
  const Graph g = graph(3, {{0, 1}, {1, 2}}, true);
  const AlgebraSC a = grigoriev_algebra(g, f);
  REQUIRE(a.dim() == 5);
  for (std::size_t i = 3; i < 5; ++i)
    for (std::size_t j = 3; j < 5; ++j) CHECK(a.mul(a.basis(i), a.basis(j)) == Vec(5, 0));
  CHECK(a.associative());
  CHECK(grigoriev_reconstruct(a, 3) == g);
}

TEST_CASE("cubic padding") {
  const Field f(7);
  FormD x3(f, 1, 3);
  x3.set({3}, 1);
  // z is appended even when its power is zero
  CHECK(cubic_to_degree_d(x3, 3) == extend_vars(x3, 1));
  const FormD padded = cubic_to_degree_d(x3, 4);
  CHECK(padded.vars() == 2);
  CHECK(padded.coeff({3, 1}) == 1);
  CHECK(padded.coeff({4, 0}) == 0);
}

TEST_CASE("x^3 and 3x^3 over GF(7) pad to equivalent quartics") {
  // 3 is not a cube mod 7, so the cubics are inequivalent, yet z -> 3z matches the padded forms.
  const Field f(7);
  FormD a(f, 1, 3), b(f, 1, 3);
  a.set({3}, 1);
  b.set({3}, 3);
  CHECK_FALSE(decide_form_eq(a, b, default_budget()).has_value());
  const FormD pa = cubic_to_degree_d(a, 4), pb = cubic_to_degree_d(b, 4);
  const Mat w = Mat::from_ints(f, 2, 2, {1, 0, 0, 3});
  REQUIRE(verify_witness(Problem::FormEq, pa, pb, Witness{Tag::FormEq, {w}}));
  CHECK(kind_of([&] { cubic_recover(a, b, 4, w, default_budget()); }) == ErrorKind::RecoveryUnsupported);
}

}
