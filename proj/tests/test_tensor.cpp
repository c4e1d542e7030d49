#include <algorithm>

#include "doctest.h"
#include "support.hpp"
#include "tik/oracle.hpp"

using namespace tik;
using namespace tik::testing;

namespace {

Tensor3 random_tensor(const Field& f, std::size_t l, std::size_t n, std::size_t m, Rng& rng) {
  Tensor3 t(f, l, n, m);
  for (auto& x : t.data()) x = rng.elem(f);
  return t;
}

struct Shape {
  Problem problem;
  std::vector<std::size_t> dims;
};

const Shape kShapes[] = {
    {Problem::TI3, {2, 3, 2}},       {Problem::Isometry, {3, 2}},     {Problem::PseudoIsometry, {3, 2}},
    {Problem::Conjugacy, {3, 2}},    {Problem::AlgebraIso, {3}},      {Problem::TrilinearEq, {3}},
    {Problem::FormEq, {3, 3}},       {Problem::MonCodeEq, {2, 3}},    {Problem::GraphIso, {4}},
    {Problem::DigraphIso, {3}},      {Problem::TId, {2, 2, 2, 2}},
};

}  // namespace

TEST_SUITE("tensor") {

TEST_CASE("slices of a 1x1x1 tensor are its entry") {
  Tensor3 t(Field(5), 1, 1, 1);
  t(0, 0, 0) = 3;
  for (Direction d : {Direction::Frontal, Direction::Lateral, Direction::Horizontal}) {
    const MatrixTuple s = t.slices(d);
    REQUIRE(s.size() == 1);
    CHECK(s[0] == Mat::from_ints(Field(5), 1, 1, {3}));
  }
}

TEST_CASE("slice shapes follow the fixed index") {
  Rng rng(1);
  const Tensor3 t = random_tensor(Field(3), 2, 3, 4, rng);
  const MatrixTuple front = t.frontal(), lat = t.slices(Direction::Lateral), hor = t.slices(Direction::Horizontal);
  REQUIRE(front.size() == 4);
  CHECK(front[0].rows() == 2);
  CHECK(front[0].cols() == 3);
  REQUIRE(lat.size() == 3);
  CHECK(lat[0].rows() == 2);
  CHECK(lat[0].cols() == 4);
  REQUIRE(hor.size() == 2);
  CHECK(hor[0].rows() == 3);
  CHECK(hor[0].cols() == 4);
}

TEST_CASE("slices reassemble to the tensor in every direction") {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const Field f(trial % 2 ? 5 : 2);
    const Tensor3 t = random_tensor(f, 1 + rng.below(3), 1 + rng.below(3), 1 + rng.below(3), rng);
    CHECK(Tensor3::from_frontal(f, t.dim(0), t.dim(1), t.frontal()) == t);
    const MatrixTuple lat = t.slices(Direction::Lateral), hor = t.slices(Direction::Horizontal);
    Tensor3 a(f, t.dim(0), t.dim(1), t.dim(2)), b = a;
    for (std::size_t i = 0; i < t.dim(0); ++i)
      for (std::size_t j = 0; j < t.dim(1); ++j)
        for (std::size_t k = 0; k < t.dim(2); ++k) {
          a(i, j, k) = lat[j](i, k);
          b(i, j, k) = hor[i](j, k);
        }
    CHECK(a == t);
    CHECK(b == t);
  }
}

TEST_CASE("identity witnesses fix every instance") {
  Rng rng(3);
  for (const auto& sh : kShapes) {
    CAPTURE(problem_name(sh.problem));
    const Instance a = gen_instance(sh.problem, sh.dims, Field(3), rng);
    Witness w = random_witness(sh.problem, a, rng);
    for (auto& m : w.mats) m = Mat::identity(m.field(), m.rows());
    CHECK(verify_witness(sh.problem, a, a, w));
    CHECK(act_instance(sh.problem, a, w) == a);
  }
}

TEST_CASE("actions compose as left actions for every tag") {
  Rng rng(4);
  for (const auto& sh : kShapes)
    for (u32 p : {2u, 3u, 5u}) {
      CAPTURE(problem_name(sh.problem));
      CAPTURE(p);
      for (int trial = 0; trial < 100; ++trial) {
        const Instance a = gen_instance(sh.problem, sh.dims, Field(p), rng);
        const Witness w1 = random_witness(sh.problem, a, rng), w2 = random_witness(sh.problem, a, rng);
        const Instance two_steps = act_instance(sh.problem, act_instance(sh.problem, a, w1), w2);
        CHECK(act_instance(sh.problem, a, compose(w1, w2)) == two_steps);
        CHECK(act_instance(sh.problem, two_steps, invert(compose(w1, w2))) == a);
      }
    }
}

TEST_CASE("slice mixing takes the columns of R") {
  const Field f(5);
  const MatrixTuple slices{Mat::identity(f, 2), Mat::from_ints(f, 2, 2, {0, 1, 0, 0})};
  const Tensor3 t = Tensor3::from_frontal(slices);
  const Mat r = Mat::from_ints(f, 2, 2, {1, 2, 3, 4});
  const Tensor3 out = act(t, Witness{Tag::PseudoIsometry, {Mat::identity(f, 2), r}});
  // new slice 1 = r(0,1) A_0 + r(1,1) A_1 = 2 I + 4 E_01
  CHECK(out.frontal()[1] == Mat::from_ints(f, 2, 2, {2, 4, 0, 2}));
  CHECK(out.frontal()[0] == Mat::from_ints(f, 2, 2, {1, 3, 0, 1}));
}

TEST_CASE("nondegenerate core") {
  const Field f(2);
  Rng rng(6);
  SUBCASE("a nondegenerate tensor is its own core") {
    for (int trial = 0; trial < 50; ++trial) {
      Tensor3 t = random_tensor(f, 2, 2, 2, rng);
      if (!is_nondegenerate(t)) continue;
      CHECK(nondegenerate_core(t).t == t);
    }
  }
  SUBCASE("a repeated frontal slice is dropped") {
    const Tensor3 t = Tensor3::from_frontal({Mat::identity(f, 2), Mat::from_ints(f, 2, 2, {0, 1, 1, 0}), Mat::identity(f, 2)});
    const Core c = nondegenerate_core(t);
    CHECK(c.t.dims() == std::array<std::size_t, 3>{2, 2, 2});
    CHECK(act3(c.t, c.expand[0], c.expand[1], c.expand[2]) == t);
    CHECK(act3(t, c.select[0], c.select[1], c.select[2]) == c.t);
  }
  SUBCASE("the core is idempotent and reconstructs the tensor") {
    for (int trial = 0; trial < 100; ++trial) {
      const Field g(trial % 2 ? 3 : 2);
      const Tensor3 t = random_tensor(g, 1 + rng.below(3), 1 + rng.below(3), 1 + rng.below(4), rng);
      const Core c = nondegenerate_core(t);
      CHECK(is_nondegenerate(c.t));
      CHECK(nondegenerate_core(c.t).t == c.t);
      if (c.t.size()) CHECK(act3(c.t, c.expand[0], c.expand[1], c.expand[2]) == t);
    }
  }
  SUBCASE("cores of isomorphic tensors are isomorphic") {
    for (int trial = 0; trial < 100; ++trial) {
      const Tensor3 t = random_tensor(f, 2, 2, 2, rng);
      const Witness w = random_witness(Problem::TI3, t, rng);
      const Tensor3 a = nondegenerate_core(t).t, b = nondegenerate_core(act(t, w)).t;
      REQUIRE(a.dims() == b.dims());
      CHECK(decide_3ti_smart(a, b, default_budget()).has_value());
    }
  }
}

TEST_CASE("padding to a higher order") {
  const Field f(3);
  Rng rng(7);
  TensorD m(f, {2, 2});
  m.data() = {1, 2, 0, 1};
  CHECK(pad_to(m, 2) == m);
  const TensorD p = pad_to(m, 3);
  CHECK(p.dims() == std::vector<std::size_t>{2, 2, 1});
  CHECK(p.data() == m.data());
  for (int trial = 0; trial < 100; ++trial) {
    TensorD a(f, {1 + rng.below(3), 1 + rng.below(3), 1 + rng.below(3)});
    for (auto& x : a.data()) x = rng.elem(f);
    Witness w{Tag::TId, {}};
    for (auto n : a.dims()) w.mats.push_back(sample_gl(f, n, rng));
    const TensorD b = act(a, w);
    CHECK(act(pad_to(a, 5), pad_witness_forward(w, 5)) == pad_to(b, 5));
    // a scalar on a padded direction must be folded back into the first matrix
    Witness scaled = pad_witness_forward(w, 5);
    scaled.mats[3] = scaled.mats[3].scaled(2);
    const bool nonzero = std::any_of(a.data().begin(), a.data().end(), [](u32 x) { return x != 0; });
    if (nonzero) CHECK(act(pad_to(a, 5), scaled) != pad_to(b, 5));
    scaled.mats[0] = scaled.mats[0].scaled(f.inv(2));
    CHECK(act(pad_to(a, 5), scaled) == pad_to(b, 5));
    const Witness back = pad_witness_recover(scaled, 3);
    CHECK(back.mats.size() == 3);
    CHECK(act(a, back) == b);
  }
}

}

TEST_SUITE("form") {

TEST_CASE("symmetrizing x^3 leaves one entry") {
  const Field f(5);
  FormD x3(f, 1, 3);
  x3.set({3}, 1);
  const TensorD t = symmetrize_cubic(x3);
  CHECK(t.data() == std::vector<u32>{1});
  FormD two(f, 2, 3);
  two.set({3, 0}, 1);
  const TensorD u = symmetrize_cubic(two);
  for (std::size_t off = 0; off < u.size(); ++off) CHECK(u.data()[off] == (off == 0 ? 1u : 0u));
}

TEST_CASE("symmetrizing x^2 y over GF(7) puts inv(3) on each ordering") {
  const Field f(7);
  FormD g(f, 2, 3);
  g.set({2, 1}, 1);
  const TensorD t = symmetrize_cubic(g);
  CHECK(t.at({0, 0, 1}) == 5);
  CHECK(t.at({0, 1, 0}) == 5);
  CHECK(t.at({1, 0, 0}) == 5);
  CHECK(t.at({0, 0, 0}) == 0);
  CHECK(t.at({1, 1, 0}) == 0);
}

TEST_CASE("symmetrization inverts evaluation and is permutation invariant") {
  Rng rng(8);
  const Field f(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(3);
    FormD g(f, n, 3);
    for (std::size_t i = 0; i < g.basis().size(); ++i) g.set(g.basis().at(i), rng.elem(f));
    const TensorD t = symmetrize_cubic(g);
    CHECK(evaluate_diag(t) == g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const u32 v = t.at({i, j, k});
          CHECK(t.at({i, k, j}) == v);
          CHECK(t.at({j, i, k}) == v);
          CHECK(t.at({j, k, i}) == v);
          CHECK(t.at({k, i, j}) == v);
          CHECK(t.at({k, j, i}) == v);
        }
  }
}

TEST_CASE("symmetrization needs characteristic at least 5") {
  FormD g(Field(3), 2, 3);
  CHECK_THROWS_AS(symmetrize_cubic(g), Error);
}

TEST_CASE("substitution is a right action on forms") {
  Rng rng(9);
  const Field f(3);
  for (int trial = 0; trial < 50; ++trial) {
    FormD g(f, 3, 3);
    for (std::size_t i = 0; i < g.basis().size(); ++i) g.set(g.basis().at(i), rng.elem(f));
    const Mat p = sample_gl(f, 3, rng), q = sample_gl(f, 3, rng);
    // g(P(Q x)) computed in two steps
    CHECK(act_form(act_form(g, p), q) == act_form(g, p * q));
  }
}

TEST_CASE("monomial bases are descending lexicographic") {
  const MonomialBasis& b = MonomialBasis::get(2, 3);
  REQUIRE(b.size() == 4);
  CHECK(b.at(0) == Exponent{3, 0});
  CHECK(b.at(3) == Exponent{0, 3});
  CHECK(b.index_of({1, 2}) == 2);
  CHECK(MonomialBasis::get(3, 4).size() == 15);
}

}
