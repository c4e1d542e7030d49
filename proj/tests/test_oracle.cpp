#include "doctest.h"
#include "support.hpp"
#include "tik/oracle.hpp"

using namespace tik;
using namespace tik::testing;

namespace {

Tensor3 tensor_from_bits(unsigned bits) {
  Tensor3 t(Field(2), 2, 2, 2);
  for (std::size_t off = 0; off < 8; ++off) t.data()[off] = (bits >> off) & 1u;
  return t;
}

Tensor3 space(const MatrixTuple& slices, std::size_t n) {
  Tensor3 t(slices.empty() ? Field(3) : slices[0].field(), n, n, slices.size());
  if (!slices.empty()) t = Tensor3::from_frontal(slices);
  return t;
}

Graph graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges) {
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("witness verification") {
  Rng rng(11);
  const Problem problems[] = {Problem::TI3, Problem::PseudoIsometry, Problem::Conjugacy, Problem::GraphIso,
                              Problem::FormEq, Problem::TId};
  const std::vector<std::size_t> dims[] = {{2, 2, 3}, {3, 2}, {3, 2}, {4}, {2, 3}, {2, 2, 2}};
  for (std::size_t i = 0; i < std::size(problems); ++i) {
    CAPTURE(problem_name(problems[i]));
    for (int trial = 0; trial < 100; ++trial) {
      const Instance a = gen_instance(problems[i], dims[i], Field(3), rng);
      const Witness w = random_witness(problems[i], a, rng);
      const Instance b = act_instance(problems[i], a, w);
      CHECK(verify_witness(problems[i], a, b, w));
      // a second random witness is accepted exactly when it lands on the same instance
      const Witness other = random_witness(problems[i], a, rng);
      CHECK(verify_witness(problems[i], a, b, other) == (act_instance(problems[i], a, other) == b));
    }
  }
}

TEST_CASE("verification rejects singular matrices and wrong tags") {
  const Field f(3);
  const Tensor3 t = Tensor3::from_frontal({Mat::identity(f, 2)});
  Witness w{Tag::TI3, {Mat::identity(f, 2), Mat::from_ints(f, 2, 2, {1, 1, 1, 1}), Mat::identity(f, 1)}};
  CHECK_FALSE(verify_witness(Problem::TI3, t, t, w));
  w.tag = Tag::Conjugacy;
  CHECK_THROWS_AS(verify_witness(Problem::TI3, t, t, w), Error);
}

TEST_CASE("2x2x2 tensors over GF(2) fall into 8 classes") {
  std::vector<Tensor3> reps;
  for (unsigned bits = 0; bits < 256; ++bits) {
    const Tensor3 t = tensor_from_bits(bits);
    bool found = false;
    for (const Tensor3& r : reps)
      if (decide_3ti_smart(r, t, default_budget())) {
        found = true;
        break;
      }
    if (!found) reps.push_back(t);
  }
  CHECK(reps.size() == 8);
}

TEST_CASE("isomorphic 3x2x2 tensors are always matched") {
  for (u64 seed = 0; seed < 100; ++seed) {
    const InstancePair pair = gen_pair(Problem::TI3, {3, 2, 2}, seed % 2 ? 3 : 2, seed, true, default_budget());
    const auto& a = std::get<Tensor3>(pair.a);
    const auto& b = std::get<Tensor3>(pair.b);
    const auto w = decide_3ti_smart(a, b, default_budget());
    REQUIRE(w.has_value());
    CHECK(verify_witness(Problem::TI3, pair.a, pair.b, *w));
  }
}

TEST_CASE("the symplectic form is fixed by all of GL(2,3) up to span") {
  const Field f(3);
  const MatrixTuple a{Mat::from_ints(f, 2, 2, {0, 1, 2, 0})};
  const auto w = decide_isometry(a, a, default_budget());
  REQUIRE(w.has_value());
  std::size_t stabilizer = 0;
  enumerate_gl(f, 2, default_budget(), [&](const Mat& p) {
    if (verify_witness(Problem::Isometry, space(a, 2), space(a, 2), Witness{Tag::Isometry, {p, Mat::identity(f, 1)}}))
      ++stabilizer;
    return true;
  });
  CHECK(stabilizer == 48);
}

TEST_CASE("isometry search") {
  const Field f(3);
  Rng rng(12);
  SUBCASE("different slice ranks are refused") {
    Mat one(f, 4, 4), two(f, 4, 4);
    one(0, 1) = 1, one(1, 0) = 2;
    two = one;
    two(2, 3) = 1, two(3, 2) = 2;
    CHECK_FALSE(decide_isometry({one}, {two}, default_budget()).has_value());
  }
  SUBCASE("sandwiched pairs are found") {
    for (int trial = 0; trial < 100; ++trial) {
      const MatrixTuple a = independent_alternating(f, 3, 2, rng);
      const Mat p = sample_gl(f, 3, rng);
      const MatrixTuple b = mix(sandwich(a, p), sample_gl(f, 2, rng));
      const auto w = decide_isometry(a, b, default_budget());
      REQUIRE(w.has_value());
      CHECK(verify_witness(Problem::Isometry, space(a, 3), space(b, 3), *w));
    }
  }
}

TEST_CASE("small deciders") {
  SUBCASE("zero algebras of equal dimension") {
    const AlgebraSC z = AlgebraSC::zero(Field(5), 3);
    const auto w = decide_algebra_iso(z, z, default_budget());
    REQUIRE(w.has_value());
    CHECK(verify_witness(Problem::AlgebraIso, z, z, *w));
  }
  SUBCASE("triangle and path") {
    const Graph k3 = graph(3, {{0, 1}, {1, 2}, {0, 2}}), p3 = graph(3, {{0, 1}, {1, 2}});
    CHECK_FALSE(decide_graph_iso(k3, p3, default_budget()).has_value());
    const Graph relabeled = graph(3, {{2, 0}, {0, 1}});
    const auto w = decide_graph_iso(p3, relabeled, default_budget());
    REQUIRE(w.has_value());
    CHECK(verify_witness(Problem::GraphIso, p3, relabeled, *w));
  }
  SUBCASE("full-rank codes of length 2 are equivalent") {
    const Field f(2);
    const Mat a = Mat::identity(f, 2), b = Mat::from_ints(f, 2, 2, {1, 0, 1, 1});
    const auto w = decide_code_monomial(a, b, default_budget());
    REQUIRE(w.has_value());
    CHECK(verify_witness(Problem::MonCodeEq, a, b, *w));
  }
  SUBCASE("codes of different weight profiles") {
    const Field f(2);
    const Mat a = Mat::from_ints(f, 1, 3, {1, 0, 0}), b = Mat::from_ints(f, 1, 3, {1, 1, 0});
    CHECK_FALSE(decide_code_monomial(a, b, default_budget()).has_value());
  }
}

TEST_CASE("generated pairs are certified and reproducible") {
  const struct {
    Problem problem;
    std::vector<std::size_t> dims;
    u32 p;
  } cases[] = {{Problem::TI3, {2, 2, 2}, 2}, {Problem::Isometry, {3, 2}, 2}, {Problem::GraphIso, {4}, 2},
               {Problem::Conjugacy, {2, 1}, 3}, {Problem::MonCodeEq, {2, 4}, 2}};
  for (const auto& c : cases) {
    CAPTURE(problem_name(c.problem));
    for (u64 seed = 0; seed < 10; ++seed) {
      for (bool iso : {true, false}) {
        const InstancePair pair = gen_pair(c.problem, c.dims, c.p, seed, iso, default_budget());
        const InstancePair again = gen_pair(c.problem, c.dims, c.p, seed, iso, default_budget());
        CHECK(pair.a == again.a);
        CHECK(pair.b == again.b);
        const auto forward = decide(c.problem, pair.a, pair.b, default_budget());
        const auto backward = decide(c.problem, pair.b, pair.a, default_budget());
        CHECK(forward.has_value() == iso);
        CHECK(backward.has_value() == iso);
        if (iso) {
          REQUIRE(pair.witness.has_value());
          CHECK(verify_witness(c.problem, pair.a, pair.b, *pair.witness));
          CHECK(verify_witness(c.problem, pair.a, pair.b, *forward));
          CHECK(verify_witness(c.problem, pair.b, pair.a, *backward));
        }
      }
    }
  }
}

TEST_CASE("the GF(2) rank table agrees with direct ranks") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Field f(2);
    const std::size_t rows = 1 + rng.below(4), n = 1 + rng.below(4), m = 1 + rng.below(4);
    MatrixTuple t;
    for (std::size_t k = 0; k < m; ++k) {
      Mat s(f, rows, n);
      for (auto& x : s.data()) x = rng.elem(f);
      t.push_back(s);
    }
    const auto table = lateral_rank_table(t, n, default_budget());
    REQUIRE(table.size() == (std::size_t{1} << n));
    for (u64 idx = 0; idx < table.size(); ++idx) CHECK(table[idx] == lateral_rank(t, vec_from_index(idx, n, 2)));
  }
  // the same over GF(3) goes through the generic path
  const Field g(3);
  const MatrixTuple t{Mat::from_ints(g, 2, 2, {1, 0, 0, 0}), Mat::from_ints(g, 2, 2, {0, 0, 0, 1})};
  const auto table = lateral_rank_table(t, 2, default_budget());
  for (u64 idx = 0; idx < 9; ++idx) CHECK(table[idx] == lateral_rank(t, vec_from_index(idx, 2, 3)));
}

TEST_CASE("empty matrix spaces") {
  const Field f(3);
  const Tensor3 empty3(f, 3, 3, 0), empty2(f, 2, 2, 0);
  const auto w = decide(Problem::Isometry, empty3, empty3, default_budget());
  REQUIRE(w.has_value());
  CHECK(verify_witness(Problem::Isometry, empty3, empty3, *w));
  CHECK_FALSE(decide(Problem::Conjugacy, empty3, empty2, default_budget()).has_value());
}

}
