#include "doctest.h"
#include "support.hpp"
#include "tik/s2d.hpp"

using namespace tik;
using tik::testing::independent_alternating;
using tik::testing::sandwich;
using tik::testing::unit_vec;

namespace {

Tensor3 tensor_of(const MatrixTuple& a) { return Tensor3::from_frontal(a); }

// Isometry between gadgets induced by P = diag(monomial of size i, G). Row a of the monomial block
// sends the e-block of row pi(c) to the e-block of row c, rescaled by 1/alpha_c; the shared f-block
// is fixed because it already spans every wedge of the last n-i rows with the shared columns.
Mat gadget_witness(const Mat& p, std::size_t i) {
  const Field& f = p.field();
  const std::size_t n = p.rows(), side = gadget_side(n, i);
  Mat big = Mat::identity(f, side);
  big.set_block(0, 0, p);
  const MonomialMatrix mon = MonomialMatrix::from_mat(p.block(0, 0, i, i));
  for (std::size_t e = n; e < n + 2 * n * i; ++e) big(e, e) = 0;
  for (std::size_t c = 0; c < i; ++c) {
    const std::size_t a = mon.perm[c];
    for (std::size_t b = 0; b < 2 * n; ++b) big(n + 2 * n * a + b, n + 2 * n * c + b) = f.inv(mon.scale[c]);
  }
  return big;
}

Mat block_monomial_matrix(const Field& f, std::size_t n, std::size_t i, Rng& rng) {
  Mat p(f, n, n);
  p.set_block(0, 0, sample_monomial(f, i, rng).expand(f));
  p.set_block(i, i, sample_gl(f, n - i, rng));
  return p;
}

}  // namespace

TEST_SUITE("s2d") {

TEST_CASE("gadget at n=2, i=1, m=1 has side 8 and 7 slices") {
  Field f(3);
  MatrixTuple a{Mat::from_ints(f, 2, 2, {0, 1, -1, 0})};
  MatrixTuple g = individualization_gadget(a, 1);
  CHECK(g.size() == 7);
  CHECK(g[0].rows() == 8);
  CHECK(tuple_alternating(g));
  CHECK(span_dim(g) == 7);
}

TEST_CASE("gadget slice count is m + 2ni + n(n-i)") {
  Field f(2);
  Rng rng(3);
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t i = 1; i < n; ++i) {
      MatrixTuple a = independent_alternating(f, n, 1, rng);
      MatrixTuple g = individualization_gadget(a, i);
      CHECK(g.size() == 1 + 2 * n * i + n * (n - i));
      CHECK(g[0].rows() == gadget_side(n, i));
      CHECK(g[0].rows() <= 2 * n * n + 2 * n);
    }
}

TEST_CASE("gadget rejects i outside 1..n-1") {
  Field f(3);
  MatrixTuple a{Mat::from_ints(f, 2, 2, {0, 1, -1, 0})};
  CHECK_THROWS_AS(individualization_gadget(a, 0), Error);
  CHECK_THROWS_AS(individualization_gadget(a, 2), Error);
}

TEST_CASE("gadget lateral ranks separate individualized, free and padding columns") {
  for (u32 p : {2u, 3u}) {
    Field f(p);
    Rng rng(50 + p);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 3, m = 1 + rng.below(3);
      MatrixTuple a = independent_alternating(f, n, m, rng);
      for (std::size_t i = 1; i < n; ++i) {
        MatrixTuple g = individualization_gadget(a, i);
        const std::size_t side = g[0].rows();
        for (std::size_t j = 0; j < side; ++j) {
          const std::size_t r = lateral_rank(g, unit_vec(side, j));
          CAPTURE(j);
          if (j < i) {
            CHECK(r >= 2 * n);
            CHECK(r < 3 * n);
          } else if (j < n) {
            CHECK(r >= n);
            CHECK(r < 2 * n);
          } else {
            CHECK(r >= 1);
            CHECK(r < n);
          }
        }
      }
    }
  }
}

TEST_CASE("block-monomial isometries lift to gadget isometries") {
  for (u32 p : {2u, 3u, 5u}) {
    Field f(p);
    Rng rng(70 + p);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 2 + rng.below(3), i = 1 + rng.below(n - 1);
      MatrixTuple a = independent_alternating(f, n, 1 + rng.below(n == 2 ? 1 : 2), rng);
      const Mat pm = block_monomial_matrix(f, n, i, rng);
      MatrixTuple b = sandwich(a, pm);
      const MatrixTuple ga = individualization_gadget(a, i), gb = individualization_gadget(b, i);
      const Mat big = gadget_witness(pm, i);
      REQUIRE(invertible(big));
      Witness w{Tag::Isometry, {big, Mat::identity(f, ga.size())}};
      CHECK(verify_witness(Problem::Isometry, tensor_of(ga), tensor_of(gb), w));
    }
  }
}

TEST_CASE("structural oracle accepts a pair with itself at i = n-1") {
  Field f(3);
  Rng rng(8);
  for (std::size_t n = 2; n <= 4; ++n) {
    MatrixTuple a = independent_alternating(f, n, 1, rng);
    CHECK(structural_decide(a, a, n - 1, default_budget()));
  }
}

TEST_CASE("structural oracle refuses past its feasibility bound") {
  Field f(3);
  Rng rng(8);
  MatrixTuple a = independent_alternating(f, 4, 2, rng);
  // 4! * 2 * |GL(3,3)| = 539136
  CHECK_THROWS_AS(structural_decide(a, a, 1, 500000), Error);
  CHECK(structural_decide(a, a, 1, 600000));
}

TEST_CASE("structural and brute-force gadget oracles agree at n = 2 over GF(2)") {
  Field f(2);
  const Mat j = Mat::from_ints(f, 2, 2, {0, 1, 1, 0});
  const Mat z(f, 2, 2);
  const std::vector<MatrixTuple> spaces{{z}, {j}, {z, z}, {j, z}, {j, j}};
  std::size_t compared = 0, skipped = 0;
  for (const auto& a : spaces)
    for (const auto& b : spaces) {
      const bool structural = structural_decide(a, b, 1, default_budget());
      try {
        const bool brute = brute_oracle(2'000'000)(a, b, 1);
        CHECK(brute == structural);
        ++compared;
      } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::Budget);
        ++skipped;
      }
    }
  MESSAGE("compared " << compared << " pairs, skipped " << skipped << " over budget");
  CHECK(compared > 0);
}

TEST_CASE("find_isometry returns the identity for equal inputs") {
  for (u32 p : {2u, 3u}) {
    Field f(p);
    Rng rng(p);
    for (std::size_t n = 2; n <= 4; ++n) {
      MatrixTuple a = independent_alternating(f, n, std::min<std::size_t>(2, n * (n - 1) / 2), rng);
      auto w = find_isometry(a, a, structural_oracle(default_budget()), default_budget());
      REQUIRE(w.has_value());
      CHECK(w->mats[0] == Mat::identity(f, n));
    }
  }
}

TEST_CASE("find_isometry finds verified witnesses on isometric pairs") {
  Field f(3);
  Rng rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    MatrixTuple a = independent_alternating(f, 4, 2, rng);
    MatrixTuple b = sandwich(a, sample_gl(f, 4, rng));
    SearchStats st;
    auto w = find_isometry(a, b, structural_oracle(default_budget()), default_budget(), &st);
    REQUIRE(w.has_value());
    CHECK(verify_witness(Problem::Isometry, tensor_of(a), tensor_of(b), *w));
    CHECK(st.guesses.size() == 3);
    for (std::size_t s = 0; s < st.guesses.size(); ++s) CHECK(st.guesses[s] <= st.guess_bounds[s]);
    CHECK(st.max_query_side <= st.query_side_bound);
  }
}

TEST_CASE("find_isometry returns None on certified non-isometric pairs") {
  for (u64 seed = 0; seed < 10; ++seed) {
    InstancePair pair = gen_pair(Problem::Isometry, {3, 2}, 2, seed, false, default_budget());
    const MatrixTuple a = std::get<Tensor3>(pair.a).frontal(), b = std::get<Tensor3>(pair.b).frontal();
    CHECK_FALSE(decide_isometry(a, b, default_budget()).has_value());
    CHECK_FALSE(find_isometry(a, b, structural_oracle(default_budget()), default_budget()).has_value());
  }
}

TEST_CASE("accepted prefixes stay accepted for every smaller block") {
  Field f(3);
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    MatrixTuple a = independent_alternating(f, 4, 2, rng);
    MatrixTuple b = sandwich(a, sample_gl(f, 4, rng));
    std::vector<std::pair<MatrixTuple, std::size_t>> accepted;
    const DecisionOracle inner = structural_oracle(default_budget());
    DecisionOracle recording = [&](const MatrixTuple& q, const MatrixTuple& t, std::size_t i) {
      const bool ok = inner(q, t, i);
      if (ok) accepted.emplace_back(q, i);
      return ok;
    };
    REQUIRE(find_isometry(a, b, recording, default_budget()).has_value());
    for (const auto& [q, i] : accepted)
      for (std::size_t smaller = 1; smaller < i; ++smaller) CHECK(structural_decide(q, b, smaller, default_budget()));
  }
}

TEST_CASE("block-form acceptance is not monotone across unrelated bases") {
  // Swapping the first two coordinates is block-monomial for i = 2 but generally for no i = 1 map.
  Field f(3);
  Rng rng(19);
  Mat swap = permutation_matrix(f, {1, 0, 2, 3});
  std::size_t counterexamples = 0;
  for (int trial = 0; trial < 10; ++trial) {
    MatrixTuple a = independent_alternating(f, 4, 2, rng);
    MatrixTuple b = sandwich(a, swap);
    REQUIRE(structural_decide(a, b, 2, default_budget()));
    if (!structural_decide(a, b, 1, default_budget())) ++counterexamples;
  }
  CHECK(counterexamples > 0);
}

TEST_CASE("a lying oracle never yields an unverified witness") {
  Field f(2);
  Rng rng(5);
  const DecisionOracle yes = [](const MatrixTuple&, const MatrixTuple&, std::size_t) { return true; };
  const DecisionOracle no = [](const MatrixTuple&, const MatrixTuple&, std::size_t) { return false; };
  for (int trial = 0; trial < 20; ++trial) {
    MatrixTuple a = independent_alternating(f, 3, 1, rng), b = independent_alternating(f, 3, 2, rng);
    try {
      auto w = find_isometry(a, b, yes, default_budget());
      if (w) CHECK(verify_witness(Problem::Isometry, tensor_of(a), tensor_of(b), *w));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::OracleInconsistent);
    }
    CHECK_FALSE(find_isometry(a, a, no, default_budget()).has_value());
  }
}

TEST_CASE("find_group_isomorphism maps a group to itself by the identity") {
  Field f(3);
  MatrixGroup g = baer_group({Mat::from_ints(f, 2, 2, {0, 1, -1, 0})});
  auto images = find_group_isomorphism(g, g, structural_oracle(default_budget()), default_budget());
  REQUIRE(images.has_value());
  CHECK(*images == g.gens);
}

TEST_CASE("find_group_isomorphism matches a group with a conjugated copy") {
  for (u32 p : {3u, 5u}) {
    Field f(p);
    Rng rng(p * 31);
    for (int trial = 0; trial < 5; ++trial) {
      MatrixTuple a = independent_alternating(f, 3, p == 3 ? 2 : 1, rng);
      MatrixGroup g = baer_group(a);
      MatrixGroup h{f, g.n, {}};
      // Unitriangular conjugation keeps the generators unitriangular; the product below also
      // changes the generating set itself.
      const Mat u = random_unitriangular(f, g.n, rng);
      for (const Mat& s : g.gens) h.gens.push_back(inverse(u) * s * u);
      h.gens[0] = h.gens[0] * h.gens[1];
      auto images = find_group_isomorphism(g, h, structural_oracle(default_budget()), default_budget());
      REQUIRE(images.has_value());
      REQUIRE(images->size() == g.gens.size());
    }
  }
}

TEST_CASE("Heisenberg and elementary abelian groups of order 27 are not isomorphic") {
  Field f(3);
  MatrixGroup heis = baer_group({Mat::from_ints(f, 2, 2, {0, 1, -1, 0})});
  MatrixGroup ab{f, 4, {}};
  for (std::size_t c = 1; c < 4; ++c) {
    Mat x = Mat::identity(f, 4);
    x(0, c) = 1;
    ab.gens.push_back(x);
  }
  CHECK(enumerate_group(ab, 1000).size() == 27);
  CHECK_FALSE(find_group_isomorphism(heis, ab, structural_oracle(default_budget()), default_budget()).has_value());
}

}
