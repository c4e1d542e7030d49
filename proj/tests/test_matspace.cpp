#include <cmath>
#include <map>

#include "doctest.h"
#include "support.hpp"

using namespace tik;
using namespace tik::testing;

TEST_SUITE("matspace") {

TEST_CASE("rank, kernel and solve on small examples") {
  const Field f2(2), f3(3);
  CHECK(rank(Mat::identity(f2, 3)) == 3);
  const Mat k = right_kernel(Mat::from_ints(f2, 2, 2, {1, 1, 0, 0}));
  REQUIRE(k.cols() == 1);
  CHECK(k.col(0) == Vec{1, 1});
  // x + 2y = 1, 2x + y = 1 has the rational solution x = y = 1/3, which does not exist mod 3:
  // the second row is twice the first with right-hand side 1 instead of 2.
  CHECK_FALSE(solve(Mat::from_ints(f3, 2, 2, {1, 2, 2, 1}), Mat::from_ints(f3, 2, 1, {1, 1})).consistent);
  // x + y = 2, x + 2y = 1 -> x = 0, y = 2
  const Solution s = solve(Mat::from_ints(f3, 2, 2, {1, 1, 1, 2}), Mat::from_ints(f3, 2, 1, {2, 1}));
  REQUIRE(s.consistent);
  CHECK(s.particular == Mat::from_ints(f3, 2, 1, {0, 2}));
  CHECK(s.nullspace.cols() == 0);
  CHECK_FALSE(solve(Mat::from_ints(f3, 2, 1, {1, 1}), Mat::from_ints(f3, 2, 1, {1, 2})).consistent);
}

TEST_CASE("kernels and inverses agree with multiplication") {
  Rng rng(5);
  for (u32 p : {2u, 3u, 5u}) {
    const Field f(p);
    for (int t = 0; t < 100; ++t) {
      const Mat m = random_mat(f, 1 + rng.below(4), 1 + rng.below(4), rng);
      const Mat k = right_kernel(m);
      CHECK(k.cols() + rank(m) == m.cols());
      if (k.cols()) CHECK((m * k).is_zero());
      const Mat l = left_kernel(m);
      if (l.rows()) CHECK((l * m).is_zero());
      const Mat g = sample_gl(f, 1 + rng.below(4), rng);
      CHECK(g * inverse(g) == Mat::identity(f, g.rows()));
      CHECK(det(g) != 0);
    }
  }
}

TEST_CASE("span equality and membership") {
  const Field f5(5), f3(3);
  CHECK(span_equal({Mat::identity(f5, 2)}, {Mat::identity(f5, 2).scaled(2)}));
  const Mat alt = Mat::from_ints(f3, 2, 2, {0, 1, -1, 0});
  CHECK_FALSE(span_contains({alt}, Mat::identity(f3, 2)));
  CHECK(span_contains({alt}, alt.scaled(2)));
}

TEST_CASE("two random bases of one space span it equally") {
  Rng rng(11);
  for (u32 p : {2u, 3u, 5u}) {
    const Field f(p);
    for (int t = 0; t < 50; ++t) {
      MatrixTuple a;
      do {
        a = {random_mat(f, 3, 3, rng), random_mat(f, 3, 3, rng)};
      } while (span_dim(a) != 2);
      const Mat r = sample_gl(f, 2, rng);
      const MatrixTuple b = mix(a, r);
      CHECK(span_equal(a, b));
      const auto back = solve_mixing(a, b, default_budget());
      REQUIRE(back.has_value());
      CHECK(mix(a, *back) == b);
    }
  }
}

TEST_CASE("mix uses the columns of r") {
  const Field f(7);
  const MatrixTuple t{Mat::identity(f, 2), Mat::from_ints(f, 2, 2, {0, 1, 0, 0})};
  // column 0 of r is (2, 3): new slice 0 = 2 t0 + 3 t1
  const MatrixTuple out = mix(t, Mat::from_ints(f, 2, 2, {2, 5, 3, 6}));
  CHECK(out[0] == Mat::from_ints(f, 2, 2, {2, 3, 0, 2}));
  CHECK(out[1] == Mat::from_ints(f, 2, 2, {5, 6, 0, 5}));
}

TEST_CASE("matrix space flags are computed") {
  const Field f(3);
  const MatrixSpace alt({Mat::from_ints(f, 2, 2, {0, 1, 2, 0})});
  CHECK(alt.alternating());
  CHECK_FALSE(alt.symmetric());
  const MatrixSpace sym({Mat::identity(f, 2)});
  CHECK(sym.symmetric());
  CHECK_FALSE(sym.alternating());
  CHECK_THROWS_AS(MatrixSpace({Mat::identity(f, 2), Mat::identity(f, 2).scaled(2)}), Error);
}

TEST_CASE("group orders match enumeration") {
  auto count_gl = [](std::size_t n, u32 p) {
    u64 c = 0;
    enumerate_gl(Field(p), n, default_budget(), [&](const Mat& m) {
      CHECK(invertible(m));
      ++c;
      return true;
    });
    return c;
  };
  CHECK(count_gl(2, 2) == 6);
  CHECK(count_gl(3, 2) == 168);
  CHECK(count_gl(2, 3) == 48);
  CHECK(gl_order(3, 2) == 168);
  u64 mono = 0;
  enumerate_monomial(Field(3), 2, default_budget(), [&](const MonomialMatrix& m) {
    CHECK(is_monomial(m.expand(Field(3))));
    ++mono;
    return true;
  });
  CHECK(mono == 8);
  CHECK(monomial_order(2, 3) == 8);
  u64 perms = 0;
  enumerate_permutations(4, [&](const std::vector<std::size_t>&) { return ++perms, true; });
  CHECK(perms == 24);
}

TEST_CASE("enumeration refuses past the budget") {
  try {
    enumerate_gl(Field(3), 3, 1000, [](const Mat&) { return true; });
    FAIL("no budget error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Budget);
  }
}

TEST_CASE("samplers produce invertible and monomial matrices") {
  CHECK(sample_gl(1, 2, 7) == Mat::identity(Field(2), 1));
  for (u64 seed = 0; seed < 1000; ++seed) {
    CHECK(det(sample_gl(4, 3, seed)) != 0);
    CHECK(is_monomial(sample_monomial(3, 5, seed).expand(Field(5))));
  }
  CHECK(sample_gl(3, 5, 42) == sample_gl(3, 5, 42));
}

TEST_CASE("sample_gl is uniform on GL(2,2)") {
  std::map<Mat, u64> counts;
  enumerate_gl(Field(2), 2, default_budget(), [&](const Mat& m) {
    counts[m] = 0;
    return true;
  });
  Rng rng(2718);
  const int samples = 6000;
  for (int s = 0; s < samples; ++s) ++counts.at(sample_gl(Field(2), 2, rng));
  // Chi-square with 5 degrees of freedom; 5 sigma of that distribution is about 20.8 above its mean of 5.
  double chi2 = 0;
  const double expected = samples / 6.0;
  for (const auto& [m, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(counts.size() == 6);
  CHECK(chi2 < 5 + 5 * std::sqrt(10.0));
}

TEST_CASE("vector indices put the first coordinate most significant") {
  CHECK(vec_index({1, 0}, 3) == 3);
  CHECK(vec_from_index(5, 3, 2) == Vec{1, 0, 1});
  for (u64 i = 0; i < 125; ++i) CHECK(vec_index(vec_from_index(i, 3, 5), 5) == i);
}

TEST_CASE("lateral rank is the rank of the stacked images") {
  const Field f(3);
  const MatrixTuple t{Mat::from_ints(f, 2, 2, {0, 1, 2, 0})};
  CHECK(lateral_rank(t, {1, 0}) == 1);
  CHECK(lateral_rank(t, {0, 0}) == 0);
  const MatrixTuple u{Mat::identity(f, 2), Mat::from_ints(f, 2, 2, {0, 1, 0, 0})};
  CHECK(lateral_rank(u, {0, 1}) == 2);
  CHECK(lateral_rank(u, {1, 0}) == 1);
}

}
