#include <set>

#include "doctest.h"
#include "support.hpp"
#include "tik/groupcorr.hpp"
#include "tik/oracle.hpp"

using namespace tik;
using tik::testing::independent_alternating;

namespace {

bool exponent_p(const std::vector<Mat>& elements) {
  for (const Mat& x : elements)
    if (mat_pow(x, x.p()) != Mat::identity(x.field(), x.rows())) return false;
  return true;
}

// Class at most 2: every commutator is central. Checked on all element pairs.
bool class_two(const std::vector<Mat>& elements) {
  std::set<Mat> comms;
  for (const Mat& x : elements)
    for (const Mat& y : elements) comms.insert(commutator(x, y));
  for (const Mat& c : comms)
    for (const Mat& x : elements)
      if (c * x != x * c) return false;
  return true;
}

Mat heisenberg_generator(const Field& f, std::size_t r, std::size_t c) {
  Mat m = Mat::identity(f, 3);
  m(r, c) = 1;
  return m;
}

}  // namespace

TEST_SUITE("groupcorr") {

TEST_CASE("baer_group of the Heisenberg form has order 27, exponent 3, class 2") {
  Field f(3);
  MatrixTuple a{Mat::from_ints(f, 2, 2, {0, 1, -1, 0})};
  MatrixGroup g = baer_group(a);
  CHECK(g.gens.size() == 3);
  CHECK(g.n == 4);
  auto elements = enumerate_group(g, 1000);
  CHECK(elements.size() == 27);
  CHECK(exponent_p(elements));
  CHECK(class_two(elements));
}

TEST_CASE("baer_group rejects characteristic 2") {
  Field f(2);
  MatrixTuple a{Mat::from_ints(f, 2, 2, {0, 1, 1, 0})};
  CHECK_THROWS_AS(baer_group(a), Error);
}

TEST_CASE("baer_group generators satisfy g^p = 1 and [[g,h],k] = 1") {
  for (u32 p : {3u, 5u}) {
    Field f(p);
    Rng rng(p * 17);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 2 + rng.below(2), m = 1 + rng.below(n - 1);
      MatrixGroup g = baer_group(independent_alternating(f, n, m, rng));
      const Mat id = Mat::identity(f, g.n);
      for (const Mat& x : g.gens) CHECK(mat_pow(x, p) == id);
      for (const Mat& x : g.gens)
        for (const Mat& y : g.gens)
          for (const Mat& z : g.gens) CHECK(commutator(commutator(x, y), z) == id);
    }
  }
}

TEST_CASE("baer_group order is p^(n+m) with [G,G] of order p^m") {
  for (u32 p : {3u, 5u}) {
    Field f(p);
    Rng rng(p);
    for (std::size_t n = 2; n <= 3; ++n)
      for (std::size_t m = 1; m + n <= 5 && m <= n * (n - 1) / 2; ++m) {
        CAPTURE(n);
        CAPTURE(m);
        MatrixTuple a = independent_alternating(f, n, m, rng);
        auto elements = enumerate_group(baer_group(a), default_budget());
        CHECK(elements.size() == checked_pow(p, n + m));
        CHECK(exponent_p(elements));
        BaerMap bm = baer_alt(baer_group(a), default_budget());
        CHECK(bm.n == n);
        CHECK(bm.m() == m);
      }
  }
}

TEST_CASE("baer_alt inverts baer_group up to pseudo-isometry") {
  for (u32 p : {3u, 5u}) {
    Field f(p);
    Rng rng(40 + p);
    for (int trial = 0; trial < 15; ++trial) {
      const std::size_t n = 2 + rng.below(2);
      const std::size_t m = 1 + rng.below(std::min<std::size_t>(2, n * (n - 1) / 2));
      MatrixTuple a = independent_alternating(f, n, m, rng);
      BaerMap bm = baer_alt(baer_group(a), default_budget());
      CHECK(tuple_alternating(bm.slices));
      auto w = decide_pseudo_isometry(bm.slices, a, default_budget());
      REQUIRE(w.has_value());
      CHECK(verify_witness(Problem::PseudoIsometry, Tensor3::from_frontal(bm.slices), Tensor3::from_frontal(a), *w));
    }
  }
}

TEST_CASE("abelian groups give the empty commutator map") {
  Field f(3);
  MatrixGroup g{f, 4, {}};
  for (std::size_t c = 1; c < 4; ++c) {
    Mat x = Mat::identity(f, 4);
    x(0, c) = 1;
    g.gens.push_back(x);
  }
  BaerMap bm = baer_alt(g, 1000);
  CHECK(bm.m() == 0);
  CHECK(bm.n == 3);
  CHECK(bm.slices.empty());
}

TEST_CASE("baer_alt names the violated relation") {
  Field f(3);
  // Unitriangular 4x4 over GF(3) with a Jordan block has order 9: exponent fails.
  Mat j = Mat::identity(f, 4);
  j(0, 1) = j(1, 2) = j(2, 3) = 1;
  MatrixGroup g{f, 4, {j}};
  try {
    baer_alt(g, 1000);
    FAIL("expected an exponent violation");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("exponent") != std::string::npos);
  }
  // Full unitriangular group of size 4 over GF(5) has exponent 5 and class 3.
  Field f5(5);
  MatrixGroup u{f5, 4, {}};
  for (std::size_t c = 0; c < 3; ++c) {
    Mat x = Mat::identity(f5, 4);
    x(c, c + 1) = 1;
    u.gens.push_back(x);
  }
  try {
    baer_alt(u, default_budget());
    FAIL("expected a class violation");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("class 2") != std::string::npos);
  }
}

TEST_CASE("conjugated generator sets give pseudo-isometric maps") {
  Field f(3);
  Rng rng(77);
  MatrixTuple a = independent_alternating(f, 3, 2, rng);
  MatrixGroup g = baer_group(a);
  const BaerMap base = baer_alt(g, default_budget());
  for (int trial = 0; trial < 100; ++trial) {
    const Mat q = random_unitriangular(f, g.n, rng);
    const Mat qi = inverse(q);
    MatrixGroup h{f, g.n, {}};
    for (const Mat& s : g.gens) h.gens.push_back(qi * s * q);
    // Also reshuffle the generating set so the greedy basis differs.
    std::swap(h.gens[0], h.gens[rng.below(h.gens.size())]);
    BaerMap bm = baer_alt(h, default_budget());
    REQUIRE(bm.n == base.n);
    CHECK(decide_pseudo_isometry(bm.slices, base.slices, default_budget()).has_value());
  }
}

TEST_CASE("matrix_log of a transvection is its nilpotent part") {
  Field f(5);
  Mat g = Mat::identity(f, 2);
  g(0, 1) = 1;
  CHECK(matrix_log(g) == unit_matrix(f, 2, 2, 0, 1));
  CHECK(matrix_exp(unit_matrix(f, 2, 2, 0, 1)) == g);
}

TEST_CASE("matrix_exp and matrix_log are inverse on random unitriangular matrices") {
  for (u32 p : {5u, 7u}) {
    Field f(p);
    Rng rng(p * 3);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 1 + rng.below(4);
      const Mat g = random_unitriangular(f, n, rng);
      const Mat x = matrix_log(g);
      CHECK(matrix_exp(x) == g);
      CHECK(matrix_log(matrix_exp(x)) == x);
    }
  }
}

TEST_CASE("log turns commuting products into sums") {
  Field f(7);
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat g = random_unitriangular(f, 4, rng);
    const Mat h = mat_pow(g, 1 + rng.below(6));
    CHECK(matrix_log(g * h) == matrix_log(g) + matrix_log(h));
  }
}

TEST_CASE("the series domain is exactly (g - I)^p = 0") {
  Field f(3);
  // Size 3 strictly upper: index at most 3 = p, always inside the domain.
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat g = random_unitriangular(f, 3, rng);
    CHECK(matrix_exp(matrix_log(g)) == g);
  }
  Mat j = Mat::identity(f, 4);
  j(0, 1) = j(1, 2) = j(2, 3) = 1;
  CHECK_THROWS_AS(matrix_log(j), Error);
  CHECK_THROWS_AS(matrix_exp(j - Mat::identity(f, 4)), Error);
}

TEST_CASE("lie_closure of commuting matrices is abelian") {
  Field f(5);
  Mat d1 = Mat::from_ints(f, 2, 2, {1, 0, 0, 2});
  Mat d2 = Mat::from_ints(f, 2, 2, {3, 0, 0, 4});
  LieAlgebra l = lie_closure({d1, d2});
  CHECK(l.basis.size() == 2);
  for (u32 x : l.sc.sc().data()) CHECK(x == 0);
}

TEST_CASE("logs of Heisenberg generators close to the Heisenberg Lie algebra") {
  Field f(3);
  const Mat x = matrix_log(heisenberg_generator(f, 0, 1));
  const Mat y = matrix_log(heisenberg_generator(f, 1, 2));
  LieAlgebra l = lie_closure({x, y});
  REQUIRE(l.basis.size() == 3);
  CHECK(l.basis[2] == unit_matrix(f, 3, 3, 0, 2));
  // [x,y] = z, [y,x] = -z, and z is central.
  const Tensor3& sc = l.sc.sc();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        u32 want = 0;
        if (i == 0 && j == 1 && k == 2) want = 1;
        if (i == 1 && j == 0 && k == 2) want = 2;
        CHECK(sc(i, j, k) == want);
      }
}

TEST_CASE("lie_closure is a fixpoint and satisfies the Lie axioms") {
  for (u32 p : {2u, 3u, 5u}) {
    Field f(p);
    Rng rng(p + 100);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + rng.below(2);
      std::vector<Mat> gens;
      for (std::size_t k = 0; k < 2; ++k) gens.push_back(random_mat(f, n, n, rng));
      LieAlgebra l = lie_closure(gens);
      CHECK(l.basis.size() <= n * n);
      CHECK(lie_closure(l.basis).basis.size() == l.basis.size());
      CHECK(l.sc.alternating());
      CHECK(l.sc.jacobi());
    }
  }
}

}
