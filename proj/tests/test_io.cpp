#include "doctest.h"
#include "support.hpp"
#include "tik/io.hpp"

using namespace tik;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_object(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    return e.what();
  }
  FAIL("expected a parse error for: " << text);
  return {};
}

Object random_object(std::size_t kind, Rng& rng) {
  static const u32 primes[] = {2, 3, 5, 7};
  const Field f(primes[rng.below(4)]);
  switch (kind) {
    case 0: return std::get<Tensor3>(gen_instance(Problem::TI3, {1 + rng.below(3), 1 + rng.below(3), 1 + rng.below(3)}, f, rng));
    case 1: {
      std::vector<std::size_t> dims;
      for (std::size_t i = 0, d = 1 + rng.below(4); i < d; ++i) dims.push_back(1 + rng.below(3));
      return std::get<TensorD>(gen_instance(Problem::TId, dims, f, rng));
    }
    case 2: return object_from_instance(Problem::Isometry, gen_instance(Problem::Isometry, {1 + rng.below(4), rng.below(3)}, f, rng));
    case 3: return object_from_instance(Problem::PseudoIsometry, gen_instance(Problem::PseudoIsometry, {1 + rng.below(4), 1 + rng.below(3)}, f, rng));
    case 4: {
      const std::size_t n = 1 + rng.below(4);
      MatrixTuple s;
      for (std::size_t k = 0, m = 1 + rng.below(3); k < m; ++k) s.push_back(random_symmetric(f, n, rng));
      return SpaceObject{tuple_alternating(s) ? SpaceKind::Alternating : SpaceKind::Symmetric, Tensor3::from_frontal(f, n, n, s)};
    }
    case 5: return random_mat(f, 1 + rng.below(3), 1 + rng.below(4), rng);
    case 6: return std::get<Graph>(gen_instance(Problem::GraphIso, {1 + rng.below(5)}, f, rng));
    case 7: return std::get<Graph>(gen_instance(Problem::DigraphIso, {1 + rng.below(4)}, f, rng));
    case 8: return std::get<AlgebraSC>(gen_instance(Problem::AlgebraIso, {1 + rng.below(3)}, f, rng));
    case 9: return std::get<FormD>(gen_instance(Problem::FormEq, {1 + rng.below(3), 1 + rng.below(4)}, f, rng));
    case 10: {
      MatrixGroup g{f, 1 + rng.below(4), {}};
      for (std::size_t k = 0, m = rng.below(4); k < m; ++k) g.gens.push_back(sample_gl(f, g.n, rng));
      return g;
    }
    default: {
      const Problem problems[] = {Problem::TI3, Problem::Isometry, Problem::AlgebraIso, Problem::MonCodeEq, Problem::FormEq};
      const Problem pr = problems[rng.below(5)];
      std::vector<std::size_t> dims = pr == Problem::TI3 ? std::vector<std::size_t>{2, 2, 2}
                                      : pr == Problem::MonCodeEq ? std::vector<std::size_t>{2, 3}
                                      : pr == Problem::FormEq ? std::vector<std::size_t>{2, 3}
                                      : std::vector<std::size_t>{3, 2};
      if (pr == Problem::AlgebraIso) dims = {2};
      return random_witness(pr, gen_instance(pr, dims, f, rng), rng);
    }
  }
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("parse inverts emit on random objects of every type") {
  Rng rng(99);
  for (std::size_t kind = 0; kind < 12; ++kind)
    for (int trial = 0; trial < 100; ++trial) {
      CAPTURE(kind);
      const Object obj = random_object(kind, rng);
      const std::string text = emit_object(obj);
      CAPTURE(text);
      const Object back = parse_object(text);
      CHECK(back == obj);
      CHECK(emit_object(back) == text);
    }
}

TEST_CASE("a one-entry tensor file is the unit tensor") {
  const Object obj = parse_object("tensor3 1 1 1 2\n1\n");
  const Tensor3& t = std::get<Tensor3>(obj);
  CHECK(t.dim(0) == 1);
  CHECK(t.dim(2) == 1);
  CHECK(t(0, 0, 0) == 1);
  CHECK(t.field().p() == 2);
}

TEST_CASE("entries run i slowest and k fastest") {
  const Object obj = parse_object("tensor3 1 2 2 5\n1 2\n3 4\n");
  const Tensor3& t = std::get<Tensor3>(obj);
  CHECK(t(0, 0, 0) == 1);
  CHECK(t(0, 0, 1) == 2);
  CHECK(t(0, 1, 0) == 3);
  CHECK(t(0, 1, 1) == 4);
}

TEST_CASE("comments and blank lines are ignored") {
  const Object obj = parse_object("# a comment\n\ncode 1 2 3  # trailing\n# between\n1 2\n");
  CHECK(std::get<Mat>(obj) == Mat::from_ints(Field(3), 1, 2, {1, 2}));
}

TEST_CASE("graph files are 1-based") {
  const Graph g = std::get<Graph>(parse_object("graph 3 2\n1 2\n2 3\n"));
  CHECK(g.n == 3);
  CHECK(g.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
  CHECK(parse_error("graph 3 1\n0 1\n").find("line 2") != std::string::npos);
  CHECK(parse_error("graph 3 1\n1 4\n").find("outside") != std::string::npos);
}

TEST_CASE("altspace rejects a nonzero diagonal") {
  const std::string err = parse_error("altspace 2 1 3\n1 1\n2 0\n");
  CHECK(err.find("line 2") != std::string::npos);
  CHECK(err.find("not alternating") != std::string::npos);
  CHECK_NOTHROW(parse_object("altspace 2 1 3\n0 1\n2 0\n"));
  CHECK(parse_error("symspace 2 1 3\n0 1\n2 0\n").find("not symmetric") != std::string::npos);
}

TEST_CASE("parse errors carry the line number") {
  CHECK(parse_error("tensor3 1 1 2 3\n1\n").find("too few") != std::string::npos);
  CHECK(parse_error("tensor3 1 1 1 3\n1\n2\n").find("line 3") != std::string::npos);
  CHECK(parse_error("tensor3 1 1 1 3\n\n\n3\n").find("line 4") != std::string::npos);
  CHECK(parse_error("tensor3 1 1 1 3\n-1\n").find("line 2") != std::string::npos);
  CHECK(parse_error("tensor3 1 1 3\n").find("malformed header") != std::string::npos);
  CHECK(parse_error("tensor3 1 1 1 4\n1\n").find("line 1") != std::string::npos);
  CHECK(parse_error("frob 1\n").find("unknown object type") != std::string::npos);
  CHECK(parse_error("# only a comment\n").find("empty input") != std::string::npos);
  CHECK(parse_error("formd 2 2 3\n1 0 1\n").find("sum to 1") != std::string::npos);
  CHECK(parse_error("group 2 1 3\n1 1\n1 1\n").find("singular") != std::string::npos);
  CHECK(parse_error("witness nope 1 2\n1 1\n1\n").find("unknown witness tag") != std::string::npos);
}

TEST_CASE("typed views check the object kind") {
  const Object code = parse_object("code 1 2 3\n1 2\n");
  CHECK_NOTHROW(instance_from_object(Problem::MonCodeEq, code));
  CHECK_THROWS_AS(instance_from_object(Problem::TI3, code), Error);
  const Object dg = parse_object("digraph 2 1\n1 1\n");
  CHECK_THROWS_AS(instance_from_object(Problem::GraphIso, dg), Error);
  CHECK_NOTHROW(instance_from_object(Problem::DigraphIso, dg));
  const Object t3 = parse_object("tensor3 1 1 1 2\n1\n");
  CHECK(std::get<TensorD>(instance_from_object(Problem::TId, t3)).order() == 3);
}

}
