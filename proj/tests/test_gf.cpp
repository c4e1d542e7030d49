#include "doctest.h"
#include "tik/gf.hpp"

using namespace tik;

TEST_SUITE("gf") {

TEST_CASE("small field identities") {
  CHECK(Field(5).inv(3) == 2);
  CHECK(Field(2).neg(1) == 1);
  CHECK(Field(13).pow(2, 12) == 1);
  CHECK(Field(7).div(3, 5) == 2);  // 5 * 2 = 10 = 3
  CHECK(Field(3).sub(0, 1) == 2);
}

TEST_CASE("construction rejects composite and oversized moduli") {
  for (u32 n : {0u, 1u, 4u, 9u, 91u}) {
    CAPTURE(n);
    try {
      Field f(n);
      FAIL("accepted a non-prime");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotPrime);
    }
  }
  CHECK_THROWS_AS(Field(65537), Error);
  CHECK_NOTHROW(Field(65537, 1u << 17));
}

TEST_CASE("inverse of zero is a division error") {
  try {
    Field(7).inv(0);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
}

TEST_CASE("every field axiom holds exhaustively for small primes") {
  for (u32 p : {2u, 3u, 5u, 7u, 11u}) {
    const Field f(p);
    CAPTURE(p);
    for (u32 a = 0; a < p; ++a) {
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a) {
        CHECK(f.mul(a, f.inv(a)) == 1);
        CHECK(f.pow(a, p - 1) == 1);
      }
      for (u32 b = 0; b < p; ++b) {
        CHECK(f.add(a, b) == (a + b) % p);
        CHECK(f.mul(a, b) == (a * b) % p);
        CHECK(f.add(f.sub(a, b), b) == a);
        for (u32 c = 0; c < p; ++c) CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
  }
}

TEST_CASE("reduce maps negative integers into range") {
  const Field f(5);
  CHECK(f.reduce(-1) == 4);
  CHECK(f.reduce(-10) == 0);
  CHECK(f.reduce(12) == 2);
}

TEST_CASE("field elements carry their modulus") {
  const Field f(7), g(5);
  const FieldElem a(f, 3), b(f, 5);
  CHECK((a + b).value() == 1);
  CHECK((a * b).value() == 1);
  CHECK((a / b).value() == 2);
  CHECK((-a).value() == 4);
  CHECK(a.inv().value() == 5);
  CHECK(a.pow(6).value() == 1);
  CHECK_THROWS_AS(a + FieldElem(g, 1), Error);
}

}
