#pragma once

#include <cstdint>

#include "tik/error.hpp"

namespace tik {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Largest modulus accepted unless a caller raises it; keeps a*b inside 64 bits with room.
inline constexpr u32 kDefaultMaxPrime = 1u << 15;

bool is_prime(u32 n);

// Prime field context. Elements are plain u32 values in [0, p).
class Field {
 public:
  explicit Field(u32 p, u32 max_prime = kDefaultMaxPrime);
  // Skips the primality check; only for moduli that already passed it.
  static Field trusted(u32 p) {
    Field f;
    f.p_ = p;
    return f;
  }

  u32 p() const { return p_; }

  u32 add(u32 a, u32 b) const {
    u32 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p_ - b; }
  u32 neg(u32 a) const { return a == 0 ? 0 : p_ - a; }
  u32 mul(u32 a, u32 b) const { return static_cast<u32>(static_cast<u64>(a) * b % p_); }
  u32 inv(u32 a) const;
  u32 div(u32 a, u32 b) const { return mul(a, inv(b)); }
  u32 pow(u32 a, u64 e) const;
  u32 reduce(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<u32>(r < 0 ? r + p_ : r);
  }

  bool operator==(const Field& o) const { return p_ == o.p_; }

 private:
  Field() = default;
  u32 p_ = 2;
};

// Value-carrying element for code that prefers operators over explicit field calls.
class FieldElem {
 public:
  FieldElem(const Field& f, long long v) : p_(f.p()), v_(f.reduce(v)) {}
  u32 value() const { return v_; }
  u32 modulus() const { return p_; }

  FieldElem operator+(FieldElem o) const { return make(field().add(v_, check(o))); }
  FieldElem operator-(FieldElem o) const { return make(field().sub(v_, check(o))); }
  FieldElem operator*(FieldElem o) const { return make(field().mul(v_, check(o))); }
  FieldElem operator/(FieldElem o) const { return make(field().div(v_, check(o))); }
  FieldElem operator-() const { return make(field().neg(v_)); }
  FieldElem inv() const { return make(field().inv(v_)); }
  FieldElem pow(u64 e) const { return make(field().pow(v_, e)); }
  bool operator==(const FieldElem& o) const { return p_ == o.p_ && v_ == o.v_; }

 private:
  // Modulus was validated when the first element of this field was built.
  Field field() const { return Field::trusted(p_); }
  u32 check(const FieldElem& o) const {
    require(o.p_ == p_, ErrorKind::Dimension, "field elements from different moduli");
    return o.v_;
  }
  FieldElem make(u32 v) const {
    FieldElem r = *this;
    r.v_ = v;
    return r;
  }

  u32 p_;
  u32 v_;
};

}  // namespace tik
