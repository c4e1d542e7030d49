#include "tik/gf.hpp"

#include <string>

namespace tik {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "division by zero";
    case ErrorKind::NotPrime: return "modulus not prime";
    case ErrorKind::Dimension: return "dimension mismatch";
    case ErrorKind::Singular: return "singular matrix";
    case ErrorKind::Budget: return "budget exceeded";
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::WitnessInvalid: return "witness invalid";
    case ErrorKind::RecoveryUnsupported: return "recovery-unsupported";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::OracleInconsistent: return "oracle inconsistent";
    case ErrorKind::Unsupported: return "unsupported";
  }
  return "error";
}

bool is_prime(u32 n) {
  if (n < 2) return false;
  for (u32 d = 2; static_cast<u64>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(u32 p, u32 max_prime) : p_(p) {
  require(p <= max_prime, ErrorKind::Precondition,
          "modulus " + std::to_string(p) + " above limit " + std::to_string(max_prime));
  require(is_prime(p), ErrorKind::NotPrime, std::to_string(p));
}

u32 Field::inv(u32 a) const {
  require(a % p_ != 0, ErrorKind::DivisionByZero, "inverse of 0 mod " + std::to_string(p_));
  // extended Euclid on (a, p)
  long long t = 0, nt = 1, r = p_, nr = a;
  while (nr != 0) {
    long long q = r / nr;
    long long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return reduce(t);
}

u32 Field::pow(u32 a, u64 e) const {
  u32 base = a % p_, acc = 1 % p_;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

}  // namespace tik
