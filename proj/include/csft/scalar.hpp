#pragma once

// Exact scalar arithmetic: arbitrary-precision rationals and prime fields.
// Field descriptors carry runtime parameters (the prime p), values are plain
// structs so tensors can hold them densely.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "csft/errors.hpp"

namespace csft {

using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Rational field

struct RationalField {
  using Value = Rational;

  Value zero() const { return Rational(0); }
  Value one() const { return Rational(1); }
  Value from_int(long long v) const { return Rational(v); }

  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value neg(const Value& a) const { return -a; }
  bool is_zero(const Value& a) const { return a == 0; }
  bool eq(const Value& a, const Value& b) const { return a == b; }

  Value inv(const Value& a) const {
    if (a == 0) throw SingularError("division by zero in Q");
    return Rational(1) / a;
  }

  std::string to_string(const Value& a) const {
    const auto num = boost::multiprecision::numerator(a);
    const auto den = boost::multiprecision::denominator(a);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }

  Value parse(const std::string& s) const {
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
      boost::multiprecision::cpp_int num(s.substr(0, slash));
      boost::multiprecision::cpp_int den(s.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator: " + s);
      return Rational(num, den);
    } catch (const std::exception&) {
      throw ParseError("bad rational literal: " + s);
    }
  }

  bool operator==(const RationalField&) const { return true; }
};

// ---------------------------------------------------------------------------
// Prime field F_p

struct FpValue {
  std::int64_t v = 0;
  bool operator==(const FpValue&) const = default;
};

struct PrimeField {
  std::int64_t p = 2;

  using Value = FpValue;

  explicit PrimeField(std::int64_t prime = 2) : p(prime) {
    if (p < 2) throw ValidationError("field characteristic must be >= 2");
    for (std::int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw ValidationError("field characteristic must be prime");
  }

  Value zero() const { return {0}; }
  Value one() const { return {1 % p}; }
  Value from_int(long long v) const {
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return {r};
  }

  Value add(Value a, Value b) const { return {(a.v + b.v) % p}; }
  Value sub(Value a, Value b) const { return {(a.v - b.v % p + p) % p}; }
  Value mul(Value a, Value b) const { return {(a.v * b.v) % p}; }
  Value neg(Value a) const { return {(p - a.v) % p}; }
  bool is_zero(Value a) const { return a.v == 0; }
  bool eq(Value a, Value b) const { return a.v == b.v; }

  Value inv(Value a) const {
    if (a.v == 0) throw SingularError("division by zero in F_p");
    // extended Euclid
    std::int64_t t = 0, new_t = 1, r = p, new_r = a.v;
    while (new_r != 0) {
      const std::int64_t q = r / new_r;
      t -= q * new_t;
      std::swap(t, new_t);
      r -= q * new_r;
      std::swap(r, new_r);
    }
    if (t < 0) t += p;
    return {t};
  }

  std::string to_string(Value a) const { return std::to_string(a.v) + " mod " + std::to_string(p); }

  Value parse(const std::string& s) const {
    try {
      const auto mod = s.find(" mod ");
      const std::string head = mod == std::string::npos ? s : s.substr(0, mod);
      if (mod != std::string::npos) {
        const std::int64_t q = std::stoll(s.substr(mod + 5));
        if (q != p) throw ParseError("scalar modulus " + std::to_string(q) + " does not match field p=" + std::to_string(p));
      }
      return from_int(std::stoll(head));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("bad F_p literal: " + s);
    }
  }

  bool operator==(const PrimeField& o) const { return p == o.p; }
};

}  // namespace csft
