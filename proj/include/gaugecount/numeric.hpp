#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace gaugecount {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt ipow(BigInt base, std::uint64_t exp) {
  BigInt result = 1;
  while (exp > 0) {
    if (exp & 1U) result *= base;
    exp >>= 1U;
    if (exp > 0) base *= base;
  }
  return result;
}

/// (num/den)^exp for a signed exponent; negative exponents invert the base.
inline BigRational rational_pow(const BigInt& num, const BigInt& den, std::int64_t exp) {
  if (exp >= 0) {
    return BigRational(ipow(num, static_cast<std::uint64_t>(exp)), ipow(den, static_cast<std::uint64_t>(exp)));
  }
  const auto e = static_cast<std::uint64_t>(-exp);
  return BigRational(ipow(den, e), ipow(num, e));
}

inline bool is_integer(const BigRational& q) { return boost::multiprecision::denominator(q) == 1; }

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const BigRational& q) {
  if (is_integer(q)) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_u64(a, b) * b;
}

}  // namespace gaugecount
