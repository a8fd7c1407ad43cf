#pragma once

#include <cstdint>
#include <string>

#include "selbal/errors.hpp"

namespace selbal {

using Int128 = __int128;

inline Int128 checked_add(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("128-bit addition overflow");
  return r;
}

inline Int128 checked_sub(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("128-bit subtraction overflow");
  return r;
}

inline Int128 checked_mul(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("128-bit multiplication overflow");
  return r;
}

inline std::int64_t checked_add64(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("64-bit addition overflow");
  return r;
}

inline std::int64_t checked_mul64(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("64-bit multiplication overflow");
  return r;
}

inline std::int64_t ipow64(std::int64_t base, int exp) {
  if (exp < 0) throw ContractViolation("negative exponent");
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul64(r, base);
  return r;
}

inline Int128 ipow128(Int128 base, int exp) {
  if (exp < 0) throw ContractViolation("negative exponent");
  Int128 r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

inline bool fits_int64(Int128 v) {
  return v >= INT64_MIN && v <= INT64_MAX;
}

std::string to_string(Int128 v);
Int128 parse_int128(const std::string& s);

}  // namespace selbal
