#include "selbal/rational.hpp"

#include <numeric>

namespace selbal {

namespace {

Int128 gcd128(Int128 a, Int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_wide(num, den);
}

Rational Rational::from_wide(Int128 num, Int128 den) {
  if (den == 0) throw ContractViolation("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits_int64(num) || !fits_int64(den)) throw ArithmeticOverflow("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::from_wide(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                             checked_mul(a.den_, b.den_));
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::from_wide(checked_sub(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                             checked_mul(a.den_, b.den_));
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_wide(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw ContractViolation("rational division by zero");
  return Rational::from_wide(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
}

Rational Rational::operator-() const {
  return from_wide(-static_cast<Int128>(num_), den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const Int128 lhs = static_cast<Int128>(a.num_) * b.den_;
  const Int128 rhs = static_cast<Int128>(b.num_) * a.den_;
  return lhs < rhs ? std::strong_ordering::less
                   : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace selbal
