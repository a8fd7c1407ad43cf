#include "selbal/vectorspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace selbal {

std::string to_string(Int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work with negative values so INT128_MIN is representable.
  Int128 n = negative ? v : -v;
  std::string digits;
  while (n != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(n % 10)));
    n /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Int128 parse_int128(const std::string& s) {
  if (s.empty()) throw ContractViolation("empty integer literal");
  std::size_t i = 0;
  const bool negative = s[0] == '-';
  if (negative || s[0] == '+') ++i;
  if (i == s.size()) throw ContractViolation("integer literal has no digits: " + s);
  Int128 v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ContractViolation("bad integer literal: " + s);
    v = checked_sub(checked_mul(v, 10), s[i] - '0');
  }
  return negative ? v : checked_sub(0, v);
}

ScaledVector::ScaledVector(std::int64_t dimension, std::int64_t base, int exponent,
                           std::vector<Entry> entries)
    : dimension_(dimension), base_(base), exponent_(exponent) {
  if (dimension < 1) throw ContractViolation("dimension must be positive");
  if (base < 2) throw ContractViolation("scale base must be at least 2");
  if (exponent < 0) throw ContractViolation("scale exponent must be non-negative");
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  for (const auto& e : entries) {
    if (e.index < 0 || e.index >= dimension) {
      throw ContractViolation("coordinate index " + std::to_string(e.index) + " outside [0, " +
                              std::to_string(dimension) + ")");
    }
    if (!entries_.empty() && entries_.back().index == e.index) {
      entries_.back().numerator = checked_add64(entries_.back().numerator, e.numerator);
    } else {
      entries_.push_back(e);
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return e.numerator == 0; });
}

std::int64_t ScaledVector::numerator_at(std::int64_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::int64_t i) { return e.index < i; });
  return (it != entries_.end() && it->index == index) ? it->numerator : 0;
}

ScaledVector ScaledVector::rescaled(int new_exponent) const {
  if (new_exponent < exponent_) throw ContractViolation("cannot rescale to a coarser denominator");
  const std::int64_t factor = ipow64(base_, new_exponent - exponent_);
  std::vector<Entry> scaled;
  scaled.reserve(entries_.size());
  for (const auto& e : entries_) scaled.push_back({e.index, checked_mul64(e.numerator, factor)});
  return ScaledVector(dimension_, base_, new_exponent, std::move(scaled));
}

ScaledVector ScaledVector::operator-() const {
  ScaledVector r = *this;
  for (auto& e : r.entries_) {
    if (e.numerator == INT64_MIN) throw ArithmeticOverflow("negation overflow");
    e.numerator = -e.numerator;
  }
  return r;
}

ScaledVector operator+(const ScaledVector& a, const ScaledVector& b) {
  if (a.dimension() != b.dimension()) throw ContractViolation("dimension mismatch");
  if (a.base() != b.base()) throw ContractViolation("scale base mismatch");
  const int exp = std::max(a.exponent(), b.exponent());
  const ScaledVector ra = a.rescaled(exp);
  const ScaledVector rb = b.rescaled(exp);
  std::vector<Entry> merged(ra.entries().begin(), ra.entries().end());
  merged.insert(merged.end(), rb.entries().begin(), rb.entries().end());
  return ScaledVector(a.dimension(), a.base(), exp, std::move(merged));
}

Int128 norm_sq_scaled(const ScaledVector& v) {
  Int128 s = 0;
  for (const auto& e : v.entries()) {
    s = checked_add(s, checked_mul(e.numerator, e.numerator));
  }
  return s;
}

SignVector::SignVector(std::vector<std::int8_t> coefficients) : coeffs_(std::move(coefficients)) {
  for (auto c : coeffs_) {
    if (c < -1 || c > 1) throw ContractViolation("sign coefficient outside {-1, 0, 1}");
  }
}

SignVector SignVector::unit(std::size_t m, std::size_t i, std::int8_t sign) {
  if (i >= m) throw ContractViolation("unit sign index out of range");
  std::vector<std::int8_t> c(m, 0);
  c[i] = sign;
  return SignVector(std::move(c));
}

bool SignVector::nontrivial() const noexcept {
  return std::any_of(coeffs_.begin(), coeffs_.end(), [](std::int8_t c) { return c != 0; });
}

std::size_t SignVector::support_size() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](std::int8_t c) { return c != 0; }));
}

SignVector SignVector::negated() const {
  SignVector r = *this;
  for (auto& c : r.coeffs_) c = static_cast<std::int8_t>(-c);
  return r;
}

SignVector SignVector::canonical() const {
  for (auto c : coeffs_) {
    if (c != 0) return c > 0 ? *this : negated();
  }
  return *this;
}

UnitVectorFamily::UnitVectorFamily(std::int64_t dimension, std::int64_t base,
                                   std::vector<ScaledVector> vectors,
                                   std::optional<ConstructionParams> provenance)
    : dimension_(dimension), base_(base), provenance_(std::move(provenance)) {
  if (dimension < 1) throw ContractViolation("dimension must be positive");
  if (base < 2) throw ContractViolation("scale base must be at least 2");
  for (const auto& v : vectors) {
    if (v.dimension() != dimension) throw ContractViolation("vector dimension differs from family");
    if (v.base() != base) throw ContractViolation("vector scale base differs from family");
    exponent_ = std::max(exponent_, v.exponent());
  }
  scale_sq_ = ipow128(base, 2 * exponent_);
  vectors_.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    ScaledVector v = vectors[i].rescaled(exponent_);
    if (norm_sq_scaled(v) != scale_sq_) {
      throw ContractViolation("vector " + std::to_string(i) + " is not exactly unit norm");
    }
    vectors_.push_back(std::move(v));
  }
}

ScaledVector combine(const UnitVectorFamily& family, const SignVector& eps) {
  if (eps.size() != family.size()) {
    throw ContractViolation("sign vector length " + std::to_string(eps.size()) +
                            " differs from family size " + std::to_string(family.size()));
  }
  std::vector<Entry> acc;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (eps[i] == 0) continue;
    for (const auto& e : family[i].entries()) {
      acc.push_back({e.index, eps[i] > 0 ? e.numerator : -e.numerator});
    }
  }
  return ScaledVector(family.dimension(), family.base(), family.exponent(), std::move(acc));
}

bool is_balancing_witness(const UnitVectorFamily& family, const SignVector& eps) {
  const ScaledVector v = combine(family, eps);
  return eps.nontrivial() && norm_sq_scaled(v) < family.scale_sq();
}

RealFamily::RealFamily(std::int64_t dimension, std::vector<std::vector<RealEntry>> vectors,
                       double unit_tolerance)
    : dimension_(dimension) {
  if (dimension < 1) throw ContractViolation("dimension must be positive");
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    auto& v = vectors[i];
    std::sort(v.begin(), v.end(),
              [](const RealEntry& a, const RealEntry& b) { return a.index < b.index; });
    double s = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j].index < 0 || v[j].index >= dimension) {
        throw ContractViolation("coordinate index outside [0, n)");
      }
      if (j > 0 && v[j].index == v[j - 1].index) throw ContractViolation("duplicate coordinate index");
      s += v[j].value * v[j].value;
    }
    if (!(std::abs(s - 1.0) <= unit_tolerance)) {
      throw ContractViolation("vector " + std::to_string(i) + " is not unit norm");
    }
    std::erase_if(v, [](const RealEntry& e) { return e.value == 0.0; });
  }
  vectors_ = std::move(vectors);
}

RealFamily to_real(const UnitVectorFamily& family) {
  const long double scale = static_cast<long double>(ipow128(family.base(), family.exponent()));
  std::vector<std::vector<RealEntry>> out;
  out.reserve(family.size());
  for (const auto& v : family.vectors()) {
    std::vector<RealEntry> r;
    for (const auto& e : v.entries()) {
      r.push_back({e.index, static_cast<double>(static_cast<long double>(e.numerator) / scale)});
    }
    out.push_back(std::move(r));
  }
  return RealFamily(family.dimension(), std::move(out));
}

std::int64_t coordinate_index(std::span<const std::int64_t> x, std::int64_t L) {
  if (L < 1) throw ContractViolation("side length must be positive");
  std::int64_t index = 0;
  std::int64_t radix = 1;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < 1 || x[j] > L) {
      throw ContractViolation("lattice coordinate " + std::to_string(x[j]) + " outside [1, " +
                              std::to_string(L) + "]");
    }
    index = checked_add64(index, checked_mul64(x[j] - 1, radix));
    if (j + 1 < x.size()) radix = checked_mul64(radix, L);
  }
  return index;
}

Point lattice_point(std::int64_t index, std::int64_t L, int d) {
  if (L < 1 || d < 0) throw ContractViolation("bad lattice shape");
  if (index < 0) throw ContractViolation("negative coordinate index");
  Point x(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    x[j] = index % L + 1;
    index /= L;
  }
  if (index != 0) throw ContractViolation("coordinate index beyond L^d");
  return x;
}

}  // namespace selbal
