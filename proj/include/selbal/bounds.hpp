#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

namespace selbal {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Closed interval [lo, hi] of long doubles, rounded outward after every
// operation. log/exp are assumed accurate to within a couple of ulps and are
// widened by four.
class Interval {
 public:
  Interval() = default;
  explicit Interval(long double point) : lo_(point), hi_(point) {}
  Interval(long double lo, long double hi);

  static Interval from_integer(std::uint64_t value);  // exact if representable, else enclosed
  static Interval ln2();

  long double lo() const noexcept { return lo_; }
  long double hi() const noexcept { return hi_; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);  // b must exclude 0
  friend Interval log(const Interval& a);                             // a.lo > 0

 private:
  long double lo_ = 0.0L;
  long double hi_ = 0.0L;
};

// Enclosure of ln(value) for value >= 1.
Interval ln_enclosure(const BigInt& value);

enum class Certainty { holds, fails, unknown };

// m ln 2 > n (1 + ln(m/n + 2) + ½ ln(n + 1)), i.e. 2^m > (e(α+2)√(n+1))^n with α = m/n.
Certainty prop1_condition(std::uint64_t m, std::uint64_t n);

struct Threshold {
  std::uint64_t m = 0;
  // The condition is certified false at m - 1 (m = 1 counts as certified).
  bool minimal_certified = false;
};

inline constexpr std::uint64_t kThresholdCap = 1'000'000;

// Smallest m at which the condition is certified; none when no m <= cap is.
std::optional<Threshold> prop1_threshold(std::uint64_t n, std::uint64_t cap = kThresholdCap);

// C(m+2n, n) < (e(α+2))^n, decided exactly: C(m+2n, n) n^n < e^n (m+2n)^n.
bool binomial_volume_bound_holds(std::uint64_t m, std::uint64_t n);

BigInt binomial(std::uint64_t n, std::uint64_t k);

// ((2D+1)^d - 1) / (d D²), the guaranteed size of the fullest norm class of [-D, D]^d.
BigRational shell_pigeonhole_bound(int d, std::int64_t D);

// With D = 2^d: bound > 4^{(d² - d - log₂ d)/2}, equivalently (2D+1)^d - 1 > 2^{d²+d}.
bool shell_bound_exceeds_power(int d);

struct SigmaBracket {
  std::uint64_t n = 0;
  // Largest construction embedded into R^n: an L^d instance whose level 0
  // is the full basis, zero-padded, plus basis vectors on the padding.
  std::optional<std::uint64_t> lower_m;
  std::string lower_source;  // "basis" or "L=..,d=..,k=.."
  std::optional<Threshold> upper;
  std::optional<double> lower_ratio;  // m / (n log₂ n); absent for n = 1
  std::optional<double> upper_ratio;
};

SigmaBracket sigma_bracket(std::uint64_t n, std::uint64_t cap = kThresholdCap);

nlohmann::json to_json(const SigmaBracket& b);
std::string bracket_table(const std::vector<SigmaBracket>& rows);

}  // namespace selbal
