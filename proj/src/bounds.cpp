#include "selbal/bounds.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "selbal/errors.hpp"
#include "selbal/geometry.hpp"

namespace selbal {

namespace {

constexpr long double kInf = std::numeric_limits<long double>::infinity();

long double down(long double v, int steps = 1) {
  for (int i = 0; i < steps; ++i) v = std::nextafter(v, -kInf);
  return v;
}

long double up(long double v, int steps = 1) {
  for (int i = 0; i < steps; ++i) v = std::nextafter(v, kInf);
  return v;
}

}  // namespace

Interval::Interval(long double lo, long double hi) : lo_(lo), hi_(hi) {
  if (!(lo <= hi)) throw ContractViolation("interval bounds out of order");
}

Interval Interval::from_integer(std::uint64_t value) {
  // 64-bit mantissa: every uint64 is exact.
  return Interval(static_cast<long double>(value));
}

Interval Interval::ln2() {
  const long double v = 0.693147180559945309417232121458176568L;
  return Interval(down(v), up(v));
}

Interval operator+(const Interval& a, const Interval& b) {
  return Interval(down(a.lo_ + b.lo_), up(a.hi_ + b.hi_));
}

Interval operator-(const Interval& a, const Interval& b) {
  return Interval(down(a.lo_ - b.hi_), up(a.hi_ - b.lo_));
}

Interval operator*(const Interval& a, const Interval& b) {
  const long double p[] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  return Interval(down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4)));
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo_ <= 0.0L && b.hi_ >= 0.0L) throw ContractViolation("interval division by an interval containing 0");
  const long double q[] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
  return Interval(down(*std::min_element(q, q + 4)), up(*std::max_element(q, q + 4)));
}

Interval log(const Interval& a) {
  if (!(a.lo_ > 0.0L)) throw ContractViolation("log of a non-positive interval");
  return Interval(down(std::log(a.lo_), 4), up(std::log(a.hi_), 4));
}

Interval ln_enclosure(const BigInt& value) {
  if (value < 1) throw ContractViolation("ln enclosure needs value >= 1");
  const auto bits = boost::multiprecision::msb(value);
  if (bits < 64) return log(Interval::from_integer(static_cast<std::uint64_t>(value)));
  // value = top * 2^shift + rest with 0 <= rest < 2^shift.
  const auto shift = bits - 63;
  const auto top = static_cast<std::uint64_t>(value >> shift);
  const Interval mantissa(static_cast<long double>(top), up(static_cast<long double>(top) + 1.0L));
  return log(mantissa) + Interval::from_integer(shift) * Interval::ln2();
}

Certainty prop1_condition(std::uint64_t m, std::uint64_t n) {
  if (m < 1 || n < 1) throw ContractViolation("m and n must be positive");
  const Interval M = Interval::from_integer(m);
  const Interval N = Interval::from_integer(n);
  const Interval lhs = M * Interval::ln2();
  const Interval half(0.5L);
  const Interval rhs =
      N * (Interval(1.0L) + log(M / N + Interval(2.0L)) + half * log(N + Interval(1.0L)));
  if (lhs.lo() > rhs.hi()) return Certainty::holds;
  if (lhs.hi() <= rhs.lo()) return Certainty::fails;
  return Certainty::unknown;
}

std::optional<Threshold> prop1_threshold(std::uint64_t n, std::uint64_t cap) {
  if (n < 1) throw ContractViolation("n must be positive");
  if (cap < 1 || prop1_condition(cap, n) != Certainty::holds) return std::nullopt;
  // m ln 2 - n ln(m/n + 2) is increasing, so the certified region is a suffix.
  std::uint64_t lo = 1, hi = cap;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (prop1_condition(mid, n) == Certainty::holds) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return Threshold{lo, lo == 1 || prop1_condition(lo - 1, n) == Certainty::fails};
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

bool binomial_volume_bound_holds(std::uint64_t m, std::uint64_t n) {
  if (m < 1 || n < 1) throw ContractViolation("m and n must be positive");
  const BigInt left = binomial(m + 2 * n, n) * boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(n));
  const BigInt right = boost::multiprecision::pow(BigInt(m + 2 * n), static_cast<unsigned>(n));
  // left < e^n right  <=>  ln left - ln right < n
  const Interval diff = ln_enclosure(left) - ln_enclosure(right);
  const auto nn = static_cast<long double>(n);
  if (diff.hi() < nn) return true;
  if (diff.lo() >= nn) return false;
  using Wide = boost::multiprecision::cpp_bin_float_100;
  return Wide(left) < boost::multiprecision::exp(Wide(n)) * Wide(right);
}

BigRational shell_pigeonhole_bound(int d, std::int64_t D) {
  if (d < 1 || D < 1) throw ContractViolation("d and D must be positive");
  const BigInt points = boost::multiprecision::pow(BigInt(2 * D + 1), static_cast<unsigned>(d));
  return BigRational(points - 1, BigInt(d) * D * D);
}

bool shell_bound_exceeds_power(int d) {
  if (d < 2) throw ContractViolation("the comparison is stated for d >= 2");
  const BigInt D = BigInt(1) << d;
  const BigInt lhs = boost::multiprecision::pow(2 * D + 1, static_cast<unsigned>(d)) - 1;
  return lhs > (BigInt(1) << (d * d + d));
}

namespace {

std::optional<std::int64_t> cached_box_radius(int d, std::uint64_t points, std::int64_t max_radius) {
  static std::mutex mutex;
  static std::map<std::tuple<int, std::uint64_t, std::int64_t>, std::optional<std::int64_t>> cache;
  const auto key = std::make_tuple(d, points, max_radius);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const auto r = min_box_radius(d, points, max_radius);
  std::lock_guard lock(mutex);
  cache.emplace(key, r);
  return r;
}

// floor(n^{1/d})
std::uint64_t integer_root(std::uint64_t n, int d) {
  auto pow_le = [&](std::uint64_t x) {
    BigInt p = boost::multiprecision::pow(BigInt(x), static_cast<unsigned>(d));
    return p <= n;
  };
  auto x = static_cast<std::uint64_t>(std::pow(static_cast<long double>(n), 1.0L / d));
  while (x > 0 && !pow_le(x)) --x;
  while (pow_le(x + 1)) ++x;
  return x;
}

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = static_cast<std::uint64_t>(checked_mul64(static_cast<std::int64_t>(r), static_cast<std::int64_t>(b)));
  return r;
}

}  // namespace

SigmaBracket sigma_bracket(std::uint64_t n, std::uint64_t cap) {
  if (n < 1) throw ContractViolation("n must be positive");
  SigmaBracket b;
  b.n = n;
  b.lower_m = n;
  b.lower_source = "basis";
  for (int d = 2;; ++d) {
    const std::uint64_t L = integer_root(n, d);
    if (L < 3) break;
    const auto max_radius = static_cast<std::int64_t>((L - 1) / 2);
    for (int k = 1; 2 * k < 64; ++k) {
      const auto r = cached_box_radius(d, std::uint64_t{1} << (2 * k), max_radius);
      if (!r) break;
      const std::uint64_t m = n + static_cast<std::uint64_t>(k) * upow(L - 2 * static_cast<std::uint64_t>(*r), d);
      if (m > *b.lower_m) {
        b.lower_m = m;
        b.lower_source = "L=" + std::to_string(L) + ",d=" + std::to_string(d) + ",k=" + std::to_string(k) +
                         ",r=" + std::to_string(*r);
      }
    }
  }
  b.upper = prop1_threshold(n, cap);
  if (n >= 2) {
    const double scale = static_cast<double>(n) * std::log2(static_cast<double>(n));
    b.lower_ratio = static_cast<double>(*b.lower_m) / scale;
    if (b.upper) b.upper_ratio = static_cast<double>(b.upper->m) / scale;
  }
  return b;
}

nlohmann::json to_json(const SigmaBracket& b) {
  using nlohmann::json;
  auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  return json{{"n", b.n},
              {"lower_m", opt(b.lower_m)},
              {"lower_source", b.lower_source},
              {"upper_m", b.upper ? json(b.upper->m) : json(nullptr)},
              {"upper_minimal_certified", b.upper ? json(b.upper->minimal_certified) : json(nullptr)},
              {"lower_ratio", opt(b.lower_ratio)},
              {"upper_ratio", opt(b.upper_ratio)}};
}

std::string bracket_table(const std::vector<SigmaBracket>& rows) {
  std::ostringstream out;
  auto ratio = [](const std::optional<double>& r) {
    if (!r) return std::string("-");
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << *r;
    return s.str();
  };
  out << std::setw(10) << "n" << std::setw(12) << "lower_m" << std::setw(12) << "lower_ratio" << std::setw(12)
      << "upper_m" << std::setw(12) << "upper_ratio" << "  lower_source\n";
  for (const auto& b : rows) {
    out << std::setw(10) << b.n << std::setw(12) << (b.lower_m ? std::to_string(*b.lower_m) : "-")
        << std::setw(12) << ratio(b.lower_ratio) << std::setw(12)
        << (b.upper ? std::to_string(b.upper->m) : "-") << std::setw(12) << ratio(b.upper_ratio) << "  "
        << b.lower_source << "\n";
  }
  return out.str();
}

}  // namespace selbal
