#include <cmath>

#include "doctest.h"
#include "selbal/bounds.hpp"
#include "selbal/geometry.hpp"

using namespace selbal;

namespace {

// Plain double evaluation of m ln 2 - n(1 + ln(m/n + 2) + ½ ln(n+1)).
double margin(double m, double n) { return m * std::log(2.0) - n * (1.0 + std::log(m / n + 2.0) + 0.5 * std::log(n + 1.0)); }

}  // namespace

TEST_CASE("interval arithmetic encloses") {
  const Interval a(1.0L, 2.0L), b(-1.0L, 3.0L);
  const Interval p = a * b;
  CHECK(p.lo() <= -2.0L);
  CHECK(p.hi() >= 6.0L);
  const Interval l = log(Interval(2.0L));
  CHECK(l.lo() < std::log(2.0L));
  CHECK(l.hi() > std::log(2.0L));
  CHECK(Interval::ln2().lo() < Interval::ln2().hi());
  CHECK_THROWS_AS(Interval(1.0L) / Interval(-1.0L, 1.0L), ContractViolation);
  const Interval big = ln_enclosure(BigInt(1) << 200);
  CHECK(big.lo() <= 200 * std::log(2.0L));
  CHECK(big.hi() >= 200 * std::log(2.0L));
}

TEST_CASE("threshold values and minimality") {
  CHECK(prop1_threshold(1)->m == 5);
  CHECK(prop1_threshold(2)->m == 11);
  CHECK(prop1_threshold(25)->m == 174);
  CHECK(prop1_threshold(4096)->m == 45716);
  for (std::uint64_t n = 1; n <= 300; ++n) {
    const auto t = prop1_threshold(n);
    REQUIRE(t.has_value());
    CHECK(t->minimal_certified);
    CHECK(prop1_condition(t->m, n) == Certainty::holds);
    CHECK(prop1_condition(t->m - 1, n) == Certainty::fails);
    CHECK(margin(static_cast<double>(t->m), static_cast<double>(n)) > 0);
    CHECK(margin(static_cast<double>(t->m - 1), static_cast<double>(n)) <= 0);
  }
  CHECK_FALSE(prop1_threshold(1000, 10).has_value());
}

TEST_CASE("threshold is nondecreasing in n") {
  std::uint64_t previous = 0;
  for (std::uint64_t n = 1; n <= 2000; n += 7) {
    const auto t = prop1_threshold(n)->m;
    CHECK(t >= previous);
    previous = t;
  }
}

TEST_CASE("binomial volume bound") {
  CHECK(binomial(3, 1) == 3);
  CHECK(binomial(10, 5) == 252);
  CHECK(binomial_volume_bound_holds(1, 1));
  for (std::uint64_t n = 1; n <= 64; n += (n < 8 ? 1 : 9)) {
    for (std::uint64_t m = n; m <= 64 * n; m += std::max<std::uint64_t>(1, n / 2)) {
      CHECK(binomial_volume_bound_holds(m, n));
    }
  }
}

TEST_CASE("binomial bound scales both sides consistently") {
  // (m, n) -> (2m, 2n): alpha is unchanged, and both sides are recomputed.
  for (std::uint64_t n = 1; n <= 10; ++n) {
    for (std::uint64_t m = n; m <= 5 * n; ++m) {
      CHECK(binomial_volume_bound_holds(m, n) == binomial_volume_bound_holds(2 * m, 2 * n));
    }
  }
}

TEST_CASE("shell pigeonhole bound") {
  CHECK(shell_pigeonhole_bound(2, 4) == BigRational(5, 2));
  CHECK(shell_pigeonhole_bound(1, 1) == BigRational(2));
  for (int d = 1; d <= 3; ++d) {
    for (std::int64_t D = 1; D <= 8; ++D) {
      CHECK(BigRational(find_shell(d, D).points.size()) >= shell_pigeonhole_bound(d, D));
    }
  }
  for (int d = 2; d <= 12; ++d) CHECK(shell_bound_exceeds_power(d));
}

TEST_CASE("sigma bracket") {
  const auto b1 = sigma_bracket(1);
  CHECK(*b1.lower_m >= 1);
  CHECK(b1.upper->m == 5);
  CHECK_FALSE(b1.lower_ratio.has_value());
  const auto b25 = sigma_bracket(25);
  CHECK(*b25.lower_m >= 34);
  CHECK(b25.lower_source == "L=5,d=2,k=1,r=1");
  for (std::uint64_t n = 1; n <= 600; ++n) {
    const auto b = sigma_bracket(n);
    REQUIRE(b.upper.has_value());
    CHECK(*b.lower_m < b.upper->m);
  }
  const auto j = to_json(b25);
  CHECK(j["lower_m"] == 34);
  CHECK(bracket_table({b1, b25}).find("lower_ratio") != std::string::npos);
}

TEST_CASE("sigma(1) = 2: any two unit vectors of R are balancing") {
  // Unit vectors of R are +1 and -1; check every pair and every sign pattern.
  for (int a : {-1, 1}) {
    for (int b : {-1, 1}) {
      bool balancing = false;
      for (int e1 : {-1, 0, 1}) {
        for (int e2 : {-1, 0, 1}) {
          if ((e1 != 0 || e2 != 0) && std::abs(e1 * a + e2 * b) < 1) balancing = true;
        }
      }
      CHECK(balancing);
    }
  }
  // A single vector never is, matching lower_m >= 1 at n = 1.
  for (int a : {-1, 1}) CHECK(std::abs(a) >= 1);
}
