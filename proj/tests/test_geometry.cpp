#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "selbal/geometry.hpp"

using namespace selbal;

namespace {

const std::vector<Point> kCross = {{-1, 0}, {0, -1}, {0, 1}, {1, 0}};

std::vector<Point> random_points(std::mt19937_64& rng, int d, std::size_t count, std::int64_t span) {
  std::set<Point> pts;
  while (pts.size() < count) {
    Point p(static_cast<std::size_t>(d));
    for (auto& c : p) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * span + 1)) - span;
    pts.insert(p);
  }
  std::vector<Point> out(pts.begin(), pts.end());
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

}  // namespace

TEST_CASE("strict convexity on the spec shapes") {
  CHECK(is_strictly_convex(make_point_set(2, kCross)));
  CHECK_FALSE(is_strictly_convex(make_point_set(2, {{0, 0}, {1, 0}, {2, 0}})));
  CHECK(is_strictly_convex(make_point_set(2, {{0, 0}})));
  CHECK(is_strictly_convex(make_point_set(3, shell_points(3, 3, 9))));
  CHECK_THROWS_AS(make_point_set(2, {{0, 0}, {0, 0}}), ContractViolation);
}

TEST_CASE("strict convexity agrees with the Caratheodory oracle, d <= 3, |C| <= 8") {
  std::mt19937_64 rng(3);
  int convex = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + trial % 3;
    const std::size_t count = 1 + rng() % 8;
    const std::int64_t span = d == 1 ? 6 : 2;
    if (d == 1 && count > 13) continue;
    const auto pts = random_points(rng, d, count, span);
    const bool expected = oracle::strictly_convex_brute(pts);
    if (d == 2) CHECK(expected == oracle::strictly_convex_2d(pts));
    CHECK(is_strictly_convex(make_point_set(d, pts)) == expected);
    convex += expected ? 1 : 0;
  }
  CHECK(convex > 20);
  CHECK(convex < 280);
}

TEST_CASE("separating functionals are exact and normalised") {
  const std::vector<Point> pts = {{0, 0}, {3, 1}, {1, 4}, {-2, 2}};
  const auto C = make_point_set(2, pts);
  for (const auto& y : pts) {
    const auto f = separating_functional(y, C);
    REQUIRE(f.has_value());
    for (const auto& z : pts) {
      if (z == y) continue;
      Rational diff(0);
      for (int j = 0; j < 2; ++j) diff += (*f)[static_cast<std::size_t>(j)] * Rational(y[j] - z[j]);
      CHECK(diff >= Rational(1));
    }
  }
  CHECK_FALSE(separating_functional({1, 0}, make_point_set(2, {{0, 0}, {1, 0}, {2, 0}})).has_value());
}

TEST_CASE("lonely points of the cross and two translates") {
  const auto C = make_point_set(2, kCross);
  const auto T = make_point_set(2, {{0, 0}, {1, 0}});
  const auto lonely = lonely_points(C, T);
  std::set<Point> xs;
  for (const auto& l : lonely) xs.insert(l.x);
  CHECK(xs.contains(Point{2, 0}));
  CHECK(xs.contains(Point{-1, 0}));
  CHECK(xs.size() == 8);  // the two copies of the cross are disjoint
  const auto counts = oracle::representation_counts(kCross, T.points);
  for (const auto& l : lonely) CHECK(counts.at(l.x) == 1);
  std::size_t singles = 0;
  for (const auto& [x, c] : counts) singles += c == 1 ? 1 : 0;
  CHECK(lonely.size() == singles);

  const auto w = lonely_witness_for({1, 0}, C, T);
  CHECK(w.x == Point{2, 0});
  CHECK(w.t == Point{1, 0});
}

TEST_CASE("a single translate makes every point lonely") {
  const auto C = make_point_set(2, kCross);
  const auto T = make_point_set(2, {{5, 7}});
  CHECK(lonely_points(C, T).size() == 4);
  for (const auto& y : kCross) {
    const auto w = lonely_witness_for(y, C, T);
    CHECK(w.t == Point{5, 7});
    CHECK(w.x == Point{y[0] + 5, y[1] + 7});
  }
}

TEST_CASE("lonely points need strict convexity and y in C") {
  const auto line = make_point_set(2, {{0, 0}, {1, 0}, {2, 0}});
  const auto T = make_point_set(2, {{0, 0}});
  CHECK_THROWS_AS(lonely_points(line, T), ContractViolation);
  CHECK_THROWS_AS(lonely_witness_for({9, 9}, make_point_set(2, kCross), T), ContractViolation);
}

TEST_CASE("lonely witnesses on random convex sets that are not shells") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 50; ++trial) {
    const auto pts = random_points(rng, 2, 3 + rng() % 5, 4);
    if (!oracle::strictly_convex_2d(pts)) continue;
    ++checked;
    const auto T = random_points(rng, 2, 1 + rng() % 8, 3);
    const auto counts = oracle::representation_counts(pts, T);
    for (const auto& y : pts) {
      const auto w = lonely_witness_for(y, make_point_set(2, pts), make_point_set(2, T));
      CHECK(counts.at(w.x) == 1);
      CHECK(std::find(T.begin(), T.end(), w.t) != T.end());
      for (int j = 0; j < 2; ++j) CHECK(w.x[static_cast<std::size_t>(j)] == y[static_cast<std::size_t>(j)] + w.t[static_cast<std::size_t>(j)]);
    }
  }
  CHECK(checked == 50);
}

TEST_CASE("norm classes partition the box") {
  for (int d = 1; d <= 3; ++d) {
    for (std::int64_t D = 1; D <= 4; ++D) {
      std::uint64_t total = 0;
      for (auto c : norm_class_counts(d, D)) total += c;
      std::uint64_t expected = 1;
      for (int j = 0; j < d; ++j) expected *= static_cast<std::uint64_t>(2 * D + 1);
      CHECK(total == expected);
    }
  }
}

TEST_CASE("find_shell examples") {
  const auto s24 = find_shell(2, 4);
  CHECK(s24.radius_sq == 25);
  CHECK(s24.points == std::vector<Point>{{-4, -3}, {-4, 3}, {-3, -4}, {-3, 4}, {3, -4}, {3, 4}, {4, -3}, {4, 3}});
  CHECK(s24.r == 4);
  CHECK(find_shell(1, 1).points == std::vector<Point>{{-1}, {1}});
  // Ties go to the largest squared norm.
  CHECK(find_shell(1, 2).points == std::vector<Point>{{-2}, {2}});
  CHECK(find_shell(3, 3) == find_shell(3, 3));
  CHECK_THROWS_AS(find_shell(10, 100), BudgetExceeded);
}

TEST_CASE("shells are equal-norm and meet the pigeonhole count") {
  for (int d = 1; d <= 3; ++d) {
    for (std::int64_t D = 1; D <= 8; ++D) {
      const auto s = find_shell(d, D);
      for (const auto& p : s.points) CHECK(norm_sq(p) == s.radius_sq);
      std::uint64_t box = 1;
      for (int j = 0; j < d; ++j) box *= static_cast<std::uint64_t>(2 * D + 1);
      const std::uint64_t denom = static_cast<std::uint64_t>(d * D * D);
      CHECK(s.points.size() * denom >= box - 1);
      CHECK(s.r <= D);
    }
  }
}

TEST_CASE("smallest shells and box radii") {
  const auto cross = smallest_shell(2, 4);
  CHECK(cross.points == kCross);
  CHECK(cross.radius_sq == 1);
  const auto s25 = smallest_shell(2, 25);
  CHECK(s25.radius_sq == 1105);
  CHECK(s25.points.size() == 32);
  CHECK(s25.r == 33);
  CHECK_THROWS_AS(smallest_shell(1, 3), ParameterError);
  CHECK(min_box_radius(2, 4, 10) == 1);
  CHECK(min_box_radius(2, 8, 10) == 2);
  CHECK_FALSE(min_box_radius(2, 100, 3).has_value());
}
