#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "selbal/params.hpp"
#include "selbal/rational.hpp"

namespace selbal {

// Pairwise-distinct integer points of Z^d.
struct PointSet {
  int dimension = 0;
  std::vector<Point> points;
};

// Throws ContractViolation on a dimension mismatch or a repeated point.
PointSet make_point_set(int dimension, std::vector<Point> points);

// Exact linear functional f with f(y) > f(y') for every other y' in C,
// normalised so that f(y - y') >= 1. Empty when y is not a vertex of conv(C).
std::optional<std::vector<Rational>> separating_functional(const Point& y, const PointSet& C);

// Every point of C is the unique maximiser of some linear functional.
bool is_strictly_convex(const PointSet& C);

struct LonelyPoint {
  Point x;
  Point t;
  Point y;

  bool operator==(const LonelyPoint&) const = default;
};

// Points of C + T with exactly one representation y + t, sorted by x.
// Throws ContractViolation if C is not strictly convex or either set is empty.
std::vector<LonelyPoint> lonely_points(const PointSet& C, const PointSet& T);

struct LonelyWitness {
  Point x;
  Point t;
  std::vector<std::int64_t> functional;  // integer multiple of the separating functional
};

// Maximises a functional separating y over C + T. Among maximisers the
// lexicographically smallest x is returned; it is always lonely and x - y ∈ T.
LonelyWitness lonely_witness_for(const Point& y, const PointSet& C, const PointSet& T);

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 32;

// counts[s] = number of points of [-D, D]^d with squared norm s, s in [0, dD²].
std::vector<std::uint64_t> norm_class_counts(int d, std::int64_t D);

// Points of [-D, D]^d with squared norm exactly radius_sq, lexicographically sorted.
std::vector<Point> shell_points(int d, std::int64_t D, std::int64_t radius_sq);

struct ShellProfile {
  int dimension = 0;
  std::int64_t box_bound = 0;
  std::int64_t radius_sq = 0;
  std::uint64_t count = 0;
  std::int64_t r = 0;
};

// Largest norm class of [-D, D]^d without materialising its points. Ties go
// to the largest squared norm.
ShellProfile shell_profile(int d, std::int64_t D, std::uint64_t budget = kDefaultEnumerationBudget);

// The pigeonhole shell: a norm class of [-D, D]^d of maximum cardinality.
// Throws BudgetExceeded when (2D+1)^d > budget.
LatticeShell find_shell(int d, std::int64_t D, std::uint64_t budget = kDefaultEnumerationBudget);

// The full lattice sphere of smallest squared norm with at least min_points points.
LatticeShell smallest_shell(int d, std::uint64_t min_points,
                            std::uint64_t budget = kDefaultEnumerationBudget);

// Smallest r such that one norm class of [-r, r]^d has at least min_points
// points, searching r <= max_radius.
std::optional<std::int64_t> min_box_radius(int d, std::uint64_t min_points, std::int64_t max_radius);

}  // namespace selbal
