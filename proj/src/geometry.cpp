#include "selbal/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "selbal/arith.hpp"

namespace selbal {

std::int64_t norm_sq(const Point& x) {
  std::int64_t s = 0;
  for (auto c : x) s = checked_add64(s, checked_mul64(c, c));
  return s;
}

std::int64_t inf_norm(const Point& x) {
  std::int64_t r = 0;
  for (auto c : x) r = std::max(r, c < 0 ? -c : c);
  return r;
}

LatticeShell make_shell(int dimension, std::vector<Point> points, std::int64_t box_bound) {
  if (dimension < 1) throw ParameterError("shell dimension must be positive");
  if (points.empty()) throw ParameterError("shell must contain at least one point");
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
    throw ParameterError("shell points must be distinct");
  }
  LatticeShell shell;
  shell.dimension = dimension;
  shell.radius_sq = norm_sq(points.front());
  if (shell.radius_sq == 0) throw ParameterError("shell radius must be positive");
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dimension) throw ParameterError("shell point has wrong dimension");
    if (norm_sq(p) != shell.radius_sq) throw ParameterError("shell points do not share one norm");
    shell.r = std::max(shell.r, inf_norm(p));
  }
  if (box_bound < shell.r) throw ParameterError("shell exceeds its box bound D");
  shell.points = std::move(points);
  shell.box_bound = box_bound;
  return shell;
}

PointSet make_point_set(int dimension, std::vector<Point> points) {
  std::set<Point> seen;
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dimension) throw ContractViolation("point has wrong dimension");
    if (!seen.insert(p).second) throw ContractViolation("point set contains a repeated point");
  }
  return PointSet{dimension, std::move(points)};
}

namespace {

// Phase-one simplex with Bland's rule: a point x >= 0 with A x = b, b >= 0.
std::optional<std::vector<Rational>> feasible_point(const std::vector<std::vector<Rational>>& A,
                                                    const std::vector<Rational>& b) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows == 0 ? 0 : A.front().size();
  const std::size_t width = cols + rows + 1;
  const std::size_t rhs = width - 1;

  std::vector<std::vector<Rational>> tab(rows + 1, std::vector<Rational>(width));
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < cols; ++c) tab[i][c] = A[i][c];
    tab[i][cols + i] = 1;
    tab[i][rhs] = b[i];
    basis[i] = cols + i;
  }
  // Reduced costs of the phase-one objective Σ artificials.
  auto& cost = tab[rows];
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t i = 0; i < rows; ++i) cost[c] -= tab[i][c];
  }
  for (std::size_t i = 0; i < rows; ++i) cost[rhs] -= tab[i][rhs];

  while (true) {
    std::size_t enter = width;
    for (std::size_t c = 0; c < cols + rows; ++c) {
      if (cost[c].sign() < 0) {
        enter = c;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = rows;
    Rational best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (tab[i][enter].sign() <= 0) continue;
      const Rational ratio = tab[i][rhs] / tab[i][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) break;  // unbounded direction; cannot happen for phase one

    const Rational pivot = tab[leave][enter];
    for (auto& v : tab[leave]) v /= pivot;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == leave || tab[i][enter].is_zero()) continue;
      const Rational factor = tab[i][enter];
      for (std::size_t c = 0; c < width; ++c) {
        if (!tab[leave][c].is_zero()) tab[i][c] -= factor * tab[leave][c];
      }
    }
    basis[leave] = enter;
  }

  if (!cost[rhs].is_zero()) return std::nullopt;  // Σ artificials > 0 at the optimum
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < cols) x[basis[i]] = tab[i][rhs];
  }
  return x;
}

bool equal_norm(const PointSet& C) {
  if (C.points.empty()) return true;
  const auto r = norm_sq(C.points.front());
  return std::all_of(C.points.begin(), C.points.end(),
                     [r](const Point& p) { return norm_sq(p) == r; });
}

Int128 dot(std::span<const std::int64_t> f, const Point& x) {
  Int128 s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s = checked_add(s, checked_mul(f[i], x[i]));
  return s;
}

Point add(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add64(a[i], b[i]);
  return r;
}

void require_dimension(const Point& p, int d, const char* what) {
  if (static_cast<int>(p.size()) != d) throw ContractViolation(std::string(what) + " has wrong dimension");
}

}  // namespace

std::optional<std::vector<Rational>> separating_functional(const Point& y, const PointSet& C) {
  const auto d = static_cast<std::size_t>(C.dimension);
  require_dimension(y, C.dimension, "point");
  // f = f+ - f-, one surplus per other point: (y - y')·f - s = 1.
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  for (const auto& other : C.points) {
    if (other == y) continue;
    const std::size_t row = A.size();
    A.emplace_back(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
      const std::int64_t diff = checked_add64(y[i], -other[i]);
      A[row][i] = diff;
      A[row][d + i] = -diff;
    }
    b.emplace_back(1);
  }
  const std::size_t rows = A.size();
  for (std::size_t i = 0; i < rows; ++i) {
    A[i].resize(2 * d + rows);
    A[i][2 * d + i] = -1;
  }
  if (rows == 0) return std::vector<Rational>(d);
  auto x = feasible_point(A, b);
  if (!x) return std::nullopt;
  std::vector<Rational> f(d);
  for (std::size_t i = 0; i < d; ++i) f[i] = (*x)[i] - (*x)[d + i];
  return f;
}

bool is_strictly_convex(const PointSet& C) {
  if (C.points.size() <= 1) return true;
  // Distinct points of one norm: f = y separates y by Cauchy-Schwarz.
  if (equal_norm(C)) return true;
  return std::all_of(C.points.begin(), C.points.end(),
                     [&C](const Point& y) { return separating_functional(y, C).has_value(); });
}

std::vector<LonelyPoint> lonely_points(const PointSet& C, const PointSet& T) {
  if (C.points.empty() || T.points.empty()) throw ContractViolation("lonely points need nonempty C and T");
  if (C.dimension != T.dimension) throw ContractViolation("C and T differ in dimension");
  if (!is_strictly_convex(C)) throw ContractViolation("C is not in strictly convex position");

  struct Rep {
    std::size_t count = 0;
    const Point* t = nullptr;
    const Point* y = nullptr;
  };
  std::map<Point, Rep> reps;
  for (const auto& t : T.points) {
    for (const auto& y : C.points) {
      auto& rep = reps[add(y, t)];
      if (rep.count++ == 0) {
        rep.t = &t;
        rep.y = &y;
      }
    }
  }
  std::vector<LonelyPoint> out;
  for (const auto& [x, rep] : reps) {
    if (rep.count == 1) out.push_back({x, *rep.t, *rep.y});
  }
  return out;
}

LonelyWitness lonely_witness_for(const Point& y, const PointSet& C, const PointSet& T) {
  require_dimension(y, C.dimension, "y");
  if (std::find(C.points.begin(), C.points.end(), y) == C.points.end()) {
    throw ContractViolation("y is not a point of C");
  }
  if (T.points.empty()) throw ContractViolation("T is empty");
  if (T.dimension != C.dimension) throw ContractViolation("C and T differ in dimension");

  std::vector<std::int64_t> f(static_cast<std::size_t>(C.dimension));
  if (equal_norm(C)) {
    f = y;
  } else {
    auto rational = separating_functional(y, C);
    if (!rational) throw ContractViolation("y is not a vertex of conv(C)");
    std::int64_t lcm = 1;
    for (const auto& q : *rational) lcm = std::lcm(lcm, q.den());
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] = checked_mul64((*rational)[i].num(), lcm / (*rational)[i].den());
    }
  }

  // f(y) > f(y') on C, so every maximiser of f over C + T is y + t with t
  // maximising f over T.
  std::optional<Int128> best;
  const Point* best_t = nullptr;
  for (const auto& t : T.points) {
    const Int128 value = dot(f, t);
    if (!best || value > *best || (value == *best && t < *best_t)) {
      best = value;
      best_t = &t;
    }
  }
  return {add(y, *best_t), *best_t, std::move(f)};
}

std::vector<std::uint64_t> norm_class_counts(int d, std::int64_t D) {
  if (d < 1 || D < 0) throw ContractViolation("bad box shape");
  std::vector<std::uint64_t> counts{1};
  const std::int64_t sq = checked_mul64(D, D);
  for (int j = 0; j < d; ++j) {
    std::vector<std::uint64_t> next(counts.size() + static_cast<std::size_t>(sq), 0);
    for (std::size_t s = 0; s < counts.size(); ++s) {
      if (counts[s] == 0) continue;
      for (std::int64_t x = -D; x <= D; ++x) next[s + static_cast<std::size_t>(x * x)] += counts[s];
    }
    counts = std::move(next);
  }
  return counts;
}

namespace {

std::int64_t isqrt(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

void collect_shell(int d, std::int64_t D, std::int64_t remaining, Point& prefix,
                   std::vector<Point>& out) {
  const int left = d - static_cast<int>(prefix.size());
  if (left == 1) {
    const std::int64_t s = isqrt(remaining);
    if (s * s != remaining || s > D) return;
    for (std::int64_t x : {-s, s}) {
      prefix.push_back(x);
      out.push_back(prefix);
      prefix.pop_back();
      if (s == 0) break;
    }
    return;
  }
  const std::int64_t reach = static_cast<std::int64_t>(left - 1) * D * D;
  for (std::int64_t x = -D; x <= D; ++x) {
    const std::int64_t rest = remaining - x * x;
    if (rest < 0 || rest > reach) continue;
    prefix.push_back(x);
    collect_shell(d, D, rest, prefix, out);
    prefix.pop_back();
  }
}

std::uint64_t box_size(int d, std::int64_t D) {
  std::uint64_t size = 1;
  const auto side = static_cast<std::uint64_t>(2 * D + 1);
  for (int j = 0; j < d; ++j) {
    if (size > UINT64_MAX / side) return UINT64_MAX;
    size *= side;
  }
  return size;
}

void check_budget(int d, std::int64_t D, std::uint64_t budget) {
  if (box_size(d, D) > budget) {
    throw BudgetExceeded("enumerating [-" + std::to_string(D) + ", " + std::to_string(D) + "]^" +
                         std::to_string(d) + " exceeds the budget of " + std::to_string(budget) +
                         " points");
  }
}

}  // namespace

std::vector<Point> shell_points(int d, std::int64_t D, std::int64_t radius_sq) {
  if (d < 1 || D < 0) throw ContractViolation("bad box shape");
  std::vector<Point> out;
  Point prefix;
  prefix.reserve(static_cast<std::size_t>(d));
  collect_shell(d, D, radius_sq, prefix, out);
  return out;
}

ShellProfile shell_profile(int d, std::int64_t D, std::uint64_t budget) {
  if (d < 1 || D < 1) throw ContractViolation("find_shell needs d >= 1 and D >= 1");
  check_budget(d, D, budget);
  const auto counts = norm_class_counts(d, D);
  ShellProfile profile{d, D, 0, 0, 0};
  for (std::size_t s = 1; s < counts.size(); ++s) {
    if (counts[s] >= profile.count) {
      profile.count = counts[s];
      profile.radius_sq = static_cast<std::int64_t>(s);
    }
  }
  // By symmetry the largest |x_0| over the class is its infinity norm.
  const auto lower = d > 1 ? norm_class_counts(d - 1, D) : std::vector<std::uint64_t>{1};
  for (std::int64_t x = D; x >= 0; --x) {
    const std::int64_t rest = profile.radius_sq - x * x;
    if (rest >= 0 && static_cast<std::size_t>(rest) < lower.size() && lower[rest] > 0) {
      profile.r = x;
      break;
    }
  }
  return profile;
}

LatticeShell find_shell(int d, std::int64_t D, std::uint64_t budget) {
  const ShellProfile profile = shell_profile(d, D, budget);
  return make_shell(d, shell_points(d, D, profile.radius_sq), D);
}

LatticeShell smallest_shell(int d, std::uint64_t min_points, std::uint64_t budget) {
  if (d < 1) throw ContractViolation("dimension must be positive");
  if (d == 1 && min_points > 2) {
    throw ParameterError("spheres in Z^1 have at most 2 points; need " + std::to_string(min_points));
  }
  for (std::int64_t B = 1;; B *= 2) {
    check_budget(d, B, budget);
    const auto counts = norm_class_counts(d, B);
    // Norms up to B² are complete inside the box.
    for (std::int64_t s = 1; s <= B * B; ++s) {
      if (counts[static_cast<std::size_t>(s)] >= min_points) {
        auto points = shell_points(d, B, s);
        std::int64_t r = 0;
        for (const auto& p : points) r = std::max(r, inf_norm(p));
        return make_shell(d, std::move(points), r);
      }
    }
  }
}

std::optional<std::int64_t> min_box_radius(int d, std::uint64_t min_points, std::int64_t max_radius) {
  // The fullest class only grows with the box, so bisect on r.
  auto fullest = [d](std::int64_t r) {
    const auto counts = norm_class_counts(d, r);
    return *std::max_element(counts.begin() + 1, counts.end());
  };
  if (max_radius < 1 || fullest(max_radius) < min_points) return std::nullopt;
  std::int64_t lo = 1, hi = max_radius;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (fullest(mid) >= min_points) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace selbal
