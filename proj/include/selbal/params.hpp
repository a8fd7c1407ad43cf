#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace selbal {

using Point = std::vector<std::int64_t>;

std::int64_t norm_sq(const Point& x);
std::int64_t inf_norm(const Point& x);

// Integer points sharing one squared Euclidean norm inside [-box_bound, box_bound]^d.
struct LatticeShell {
  int dimension = 0;
  std::int64_t radius_sq = 0;
  std::vector<Point> points;  // sorted lexicographically
  std::int64_t r = 0;         // max infinity norm over points
  std::int64_t box_bound = 0;

  bool operator==(const LatticeShell&) const = default;
};

// Validates the shell invariants, sorts the points and derives r.
// Throws ParameterError on any violation.
LatticeShell make_shell(int dimension, std::vector<Point> points, std::int64_t box_bound);

// How the level-0 vectors are laid out.
//  shell:      u_{t,0} = e_{t+y0} for t in [1+r, L-r]^d (the general construction)
//  full_basis: every basis vector e_x, x in [1, L]^d (the 25-basis-vector example)
enum class BaseLevel { shell, full_basis };

struct ConstructionParams {
  int d = 0;
  std::int64_t p = 2;
  int k = 0;
  std::int64_t L = 0;
  LatticeShell shell;
  std::vector<std::vector<Point>> chain;  // S_0 ⊂ ... ⊂ S_k, |S_i| = p^{2i}
  BaseLevel level0 = BaseLevel::shell;
  std::string name;  // optional label, e.g. "figure2"

  bool operator==(const ConstructionParams&) const = default;
};

}  // namespace selbal
