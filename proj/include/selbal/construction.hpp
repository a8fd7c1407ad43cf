#pragma once

#include <cstdint>
#include <vector>

#include "selbal/geometry.hpp"
#include "selbal/params.hpp"
#include "selbal/vectorspace.hpp"

namespace selbal {

// S_0 ⊂ ... ⊂ S_k with S_i the first p^{2i} points of the lexicographically
// sorted shell. Throws ParameterError when the shell has fewer than p^{2k} points.
std::vector<std::vector<Point>> nested_subsets(const LatticeShell& shell, int k, std::int64_t p);

// Validated parameters with the chain filled in. Throws ParameterError naming
// the violated invariant.
ConstructionParams make_params(int d, std::int64_t p, int k, std::int64_t L, LatticeShell shell,
                               BaseLevel level0 = BaseLevel::shell);

// Offsets and translate box of one level: the level's vectors are
// p^{-i} Σ_{y ∈ offsets} e_{t+y} for t in [lo, hi]^d.
struct LevelLayout {
  std::vector<Point> offsets;
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  std::int64_t side() const noexcept { return hi >= lo ? hi - lo + 1 : 0; }
};

LevelLayout level_layout(const ConstructionParams& params, int level);

// Number of translates per level, in vector order.
std::vector<std::int64_t> level_sizes(const ConstructionParams& params);
std::int64_t family_size(const ConstructionParams& params);
std::int64_t family_dimension(const ConstructionParams& params);

// Vector index -> (level, translate) in the generation order: levels
// ascending, translates lexicographic within a level.
struct VectorLabel {
  int level = 0;
  Point t;
};
std::vector<VectorLabel> vector_labels(const ConstructionParams& params);

// u_{t,i} = p^{-i} Σ_{y ∈ S_i} e_{t+y} at scale p^k.
ScaledVector construction_vector(const ConstructionParams& params, int level, const Point& t);

UnitVectorFamily build_instance(const ConstructionParams& params);

// The 5x5 example: all 25 basis vectors of R^25 plus the 9 vectors
// (1/2)(e_{t±(1,0)} + e_{t±(0,1)}) for t in [2,4]^2.
ConstructionParams figure_example_params();
UnitVectorFamily figure_example();

struct PlannedParameters {
  double lambda = 0.0;
  int d = 0;
  std::int64_t D = 0;
  std::int64_t L = 0;
  ShellProfile shell;
  int k = 0;
  Int128 m = 0;
  Int128 n = 0;
  double ratio = 0.0;  // m / (n log2 n)
  // Interpolation interval (sqrt(lambda), lambda) for the exponent mu used to
  // reach dimensions between consecutive L^d. Recorded only.
  double mu_low = 0.0;
  double mu_high = 0.0;
};

// D = 2^d, shell = find_shell(d, D), k = max{j : 4^j <= |S|}, L = floor(2^{lambda d}).
// Throws ParameterError("d too small ...") when L <= 2r and BudgetExceeded
// when [-D, D]^d is too large to enumerate.
PlannedParameters plan_parameters(double lambda, int d,
                                  std::uint64_t budget = kDefaultEnumerationBudget);

// Materialises the planned shell and chain. Family sizes must fit in memory.
ConstructionParams planned_construction(const PlannedParameters& plan,
                                        std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace selbal
