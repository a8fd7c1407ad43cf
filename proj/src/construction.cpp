#include "selbal/construction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace selbal {

namespace {

// Calls fn(t) for every t in [lo, hi]^d in lexicographic order.
template <class Fn>
void for_each_translate(int d, std::int64_t lo, std::int64_t hi, Fn&& fn) {
  if (hi < lo) return;
  Point t(static_cast<std::size_t>(d), lo);
  while (true) {
    fn(static_cast<const Point&>(t));
    int j = d - 1;
    while (j >= 0 && t[j] == hi) t[j--] = lo;
    if (j < 0) return;
    ++t[j];
  }
}

std::int64_t ipow_or_throw(std::int64_t base, int exp, const char* what) {
  try {
    return ipow64(base, exp);
  } catch (const ArithmeticOverflow&) {
    throw ParameterError(std::string(what) + " overflows 64 bits");
  }
}

}  // namespace

std::vector<std::vector<Point>> nested_subsets(const LatticeShell& shell, int k, std::int64_t p) {
  if (k < 0) throw ParameterError("chain depth k must be non-negative");
  if (p < 2) throw ParameterError("base p must be at least 2");
  const std::int64_t needed = ipow_or_throw(p, 2 * k, "p^{2k}");
  if (static_cast<std::uint64_t>(needed) > shell.points.size()) {
    throw ParameterError("shell has " + std::to_string(shell.points.size()) +
                         " points but the chain needs p^{2k} = " + std::to_string(needed));
  }
  std::vector<Point> sorted = shell.points;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<Point>> chain;
  for (int i = 0; i <= k; ++i) {
    const auto size = static_cast<std::size_t>(ipow64(p, 2 * i));
    chain.emplace_back(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(size));
  }
  return chain;
}

ConstructionParams make_params(int d, std::int64_t p, int k, std::int64_t L, LatticeShell shell,
                               BaseLevel level0) {
  if (d < 1) throw ParameterError("lattice dimension d must be positive");
  if (shell.dimension != d) throw ParameterError("shell dimension differs from d");
  shell = make_shell(d, std::move(shell.points), shell.box_bound);
  if (L <= 2 * shell.r) {
    throw ParameterError("side length L = " + std::to_string(L) + " must exceed 2r = " +
                         std::to_string(2 * shell.r));
  }
  ConstructionParams params;
  params.d = d;
  params.p = p;
  params.k = k;
  params.L = L;
  params.chain = nested_subsets(shell, k, p);
  params.shell = std::move(shell);
  params.level0 = level0;
  family_dimension(params);
  return params;
}

LevelLayout level_layout(const ConstructionParams& params, int level) {
  if (level < 0 || level > params.k) throw ContractViolation("level outside [0, k]");
  if (level == 0 && params.level0 == BaseLevel::full_basis) {
    return {{Point(static_cast<std::size_t>(params.d), 0)}, 1, params.L};
  }
  return {params.chain.at(static_cast<std::size_t>(level)), 1 + params.shell.r, params.L - params.shell.r};
}

std::vector<std::int64_t> level_sizes(const ConstructionParams& params) {
  std::vector<std::int64_t> sizes;
  for (int i = 0; i <= params.k; ++i) {
    sizes.push_back(ipow_or_throw(level_layout(params, i).side(), params.d, "level size"));
  }
  return sizes;
}

std::int64_t family_size(const ConstructionParams& params) {
  std::int64_t m = 0;
  for (auto s : level_sizes(params)) m = checked_add64(m, s);
  return m;
}

std::int64_t family_dimension(const ConstructionParams& params) {
  return ipow_or_throw(params.L, params.d, "L^d");
}

std::vector<VectorLabel> vector_labels(const ConstructionParams& params) {
  std::vector<VectorLabel> labels;
  for (int i = 0; i <= params.k; ++i) {
    const LevelLayout layout = level_layout(params, i);
    for_each_translate(params.d, layout.lo, layout.hi,
                       [&](const Point& t) { labels.push_back({i, t}); });
  }
  return labels;
}

ScaledVector construction_vector(const ConstructionParams& params, int level, const Point& t) {
  const LevelLayout layout = level_layout(params, level);
  const std::int64_t numerator = ipow64(params.p, params.k - level);
  std::vector<Entry> entries;
  entries.reserve(layout.offsets.size());
  Point x(t.size());
  for (const auto& y : layout.offsets) {
    for (std::size_t j = 0; j < t.size(); ++j) x[j] = t[j] + y[j];
    entries.push_back({coordinate_index(x, params.L), numerator});
  }
  return ScaledVector(family_dimension(params), params.p, params.k, std::move(entries));
}

UnitVectorFamily build_instance(const ConstructionParams& params) {
  std::vector<ScaledVector> vectors;
  vectors.reserve(static_cast<std::size_t>(family_size(params)));
  for (const auto& label : vector_labels(params)) {
    vectors.push_back(construction_vector(params, label.level, label.t));
  }
  return UnitVectorFamily(family_dimension(params), params.p, std::move(vectors), params);
}

ConstructionParams figure_example_params() {
  LatticeShell cross = make_shell(2, {{-1, 0}, {0, -1}, {0, 1}, {1, 0}}, 1);
  ConstructionParams params = make_params(2, 2, 1, 5, std::move(cross), BaseLevel::full_basis);
  params.name = "figure2";
  return params;
}

UnitVectorFamily figure_example() { return build_instance(figure_example_params()); }

PlannedParameters plan_parameters(double lambda, int d, std::uint64_t budget) {
  if (!(lambda > 1.0)) throw ParameterError("lambda must exceed 1");
  if (d < 1 || d > 30) throw ParameterError("d must lie in [1, 30]");
  PlannedParameters plan;
  plan.lambda = lambda;
  plan.d = d;
  plan.D = std::int64_t{1} << d;
  const long double exponent = static_cast<long double>(lambda) * d;
  if (exponent >= 62) throw ParameterError("L = 2^(lambda d) overflows 64 bits");
  plan.L = static_cast<std::int64_t>(std::floor(std::exp2l(exponent)));
  plan.shell = shell_profile(d, plan.D, budget);
  while ((std::uint64_t{1} << (2 * (plan.k + 1))) <= plan.shell.count) ++plan.k;
  if (plan.L <= 2 * plan.shell.r) {
    throw ParameterError("d too small for lambda = " + std::to_string(lambda) + ": L = " +
                         std::to_string(plan.L) + " <= 2r = " + std::to_string(2 * plan.shell.r));
  }
  plan.n = ipow128(plan.L, d);
  plan.m = checked_mul(plan.k + 1, ipow128(plan.L - 2 * plan.shell.r, d));
  const long double log2n = static_cast<long double>(d) * std::log2(static_cast<long double>(plan.L));
  plan.ratio = static_cast<double>(static_cast<long double>(plan.m) /
                                   (static_cast<long double>(plan.n) * log2n));
  plan.mu_low = std::sqrt(lambda);
  plan.mu_high = lambda;
  return plan;
}

ConstructionParams planned_construction(const PlannedParameters& plan, std::uint64_t budget) {
  LatticeShell shell = find_shell(plan.d, plan.D, budget);
  return make_params(plan.d, 2, plan.k, plan.L, std::move(shell));
}

}  // namespace selbal
