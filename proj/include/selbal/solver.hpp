#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selbal/vectorspace.hpp"

namespace selbal {

enum class VerdictKind {
  balancing,
  not_balancing,
  inconclusive,
  // A real-valued family had a combination with |‖v‖² - 1| <= tolerance and
  // no combination clearly below 1.
  boundary_inconclusive,
};

enum class Method { exhaustive, mitm, branch_bound, sample, structural };

std::string to_string(VerdictKind kind);
std::string to_string(Method method);

struct Verdict {
  VerdictKind kind = VerdictKind::inconclusive;
  Method method = Method::exhaustive;

  // balancing: the lexicographically first witness found by the engine.
  std::optional<SignVector> witness;
  // not_balancing: a canonical sign vector attaining the reported minimum.
  std::optional<SignVector> argmin;

  // Exact families: ‖v‖² · p^{2k} of the witness (balancing) or the minimum
  // over non-trivial sign vectors (not_balancing, absent for structural).
  std::optional<Int128> norm_sq_scaled;
  // Real families: the same quantity unscaled.
  std::optional<double> norm_sq;
  Int128 scale_sq = 1;

  std::uint64_t explored = 0;
  std::uint64_t budget = 0;
  std::uint64_t pruned = 0;

  // Canonical sign vectors with ‖v‖ = 1 exactly (exact families, when
  // collection is requested) or within the tolerance (real families).
  std::vector<SignVector> boundary;
  bool boundary_truncated = false;

  bool definitive() const noexcept {
    return kind == VerdictKind::balancing || kind == VerdictKind::not_balancing;
  }
};

struct SearchOptions {
  // Exhaustive: sign vectors evaluated. Branch-and-bound: search nodes.
  std::uint64_t budget = std::uint64_t{1} << 40;
  unsigned threads = 1;
  // Record every canonical sign vector with ‖v‖ = 1. Branch-and-bound then
  // prunes only subtrees whose bound is strictly above 1.
  bool collect_boundary = false;
  std::size_t boundary_limit = 100000;
};

struct MitmOptions {
  // Grid cell side in unscaled units; defaults to 1/sqrt(n+1).
  std::optional<double> cell_side;
  // Maximum number of stored sum components (3^{ceil(m/2)} * n).
  std::uint64_t memory_budget = std::uint64_t{1} << 26;
  // Upper bound on grid cells probed per partial sum; fixes the number of
  // hashed coordinates.
  std::uint64_t max_probes = 4096;
};

// Sign vectors are enumerated in lexicographic order (-1 < 0 < +1) with the
// first nonzero coefficient fixed to +1, so the space has (3^m - 1)/2 points.
Verdict solve_exhaustive(const UnitVectorFamily& family, const SearchOptions& options = {});
Verdict solve_branch_bound(const UnitVectorFamily& family, const SearchOptions& options = {});
Verdict solve_mitm(const UnitVectorFamily& family, const MitmOptions& options = {});
Verdict sample_random(const UnitVectorFamily& family, std::uint64_t trials, std::uint64_t seed);

// Real-valued inputs: combinations with ‖v‖² < 1 - tolerance are witnesses,
// those within tolerance of 1 make the verdict boundary_inconclusive.
Verdict solve_exhaustive(const RealFamily& family, double tolerance, const SearchOptions& options = {});
Verdict solve_branch_bound(const RealFamily& family, double tolerance, const SearchOptions& options = {});
Verdict solve_mitm(const RealFamily& family, double tolerance, const MitmOptions& options = {});
Verdict sample_random(const RealFamily& family, double tolerance, std::uint64_t trials,
                      std::uint64_t seed);

}  // namespace selbal
