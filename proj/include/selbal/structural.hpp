#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selbal/construction.hpp"
#include "selbal/solver.hpp"

namespace selbal {

struct StructuralCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct StructuralReport {
  std::vector<StructuralCheck> checks;

  bool passed() const noexcept;
  // First failing check, or nullptr.
  const StructuralCheck* first_failure() const noexcept;
};

// Check names, in evaluation order.
inline constexpr const char* kCheckShellEqualNorm = "shell equal norm";
inline constexpr const char* kCheckStrictlyConvex = "strictly convex";
inline constexpr const char* kCheckChainSizes = "chain sizes";
inline constexpr const char* kCheckChainNesting = "chain nesting";
inline constexpr const char* kCheckSideLength = "L > 2r";
inline constexpr const char* kCheckSupport = "support containment";
inline constexpr const char* kCheckShape = "family shape";
inline constexpr const char* kCheckFormula = "vector formula mismatch";

// Runs every check without throwing on failure. Throws ContractViolation when
// the family carries no construction parameters.
StructuralReport structural_report(const UnitVectorFamily& family);

// NotBalancing(structural) with scale_sq = p^{2k} and no minimum when every
// check passes; otherwise throws PreconditionViolation naming the first
// failed check.
Verdict structural_verify(const UnitVectorFamily& family);

struct CertifiedCoordinate {
  Point x;        // lattice point, x = y + t
  Point y;        // shell point of level j
  Point t;        // translate in supp_j
  std::int64_t index = 0;
  std::int64_t numerator = 0;  // v_x at scale p^k, |numerator| >= p^{k-j}
};

struct ProofTrace {
  int j = 0;
  // supports[i] = translates t with eps_{t,i} != 0, lexicographic.
  std::vector<std::vector<Point>> supports;
  std::vector<CertifiedCoordinate> certified;
  std::uint64_t required = 0;  // p^{2j}
  // Σ numerator² over certified coordinates: a lower bound on ‖v‖² p^{2k}.
  Int128 lower_bound_scaled = 0;
  Int128 norm_sq_scaled = 0;   // exact ‖v‖² p^{2k}
  Int128 scale_sq = 1;
};

// Replays the non-balancing argument for one sign vector: one lonely point
// of S_j + supp_j per y in S_j, each re-checked against the exact component.
// Throws ContractViolation for a trivial eps or missing parameters.
ProofTrace explain_lower_bound(const UnitVectorFamily& family, const SignVector& eps);

// Sign vectors reaching norm exactly 1, each checked for v ∈ ±U.
struct StrictnessReport {
  Verdict verdict;              // exhaustive run with boundary collection
  std::uint64_t boundary = 0;   // canonical ε with ‖v‖ = 1
  std::uint64_t in_family = 0;  // of those, v = ±u_i for some i
  std::vector<SignVector> outside;  // counterexamples to v ∈ ±U
  bool complete = false;        // definitive verdict and boundary list not truncated
};

StrictnessReport strictness_probe(const UnitVectorFamily& family, const SearchOptions& options = {});

}  // namespace selbal
