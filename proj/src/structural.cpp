#include "selbal/structural.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "selbal/errors.hpp"
#include "selbal/geometry.hpp"

namespace selbal {

bool StructuralReport::passed() const noexcept { return first_failure() == nullptr; }

const StructuralCheck* StructuralReport::first_failure() const noexcept {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

namespace {

const ConstructionParams& params_of(const UnitVectorFamily& family) {
  if (!family.provenance()) throw ContractViolation("family has no construction parameters");
  return *family.provenance();
}

// Failure detail, or empty on success. Exceptions count as failures.
void run_check(StructuralReport& report, const char* name, const std::function<std::string()>& body) {
  StructuralCheck check{name, false, {}};
  try {
    check.detail = body();
    check.passed = check.detail.empty();
  } catch (const std::exception& e) {
    check.detail = e.what();
  }
  report.checks.push_back(std::move(check));
}

std::string str(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

std::int64_t max_inf_norm(const std::vector<Point>& points) {
  std::int64_t r = 0;
  for (const auto& p : points) r = std::max(r, inf_norm(p));
  return r;
}

}  // namespace

StructuralReport structural_report(const UnitVectorFamily& family) {
  const ConstructionParams& params = params_of(family);
  const LatticeShell& shell = params.shell;
  StructuralReport report;

  run_check(report, kCheckShellEqualNorm, [&]() -> std::string {
    if (shell.points.empty()) return "shell is empty";
    if (shell.radius_sq <= 0) return "squared radius must be positive";
    for (const auto& p : shell.points) {
      if (static_cast<int>(p.size()) != params.d) return "point " + str(p) + " has the wrong dimension";
      if (norm_sq(p) != shell.radius_sq) {
        return "point " + str(p) + " has squared norm " + std::to_string(norm_sq(p)) + ", expected " +
               std::to_string(shell.radius_sq);
      }
    }
    return {};
  });

  run_check(report, kCheckStrictlyConvex, [&]() -> std::string {
    return is_strictly_convex(make_point_set(params.d, shell.points)) ? "" : "shell is not strictly convex";
  });

  run_check(report, kCheckChainSizes, [&]() -> std::string {
    if (params.k < 0) return "k is negative";
    if (params.chain.size() != static_cast<std::size_t>(params.k) + 1) {
      return "chain has " + std::to_string(params.chain.size()) + " levels, expected k + 1 = " +
             std::to_string(params.k + 1);
    }
    for (int i = 0; i <= params.k; ++i) {
      const auto want = ipow64(params.p, 2 * i);
      const auto have = static_cast<std::int64_t>(params.chain[static_cast<std::size_t>(i)].size());
      if (have != want) {
        return "|S_" + std::to_string(i) + "| = " + std::to_string(have) + ", expected " + std::to_string(want);
      }
    }
    return {};
  });

  run_check(report, kCheckChainNesting, [&]() -> std::string {
    const std::set<Point> all(shell.points.begin(), shell.points.end());
    for (std::size_t i = 0; i < params.chain.size(); ++i) {
      const std::set<Point> level(params.chain[i].begin(), params.chain[i].end());
      if (level.size() != params.chain[i].size()) return "S_" + std::to_string(i) + " repeats a point";
      const auto& outer = i + 1 < params.chain.size()
                              ? std::set<Point>(params.chain[i + 1].begin(), params.chain[i + 1].end())
                              : all;
      for (const auto& p : level) {
        if (!outer.contains(p)) {
          return "S_" + std::to_string(i) + " point " + str(p) + " missing from " +
                 (i + 1 < params.chain.size() ? "S_" + std::to_string(i + 1) : std::string("the shell"));
        }
      }
    }
    return {};
  });

  run_check(report, kCheckSideLength, [&]() -> std::string {
    const std::int64_t r = max_inf_norm(shell.points);
    if (r != shell.r) return "recorded r = " + std::to_string(shell.r) + " but the shell reaches " + std::to_string(r);
    if (params.L <= 2 * r) return "L = " + std::to_string(params.L) + " <= 2r = " + std::to_string(2 * r);
    return {};
  });

  run_check(report, kCheckSupport, [&]() -> std::string {
    for (int i = 0; i <= params.k; ++i) {
      const LevelLayout layout = level_layout(params, i);
      for (const auto& y : layout.offsets) {
        for (std::size_t c = 0; c < y.size(); ++c) {
          if (layout.lo + y[c] < 1 || layout.hi + y[c] > params.L) {
            return "level " + std::to_string(i) + " offset " + str(y) + " leaves [1, L]^d";
          }
        }
      }
    }
    return {};
  });

  run_check(report, kCheckShape, [&]() -> std::string {
    if (family.dimension() != family_dimension(params)) {
      return "n = " + std::to_string(family.dimension()) + ", expected L^d = " +
             std::to_string(family_dimension(params));
    }
    if (family.base() != params.p) return "scale base differs from p";
    if (family.exponent() != params.k) return "scale exponent differs from k";
    if (static_cast<std::int64_t>(family.size()) != family_size(params)) {
      return "m = " + std::to_string(family.size()) + ", expected " + std::to_string(family_size(params));
    }
    return {};
  });

  run_check(report, kCheckFormula, [&]() -> std::string {
    const auto labels = vector_labels(params);
    if (labels.size() != family.size()) return "vector count differs from the construction";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (construction_vector(params, labels[i].level, labels[i].t) != family[i]) {
        return "vector " + std::to_string(i) + " (level " + std::to_string(labels[i].level) + ", t = " +
               str(labels[i].t) + ") differs from its formula";
      }
    }
    return {};
  });

  return report;
}

Verdict structural_verify(const UnitVectorFamily& family) {
  const StructuralReport report = structural_report(family);
  if (const auto* failure = report.first_failure()) {
    throw PreconditionViolation(failure->name, failure->detail);
  }
  Verdict v;
  v.kind = VerdictKind::not_balancing;
  v.method = Method::structural;
  v.scale_sq = family.scale_sq();
  return v;
}

ProofTrace explain_lower_bound(const UnitVectorFamily& family, const SignVector& eps) {
  const ConstructionParams& params = params_of(family);
  if (eps.size() != family.size()) throw ContractViolation("sign vector length differs from family size");
  if (!eps.nontrivial()) throw ContractViolation("sign vector is trivial");
  const auto labels = vector_labels(params);
  if (labels.size() != family.size()) throw ContractViolation("family does not match its parameters");

  ProofTrace trace;
  trace.supports.resize(static_cast<std::size_t>(params.k) + 1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (eps[i] != 0) trace.supports[static_cast<std::size_t>(labels[i].level)].push_back(labels[i].t);
  }
  for (int i = 0; i <= params.k; ++i) {
    if (!trace.supports[static_cast<std::size_t>(i)].empty()) trace.j = i;
  }

  const LevelLayout layout = level_layout(params, trace.j);
  const PointSet C = make_point_set(params.d, layout.offsets);
  const PointSet T = make_point_set(params.d, trace.supports[static_cast<std::size_t>(trace.j)]);
  const ScaledVector v = combine(family, eps);
  const std::int64_t floor_num = ipow64(params.p, params.k - trace.j);

  std::set<Point> seen;
  for (const auto& y : layout.offsets) {
    LonelyWitness w = lonely_witness_for(y, C, T);
    CertifiedCoordinate c;
    c.index = coordinate_index(w.x, params.L);
    c.numerator = v.numerator_at(c.index);
    // Lower levels add multiples of p^{k-j+1} here; ±p^{k-j} survives.
    if (c.numerator % floor_num != 0 || (c.numerator / floor_num) % params.p == 0) {
      throw std::logic_error("lonely coordinate " + str(w.x) + " has component " + std::to_string(c.numerator));
    }
    if (!seen.insert(w.x).second) throw std::logic_error("lonely coordinate " + str(w.x) + " repeated");
    c.x = std::move(w.x);
    c.y = y;
    c.t = std::move(w.t);
    trace.lower_bound_scaled += Int128{c.numerator} * c.numerator;
    trace.certified.push_back(std::move(c));
  }
  trace.required = static_cast<std::uint64_t>(layout.offsets.size());
  trace.norm_sq_scaled = norm_sq_scaled(v);
  trace.scale_sq = family.scale_sq();
  return trace;
}

StrictnessReport strictness_probe(const UnitVectorFamily& family, const SearchOptions& options) {
  SearchOptions opts = options;
  opts.collect_boundary = true;
  StrictnessReport report;
  report.verdict = solve_branch_bound(family, opts);

  std::set<std::vector<std::pair<std::int64_t, std::int64_t>>> members;
  auto key = [](const ScaledVector& v) {
    std::vector<std::pair<std::int64_t, std::int64_t>> k;
    for (const auto& e : v.entries()) k.emplace_back(e.index, e.numerator);
    return k;
  };
  for (const auto& u : family.vectors()) {
    members.insert(key(u));
    members.insert(key(-u));
  }
  for (const auto& eps : report.verdict.boundary) {
    ++report.boundary;
    if (members.contains(key(combine(family, eps)))) {
      ++report.in_family;
    } else {
      report.outside.push_back(eps);
    }
  }
  report.complete = report.verdict.kind == VerdictKind::not_balancing && !report.verdict.boundary_truncated;
  return report;
}

}  // namespace selbal
