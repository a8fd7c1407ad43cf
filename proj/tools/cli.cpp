#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "selbal/bounds.hpp"
#include "selbal/construction.hpp"
#include "selbal/instance_io.hpp"
#include "selbal/report.hpp"
#include "selbal/solver.hpp"
#include "selbal/structural.hpp"

namespace selbal::cli {

namespace {

using nlohmann::json;

struct Common {
  std::string format = "json";
  std::string output;
};

struct GenerateArgs {
  int d = 2;
  std::int64_t p = 2;
  int k = 1;
  std::int64_t L = 0;
  std::optional<std::int64_t> shell_D;
  bool full_basis = false;
  bool figure2 = false;
  bool plan = false;
  double lambda = 0.0;
};

struct SolveArgs {
  std::string instance;
  std::string engine = "exhaustive";
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 1;
  std::optional<double> cell_side;
  double tolerance = 1e-9;
  unsigned threads = 1;
  bool boundary = false;
};

struct VerifyArgs {
  std::string instance;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
};

struct ExplainArgs {
  std::string instance;
  std::string eps;
};

struct StrictArgs {
  std::string instance;
  std::uint64_t budget = std::uint64_t{1} << 40;
  unsigned threads = 1;
};

struct BoundsArgs {
  std::optional<std::uint64_t> n;
  std::uint64_t from = 1;
  std::uint64_t to = 0;
  std::uint64_t step = 1;
  std::uint64_t cap = kThresholdCap;
};

json header(const std::string& command, json config) {
  config["command"] = command;
  return json{{"tool", "selbal"}, {"version", kVersion}, {"config", std::move(config)}};
}

void emit(const json& report, const Common& common, std::ostream& out) {
  const std::string text = common.format == "table" ? render_table(report) : report.dump(2) + "\n";
  if (common.output.empty()) {
    out << text;
  } else {
    std::ofstream file(common.output);
    if (!file) throw std::runtime_error("cannot write " + common.output);
    file << text;
  }
}

double ratio(std::int64_t m, std::int64_t n) {
  if (n < 2) return 0.0;
  return static_cast<double>(m) / (static_cast<double>(n) * std::log2(static_cast<double>(n)));
}

int cmd_generate(const GenerateArgs& a, const Common& common, std::ostream& out) {
  json config;
  ConstructionParams params;
  std::optional<PlannedParameters> plan;
  if (a.figure2) {
    config["example"] = "figure2";
    params = figure_example_params();
  } else if (a.plan) {
    config["plan"] = true;
    config["lambda"] = a.lambda;
    config["d"] = a.d;
    plan = plan_parameters(a.lambda, a.d);
    params = planned_construction(*plan);
  } else {
    if (a.L <= 0) throw ParameterError("side length L is required (-L)");
    config = json{{"d", a.d}, {"p", a.p}, {"k", a.k}, {"L", a.L}, {"full_basis", a.full_basis}};
    LatticeShell shell;
    if (a.shell_D) {
      config["shell_D"] = *a.shell_D;
      shell = find_shell(a.d, *a.shell_D);
    } else {
      if (a.k < 0) throw ParameterError("chain depth k must be non-negative");
      if (a.p < 2) throw ParameterError("base p must be at least 2");
      shell = smallest_shell(a.d, static_cast<std::uint64_t>(ipow64(a.p, 2 * a.k)));
    }
    params = make_params(a.d, a.p, a.k, a.L, std::move(shell),
                         a.full_basis ? BaseLevel::full_basis : BaseLevel::shell);
  }
  const UnitVectorFamily family = build_instance(params);
  const auto m = static_cast<std::int64_t>(family.size());
  const auto n = family.dimension();
  json summary{{"m", m}, {"n", n}, {"ratio", ratio(m, n)}, {"params", to_json(params)}};
  if (plan) {
    summary["plan"] = json{{"D", plan->D}, {"shell_size", plan->shell.count}, {"r", plan->shell.r},
                           {"mu_low", plan->mu_low}, {"mu_high", plan->mu_high}};
  }
  if (!common.output.empty()) config["output"] = common.output;
  json report = header("generate", config);
  report["result"] = summary;
  if (common.output.empty()) {
    report["instance"] = to_json(family);
    out << report.dump(2) << "\n";
  } else {
    save_json(common.output, to_json(family));
    Common to_stdout{common.format, ""};
    emit(report, to_stdout, out);
  }
  return kExitOk;
}

template <class Family>
Verdict run_engine(const Family& family, const SolveArgs& a, std::uint64_t budget) {
  constexpr bool exact = std::is_same_v<Family, UnitVectorFamily>;
  SearchOptions search;
  search.budget = budget;
  search.threads = a.threads;
  search.collect_boundary = a.boundary;
  MitmOptions mitm;
  mitm.cell_side = a.cell_side;
  mitm.memory_budget = budget;
  if (a.engine == "exhaustive") {
    if constexpr (exact) return solve_exhaustive(family, search);
    else return solve_exhaustive(family, a.tolerance, search);
  }
  if (a.engine == "bb") {
    if constexpr (exact) return solve_branch_bound(family, search);
    else return solve_branch_bound(family, a.tolerance, search);
  }
  if (a.engine == "mitm") {
    if constexpr (exact) return solve_mitm(family, mitm);
    else return solve_mitm(family, a.tolerance, mitm);
  }
  if (a.engine == "sample") {
    if constexpr (exact) return sample_random(family, budget, a.seed);
    else return sample_random(family, a.tolerance, budget, a.seed);
  }
  if constexpr (exact) {
    return structural_verify(family);
  } else {
    throw ContractViolation("the structural engine needs an exact instance with construction parameters");
  }
}

std::uint64_t default_budget(const std::string& engine) {
  if (engine == "sample") return 1'000'000;
  if (engine == "mitm") return MitmOptions{}.memory_budget;
  return SearchOptions{}.budget;
}

int cmd_solve(const SolveArgs& a, const Common& common, std::ostream& out) {
  const std::uint64_t budget = a.budget.value_or(default_budget(a.engine));
  const AnyFamily any = load_instance(a.instance);
  const bool real = std::holds_alternative<RealFamily>(any);
  json config{{"instance", a.instance}, {"engine", a.engine}, {"budget", budget}, {"threads", a.threads}};
  if (a.engine == "sample") config["seed"] = a.seed;
  if (a.engine == "mitm") config["cell_side"] = a.cell_side ? json(*a.cell_side) : json(nullptr);
  if (real) config["tolerance"] = a.tolerance;
  if (a.boundary) config["boundary"] = true;
  const Verdict v = std::visit([&](const auto& family) { return run_engine(family, a, budget); }, any);
  json report = header("solve", config);
  report["result"] = to_json(v);
  emit(report, common, out);
  return v.definitive() ? kExitOk : kExitInconclusive;
}

UnitVectorFamily load_exact(const std::string& path) {
  AnyFamily any = load_instance(path);
  if (!std::holds_alternative<UnitVectorFamily>(any)) throw ContractViolation("an exact instance is required");
  return std::get<UnitVectorFamily>(std::move(any));
}

int cmd_verify(const VerifyArgs& a, const Common& common, std::ostream& out) {
  const UnitVectorFamily family = load_exact(a.instance);
  json config{{"instance", a.instance}, {"samples", a.samples}};
  if (a.samples > 0) config["seed"] = a.seed;
  const StructuralReport structural = structural_report(family);
  json result{{"structural", to_json(structural)}};
  int code = kExitInconclusive;
  if (structural.passed()) {
    result["verdict"] = to_json(structural_verify(family));
    code = kExitOk;
    if (a.samples > 0) result["sample"] = to_json(sample_random(family, a.samples, a.seed));
  } else {
    result["verdict"] = nullptr;
  }
  json report = header("verify", config);
  report["result"] = result;
  emit(report, common, out);
  return code;
}

SignVector parse_signs(const std::string& text) {
  std::vector<std::int8_t> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "1" || item == "+1") {
      c.push_back(1);
    } else if (item == "0") {
      c.push_back(0);
    } else if (item == "-1") {
      c.push_back(-1);
    } else {
      throw ParseError("eps", "coefficient '" + item + "' is not -1, 0 or 1");
    }
  }
  return SignVector(std::move(c));
}

int cmd_explain(const ExplainArgs& a, const Common& common, std::ostream& out) {
  const UnitVectorFamily family = load_exact(a.instance);
  const ProofTrace trace = explain_lower_bound(family, parse_signs(a.eps));
  json report = header("explain", json{{"instance", a.instance}, {"eps", a.eps}});
  report["result"] = to_json(trace);
  emit(report, common, out);
  return kExitOk;
}

int cmd_strictness(const StrictArgs& a, const Common& common, std::ostream& out) {
  const UnitVectorFamily family = load_exact(a.instance);
  SearchOptions options;
  options.budget = a.budget;
  options.threads = a.threads;
  const StrictnessReport r = strictness_probe(family, options);
  json report = header("strictness", json{{"instance", a.instance}, {"budget", a.budget}, {"threads", a.threads}});
  report["result"] = to_json(r);
  emit(report, common, out);
  return r.complete ? kExitOk : kExitInconclusive;
}

int cmd_bounds(const BoundsArgs& a, const Common& common, std::ostream& out) {
  std::vector<SigmaBracket> rows;
  json config{{"cap", a.cap}};
  if (a.n) {
    config["n"] = *a.n;
    rows.push_back(sigma_bracket(*a.n, a.cap));
  } else {
    if (a.to < a.from || a.step < 1 || a.from < 1) throw ParameterError("need 1 <= --from <= --to and --step >= 1");
    config["from"] = a.from;
    config["to"] = a.to;
    config["step"] = a.step;
    for (std::uint64_t n = a.from; n <= a.to; n += a.step) rows.push_back(sigma_bracket(n, a.cap));
  }
  if (common.format == "table") {
    std::ostringstream text;
    text << bracket_table(rows);
    if (common.output.empty()) {
      out << text.str();
    } else {
      std::ofstream(common.output) << text.str();
    }
    return kExitOk;
  }
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  json report = header("bounds", config);
  report["result"] = arr;
  emit(report, common, out);
  return kExitOk;
}

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--format", common.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  sub->add_option("-o,--output", common.output, "write the report to PATH");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Selective balancing of unit vectors: instances, solvers, bounds", "selbal"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "build a construction instance");
  generate->add_option("-d", gen.d, "lattice dimension");
  generate->add_option("-p", gen.p, "base p");
  generate->add_option("-k", gen.k, "chain depth");
  generate->add_option("-L", gen.L, "side length");
  generate->add_option("--shell-D", gen.shell_D, "use the fullest norm class of [-D, D]^d as the shell");
  generate->add_flag("--full-basis", gen.full_basis, "level 0 is the full standard basis");
  generate->add_flag("--example-figure2", gen.figure2, "the 34-vector example in R^25");
  generate->add_flag("--plan", gen.plan, "parameters from lambda and d");
  generate->add_option("--lambda", gen.lambda, "growth exponent for --plan");
  add_common(generate, common);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "decide selective balancing");
  solve_cmd->add_option("instance", solve.instance, "instance JSON")->required();
  solve_cmd->add_option("--engine", solve.engine)
      ->check(CLI::IsMember({"exhaustive", "mitm", "bb", "sample", "structural"}));
  solve_cmd->add_option("--budget", solve.budget, "sign vectors, nodes, trials or stored sums");
  solve_cmd->add_option("--seed", solve.seed);
  solve_cmd->add_option("--cell-side", solve.cell_side, "mitm grid cell side");
  solve_cmd->add_option("--tolerance", solve.tolerance, "real instances: |norm^2 - 1| band");
  solve_cmd->add_option("--threads", solve.threads)->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--boundary", solve.boundary, "list sign vectors with norm exactly 1");
  add_common(solve_cmd, common);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "structural verification of a construction instance");
  verify_cmd->add_option("instance", verify.instance)->required();
  verify_cmd->add_option("--samples", verify.samples, "random sign vectors to try afterwards");
  verify_cmd->add_option("--seed", verify.seed);
  add_common(verify_cmd, common);

  ExplainArgs explain;
  auto* explain_cmd = app.add_subcommand("explain", "lower-bound certificate for one sign vector");
  explain_cmd->add_option("instance", explain.instance)->required();
  explain_cmd->add_option("--eps", explain.eps, "comma separated coefficients")->required();
  add_common(explain_cmd, common);

  StrictArgs strict;
  auto* strict_cmd = app.add_subcommand("strictness", "list norm-1 combinations and test v in +-U");
  strict_cmd->add_option("instance", strict.instance)->required();
  strict_cmd->add_option("--budget", strict.budget);
  strict_cmd->add_option("--threads", strict.threads)->check(CLI::PositiveNumber);
  add_common(strict_cmd, common);

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "bracket sigma(n)");
  bounds_cmd->add_option("-n", bounds.n);
  bounds_cmd->add_option("--from", bounds.from);
  bounds_cmd->add_option("--to", bounds.to);
  bounds_cmd->add_option("--step", bounds.step);
  bounds_cmd->add_option("--cap", bounds.cap, "largest m tried for the threshold");
  add_common(bounds_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*generate) return cmd_generate(gen, common, out);
    if (*solve_cmd) return cmd_solve(solve, common, out);
    if (*verify_cmd) return cmd_verify(verify, common, out);
    if (*explain_cmd) return cmd_explain(explain, common, out);
    if (*strict_cmd) return cmd_strictness(strict, common, out);
    if (*bounds_cmd) return cmd_bounds(bounds, common, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const PreconditionViolation& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace selbal::cli
