#include "selbal/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>
#include <type_traits>
#include <unordered_map>

#include <boost/functional/hash.hpp>

namespace selbal {

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::balancing: return "Balancing";
    case VerdictKind::not_balancing: return "NotBalancing";
    case VerdictKind::inconclusive: return "Inconclusive";
    case VerdictKind::boundary_inconclusive: return "BoundaryInconclusive";
  }
  return "?";
}

std::string to_string(Method method) {
  switch (method) {
    case Method::exhaustive: return "exhaustive";
    case Method::mitm: return "mitm";
    case Method::branch_bound: return "branch_bound";
    case Method::sample: return "sample";
    case Method::structural: return "structural";
  }
  return "?";
}

namespace {

using Signs = std::vector<std::int8_t>;

template <class V>
struct Columns {
  std::int64_t n = 0;
  std::vector<std::vector<std::pair<std::int64_t, V>>> cols;

  std::size_t m() const { return cols.size(); }
};

Columns<std::int64_t> columns_of(const UnitVectorFamily& family) {
  Columns<std::int64_t> c{family.dimension(), {}};
  for (const auto& v : family.vectors()) {
    auto& col = c.cols.emplace_back();
    for (const auto& e : v.entries()) col.emplace_back(e.index, e.numerator);
  }
  return c;
}

Columns<double> columns_of(const RealFamily& family) {
  Columns<double> c{family.dimension(), {}};
  for (const auto& v : family.vectors()) {
    auto& col = c.cols.emplace_back();
    for (const auto& e : v) col.emplace_back(e.index, e.value);
  }
  return c;
}

enum class Cls { below, boundary, above };

// Exact scaled-integer arithmetic. target = p^{2k} is the squared norm of a
// unit vector; every comparison is exact.
struct ExactArith {
  using Value = std::int64_t;
  using Acc = Int128;
  static constexpr bool exact = true;

  Int128 target = 1;
  bool strict_prune = false;
  std::vector<Int128> norm_limit;  // (r + 1)² · target for r remaining vectors

  ExactArith(const Columns<Value>& cols, Int128 target_sq, bool strict) : target(target_sq), strict_prune(strict) {
    // Bound every reachable |v_x| and ‖v‖² so the search itself cannot overflow.
    std::vector<Int128> reach(static_cast<std::size_t>(cols.n), 0);
    for (const auto& col : cols.cols) {
      for (const auto& [x, u] : col) reach[x] = checked_add(reach[x], u < 0 ? -Int128{u} : Int128{u});
    }
    Int128 total = 0;
    for (auto r : reach) {
      if (r > (Int128{1} << 62)) throw ArithmeticOverflow("coordinate sums exceed 62 bits");
      total = checked_add(total, checked_mul(r, r));
    }
    if (total > (Int128{1} << 124)) throw ArithmeticOverflow("squared norms exceed 124 bits");
    for (std::size_t r = 0; r <= cols.m(); ++r) {
      const Int128 f = static_cast<Int128>(r + 1);
      norm_limit.push_back(checked_mul(checked_mul(f, f), target));
    }
  }

  static Acc sq(Value v) { return static_cast<Acc>(v) * v; }
  static Value magnitude(Value v) { return v < 0 ? -v : v; }

  Cls classify(Acc norm) const {
    return norm < target ? Cls::below : (norm == target ? Cls::boundary : Cls::above);
  }
  bool prunes_norm(Acc norm, std::size_t remaining) const {
    return strict_prune ? norm > norm_limit[remaining] : norm >= norm_limit[remaining];
  }
  bool prunes_coord(Acc lb) const { return strict_prune ? lb > target : lb >= target; }
};

// Floating-point arithmetic with a decision tolerance. Incremental sums drift,
// so values near a decision are recomputed from scratch before use.
struct RealArith {
  using Value = double;
  using Acc = double;
  static constexpr bool exact = false;
  static constexpr double kRecheckBand = 1e-3;
  static constexpr double kSlack = 1e-9;

  double tol = 0.0;
  double target = 1.0;

  static Acc sq(Value v) { return v * v; }
  static Value magnitude(Value v) { return std::abs(v); }

  Cls classify(Acc norm) const {
    if (norm < target - tol) return Cls::below;
    if (norm <= target + tol) return Cls::boundary;
    return Cls::above;
  }
  bool needs_recheck(Acc value, Acc threshold) const {
    return std::abs(value - threshold) <= kRecheckBand * std::max<Acc>(1.0, threshold);
  }
  // Unit-norm inputs are accepted within 1e-9, so remaining vectors have
  // norm at most 1 + 1e-9.
  Acc norm_threshold(std::size_t remaining) const {
    const double reach = static_cast<double>(remaining) * (1.0 + 1e-9) + std::sqrt(target + tol) + kSlack;
    return reach * reach;
  }
  Acc coord_threshold() const { return target + tol + kSlack; }
};

template <class Acc>
struct BlockResult {
  std::uint64_t count = 0;
  std::uint64_t pruned = 0;
  bool capped = false;
  bool aborted = false;
  std::optional<Signs> witness;
  Acc witness_norm{};
  std::uint64_t count_at_witness = 0;
  std::optional<Acc> min;
  Signs argmin;
  bool saw_boundary = false;
  std::vector<Signs> boundary;
  bool boundary_truncated = false;
};

// Lexicographic depth-first enumeration of canonical sign vectors below a
// fixed prefix, optionally pruned by two lower bounds on the final norm:
//   ‖partial‖ - (#remaining)                       (triangle inequality)
//   Σ_x max(0, |v_x| - Σ_{remaining} |u_x|)²       (coordinate intervals)
template <class A>
class DepthFirst {
 public:
  using V = typename A::Value;
  using Acc = typename A::Acc;

  DepthFirst(const Columns<V>& cols, const A& arith, bool prune, bool collect_boundary,
             std::size_t boundary_limit)
      : cols_(cols),
        arith_(arith),
        prune_(prune),
        collect_(collect_boundary),
        boundary_limit_(boundary_limit),
        m_(cols.m()),
        v_(static_cast<std::size_t>(cols.n), V{}),
        eps_(cols.m(), 0) {
    if (prune_) {
      remaining_.assign(static_cast<std::size_t>(cols.n), V{});
      terms_.assign(static_cast<std::size_t>(cols.n), Acc{});
      // Suffix sums of |u_x| so the remaining mass is restored exactly.
      before_.resize(m_);
      after_.resize(m_);
      for (std::size_t pos = m_; pos-- > 0;) {
        for (const auto& [x, u] : cols_.cols[pos]) {
          after_[pos].push_back(remaining_[x]);
          remaining_[x] += A::magnitude(u);
          before_[pos].push_back(remaining_[x]);
        }
      }
      for (std::size_t x = 0; x < remaining_.size(); ++x) update_term(static_cast<std::int64_t>(x));
    }
  }

  BlockResult<Acc> run(std::span<const std::int8_t> prefix, std::uint64_t cap,
                       const std::atomic<std::size_t>* earliest, std::size_t block) {
    result_ = {};
    cap_ = cap;
    earliest_ = earliest;
    block_ = block;
    stop_ = false;
    bool nonzero = false;
    std::size_t applied = 0;
    bool pruned_prefix = false;
    for (; applied < prefix.size(); ++applied) {
      if (prune_) remove_remaining(applied);
      assign(applied, prefix[applied]);
      nonzero = nonzero || prefix[applied] != 0;
      if (prune_ && bound_prunes(applied)) {
        ++applied;
        pruned_prefix = true;
        break;
      }
    }
    if (pruned_prefix) {
      ++result_.pruned;
    } else {
      dfs(applied, nonzero);
    }
    for (std::size_t pos = applied; pos-- > 0;) {
      assign(pos, 0);
      if (prune_) restore_remaining(pos);
    }
    return std::move(result_);
  }

 private:
  void update_term(std::int64_t x) {
    const V excess = A::magnitude(v_[x]) - remaining_[x];
    const Acc term = excess > V{} ? A::sq(excess) : Acc{};
    lower_bound_ += term - terms_[x];
    terms_[x] = term;
  }

  void remove_remaining(std::size_t pos) {
    const auto& col = cols_.cols[pos];
    for (std::size_t j = 0; j < col.size(); ++j) {
      remaining_[col[j].first] = after_[pos][j];
      update_term(col[j].first);
    }
  }

  void restore_remaining(std::size_t pos) {
    const auto& col = cols_.cols[pos];
    for (std::size_t j = 0; j < col.size(); ++j) {
      remaining_[col[j].first] = before_[pos][j];
      update_term(col[j].first);
    }
  }

  void assign(std::size_t pos, std::int8_t value) {
    const int delta = value - eps_[pos];
    if (delta == 0) return;
    for (const auto& [x, u] : cols_.cols[pos]) {
      const V old = v_[x];
      const V next = old + static_cast<V>(delta) * u;
      norm_ += A::sq(next) - A::sq(old);
      v_[x] = next;
      if (prune_) update_term(x);
    }
    eps_[pos] = value;
  }

  // Rebuild v, ‖v‖² and the coordinate bound from the signs (real inputs).
  void resync() {
    std::fill(v_.begin(), v_.end(), V{});
    for (std::size_t i = 0; i < m_; ++i) {
      if (eps_[i] == 0) continue;
      for (const auto& [x, u] : cols_.cols[i]) v_[x] += static_cast<V>(eps_[i]) * u;
    }
    norm_ = Acc{};
    for (auto value : v_) norm_ += A::sq(value);
    if (prune_) {
      lower_bound_ = Acc{};
      for (std::size_t x = 0; x < v_.size(); ++x) {
        terms_[x] = Acc{};
        update_term(static_cast<std::int64_t>(x));
      }
    }
  }

  bool bound_prunes(std::size_t pos) {
    const std::size_t remaining = m_ - pos - 1;
    if constexpr (A::exact) {
      return arith_.prunes_coord(lower_bound_) || arith_.prunes_norm(norm_, remaining);
    } else {
      const Acc coord = arith_.coord_threshold();
      const Acc norm = arith_.norm_threshold(remaining);
      if (arith_.needs_recheck(lower_bound_, coord) || arith_.needs_recheck(norm_, norm)) resync();
      return lower_bound_ > coord || norm_ > norm;
    }
  }

  bool take_item() {
    if (result_.count == cap_) {
      result_.capped = true;
      stop_ = true;
      return false;
    }
    ++result_.count;
    if ((result_.count & 0xFFFF) == 0 && earliest_ != nullptr &&
        earliest_->load(std::memory_order_relaxed) < block_) {
      result_.aborted = true;
      stop_ = true;
      return false;
    }
    return true;
  }

  void leaf() {
    if (!prune_ && !take_item()) return;
    if constexpr (!A::exact) {
      if (arith_.needs_recheck(norm_, arith_.target)) resync();
    }
    const Acc norm = norm_;
    switch (arith_.classify(norm)) {
      case Cls::below:
        result_.witness = eps_;
        result_.witness_norm = norm;
        result_.count_at_witness = result_.count;
        stop_ = true;
        return;
      case Cls::boundary:
        result_.saw_boundary = true;
        if (collect_) {
          if (result_.boundary.size() < boundary_limit_) {
            result_.boundary.push_back(eps_);
          } else {
            result_.boundary_truncated = true;
          }
        }
        break;
      case Cls::above:
        break;
    }
    if (!result_.min || norm < *result_.min) {
      result_.min = norm;
      result_.argmin = eps_;
    }
  }

  void dfs(std::size_t pos, bool nonzero) {
    if (pos == m_) {
      if (nonzero) leaf();
      return;
    }
    static constexpr std::int8_t kAll[] = {-1, 0, 1};
    static constexpr std::int8_t kLeading[] = {0, 1};
    const std::span<const std::int8_t> values = nonzero ? std::span<const std::int8_t>(kAll)
                                                        : std::span<const std::int8_t>(kLeading);
    if (prune_) remove_remaining(pos);
    for (const auto value : values) {
      assign(pos, value);
      if (prune_) {
        if (!take_item()) break;
        if (bound_prunes(pos)) {
          ++result_.pruned;
          continue;
        }
      }
      dfs(pos + 1, nonzero || value != 0);
      if (stop_) break;
    }
    assign(pos, 0);
    if (prune_) restore_remaining(pos);
  }

  const Columns<V>& cols_;
  const A& arith_;
  const bool prune_;
  const bool collect_;
  const std::size_t boundary_limit_;
  const std::size_t m_;

  std::vector<V> v_;
  Signs eps_;
  Acc norm_{};
  std::vector<V> remaining_;
  std::vector<Acc> terms_;
  Acc lower_bound_{};
  std::vector<std::vector<V>> before_;
  std::vector<std::vector<V>> after_;

  BlockResult<Acc> result_;
  std::uint64_t cap_ = 0;
  const std::atomic<std::size_t>* earliest_ = nullptr;
  std::size_t block_ = 0;
  bool stop_ = false;
};

// Work is split into blocks at a fixed prefix depth so that counts, witnesses
// and budgets do not depend on the number of threads.
constexpr std::size_t kSplitDepth = 7;

std::vector<Signs> canonical_prefixes(std::size_t depth) {
  std::vector<Signs> out;
  Signs current;
  auto rec = [&](auto&& self, bool nonzero) -> void {
    if (current.size() == depth) {
      out.push_back(current);
      return;
    }
    const std::vector<std::int8_t> values =
        nonzero ? std::vector<std::int8_t>{-1, 0, 1} : std::vector<std::int8_t>{0, 1};
    for (auto v : values) {
      current.push_back(v);
      self(self, nonzero || v != 0);
      current.pop_back();
    }
  };
  rec(rec, false);
  return out;
}

template <class A>
Verdict depth_first_search(const Columns<typename A::Value>& cols, const A& arith, Method method,
                           bool prune, const SearchOptions& options) {
  using Acc = typename A::Acc;
  const std::size_t m = cols.m();
  if (m == 0) throw ContractViolation("the family must contain at least one vector");

  const auto prefixes = canonical_prefixes(std::min(m, kSplitDepth));
  std::vector<BlockResult<Acc>> results(prefixes.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> earliest{prefixes.size()};

  auto worker = [&] {
    DepthFirst<A> search(cols, arith, prune, options.collect_boundary, options.boundary_limit);
    while (true) {
      const std::size_t b = next.fetch_add(1);
      if (b >= prefixes.size()) return;
      if (earliest.load() < b) {
        results[b].aborted = true;
        continue;
      }
      results[b] = search.run(prefixes[b], options.budget, &earliest, b);
      if (results[b].witness) {
        std::size_t cur = earliest.load();
        while (b < cur && !earliest.compare_exchange_weak(cur, b)) {
        }
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(prefixes.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  Verdict verdict;
  verdict.method = method;
  verdict.budget = options.budget;
  if constexpr (A::exact) verdict.scale_sq = arith.target;

  std::uint64_t used = 0;
  std::optional<Acc> min;
  Signs argmin;
  bool saw_boundary = false;
  auto inconclusive = [&] {
    verdict.kind = VerdictKind::inconclusive;
    verdict.explored = options.budget;
    return verdict;
  };
  for (auto& block : results) {
    verdict.pruned += block.pruned;
    if (block.witness) {
      if (used + block.count_at_witness > options.budget) return inconclusive();
      verdict.kind = VerdictKind::balancing;
      verdict.explored = used + block.count_at_witness;
      verdict.witness = SignVector(*block.witness);
      if constexpr (A::exact) {
        verdict.norm_sq_scaled = block.witness_norm;
      } else {
        verdict.norm_sq = block.witness_norm;
      }
      return verdict;
    }
    if (block.capped || block.aborted) return inconclusive();
    used += block.count;
    if (used > options.budget) return inconclusive();
    if (block.min && (!min || *block.min < *min)) {
      min = block.min;
      argmin = block.argmin;
    }
    saw_boundary = saw_boundary || block.saw_boundary;
    for (auto& b : block.boundary) {
      if (verdict.boundary.size() < options.boundary_limit) {
        verdict.boundary.emplace_back(std::move(b));
      } else {
        verdict.boundary_truncated = true;
      }
    }
    verdict.boundary_truncated = verdict.boundary_truncated || block.boundary_truncated;
  }

  verdict.explored = used;
  if constexpr (A::exact) {
    verdict.kind = VerdictKind::not_balancing;
    // No combination is below a unit vector's norm and the singleton (0,…,0,+1)
    // attains it, so the minimum is exactly target even when pruning hid it.
    if (!min || *min > arith.target) {
      min = arith.target;
      argmin = Signs(m, 0);
      argmin.back() = 1;
    }
    verdict.norm_sq_scaled = *min;
  } else {
    verdict.kind = saw_boundary ? VerdictKind::boundary_inconclusive : VerdictKind::not_balancing;
    if (min) verdict.norm_sq = *min;
  }
  if (min) verdict.argmin = SignVector(argmin);
  return verdict;
}

// ---------------------------------------------------------------------------
// Meet in the middle.

std::uint64_t pow3(std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / 3) return std::numeric_limits<std::uint64_t>::max();
    r *= 3;
  }
  return r;
}

template <class A>
Verdict meet_in_the_middle(const Columns<typename A::Value>& cols, const A& arith, double unit_scale,
                           const MitmOptions& options) {
  using V = typename A::Value;
  using Acc = typename A::Acc;
  const std::size_t m = cols.m();
  if (m < 2) throw ContractViolation("meet in the middle needs at least two vectors");
  const auto n = static_cast<std::size_t>(cols.n);
  const std::size_t half = m / 2;  // A = [0, half), B = [half, m)
  const std::size_t nb = m - half;

  Verdict verdict;
  verdict.method = Method::mitm;
  verdict.budget = options.memory_budget;
  if constexpr (A::exact) verdict.scale_sq = arith.target;

  const std::uint64_t combos_b = pow3(nb);
  if (combos_b > options.memory_budget / std::max<std::uint64_t>(1, n)) {
    verdict.kind = VerdictKind::inconclusive;
    verdict.explored = 0;
    return verdict;
  }

  // Partial sums of B indexed by ε_B read as a base-3 number, most
  // significant digit first with -1,0,+1 -> 0,1,2; index order = lex order.
  std::vector<V> bsums(combos_b * n, V{});
  std::vector<std::int8_t> bsign(combos_b, 0);  // first nonzero coefficient
  for (std::uint64_t idx = 0; idx < combos_b; ++idx) {
    std::uint64_t rest = idx;
    V* row = &bsums[idx * n];
    for (std::size_t j = nb; j-- > 0;) {
      const auto c = static_cast<std::int8_t>(static_cast<int>(rest % 3) - 1);
      rest /= 3;
      if (c == 0) continue;
      bsign[idx] = c;  // overwritten down to the first position
      for (const auto& [x, u] : cols.cols[half + j]) row[x] += static_cast<V>(c) * u;
    }
  }

  const double side = options.cell_side.value_or(1.0 / std::sqrt(static_cast<double>(n) + 1.0));
  if (!(side > 0.0)) throw ContractViolation("cell side must be positive");
  const long double cell = static_cast<long double>(side) * unit_scale;
  auto cell_of = [cell](long double value) {
    return static_cast<std::int64_t>(std::floor(value / cell));
  };
  // A coordinate of a balancing v satisfies |v_x| < 1.
  long double reach;
  if constexpr (A::exact) {
    reach = static_cast<long double>(unit_scale) - 1.0L;  // |v_x| <= p^k - 1 in scaled integers
  } else {
    reach = std::sqrt(static_cast<long double>(arith.target + arith.tol)) + RealArith::kSlack;
  }

  // Hash on the coordinates where B spreads the most, as many as the probe
  // budget allows.
  std::vector<V> spread(n, V{});
  for (std::size_t j = half; j < m; ++j) {
    for (const auto& [x, u] : cols.cols[j]) spread[x] += A::magnitude(u);
  }
  std::vector<std::size_t> order;
  for (std::size_t x = 0; x < n; ++x) {
    if (spread[x] != V{}) order.push_back(x);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return spread[a] > spread[b]; });
  std::vector<std::size_t> grid;
  std::vector<std::int64_t> cell_lo, cell_hi;
  std::uint64_t probes = 1;
  const auto window = static_cast<std::uint64_t>(std::floor(2.0L * reach / cell)) + 2;
  for (std::size_t x : order) {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (std::uint64_t idx = 0; idx < combos_b; ++idx) {
      const std::int64_t c = cell_of(static_cast<long double>(bsums[idx * n + x]));
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    const std::uint64_t width = std::min<std::uint64_t>(window, static_cast<std::uint64_t>(hi - lo + 1));
    if (!grid.empty() && probes * width > options.max_probes) break;
    probes *= width;
    grid.push_back(x);
    cell_lo.push_back(lo);
    cell_hi.push_back(hi);
  }

  using Key = std::vector<std::int64_t>;
  std::unordered_map<Key, std::vector<std::uint64_t>, boost::hash<Key>> table;
  Key key(grid.size());
  for (std::uint64_t idx = 0; idx < combos_b; ++idx) {
    for (std::size_t g = 0; g < grid.size(); ++g) key[g] = cell_of(static_cast<long double>(bsums[idx * n + grid[g]]));
    table[key].push_back(idx);
  }

  std::uint64_t explored = combos_b;
  std::optional<Acc> min;
  Signs argmin;
  bool saw_boundary = false;
  std::vector<V> a(n, V{});
  Signs eps_a(half, 0);
  std::optional<Signs> witness;
  Acc witness_norm{};

  auto norm_with = [&](std::uint64_t idx) {
    const V* row = &bsums[idx * n];
    Acc s{};
    for (std::size_t x = 0; x < n; ++x) s += A::sq(a[x] + row[x]);
    return s;
  };
  auto full_signs = [&](std::uint64_t idx) {
    Signs eps = eps_a;
    eps.resize(m, 0);
    for (std::size_t j = nb; j-- > 0;) {
      eps[half + j] = static_cast<std::int8_t>(static_cast<int>(idx % 3) - 1);
      idx /= 3;
    }
    return eps;
  };

  auto visit_a = [&](bool a_nonzero) {
    ++explored;
    std::fill(a.begin(), a.end(), V{});
    for (std::size_t i = 0; i < half; ++i) {
      if (eps_a[i] == 0) continue;
      for (const auto& [x, u] : cols.cols[i]) a[x] += static_cast<V>(eps_a[i]) * u;
    }
    std::vector<std::int64_t> lo(grid.size()), hi(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const long double target = -static_cast<long double>(a[grid[g]]);
      lo[g] = std::max(cell_lo[g], cell_of(target - reach));
      hi[g] = std::min(cell_hi[g], cell_of(target + reach));
      if (lo[g] > hi[g]) return false;
    }
    std::optional<std::uint64_t> best;
    Key probe = lo;
    while (true) {
      auto it = table.find(probe);
      if (it != table.end()) {
        for (std::uint64_t idx : it->second) {
          if (!a_nonzero && bsign[idx] != 1) continue;  // keep ε canonical and non-trivial
          if (best && idx >= *best) continue;
          const Acc norm = norm_with(idx);
          const Cls c = arith.classify(norm);
          if (c == Cls::below) {
            best = idx;
            witness_norm = norm;
            continue;
          }
          if (c == Cls::boundary) saw_boundary = true;
          if (!min || norm < *min) {
            min = norm;
            argmin = full_signs(idx);
          }
        }
      }
      std::size_t g = 0;
      while (g < grid.size() && probe[g] == hi[g]) {
        probe[g] = lo[g];
        ++g;
      }
      if (g == grid.size()) break;
      ++probe[g];
    }
    if (best) witness = full_signs(*best);
    return best.has_value();
  };

  auto rec = [&](auto&& self, std::size_t pos, bool nonzero) -> bool {
    if (pos == half) return visit_a(nonzero);
    const std::vector<std::int8_t> values =
        nonzero ? std::vector<std::int8_t>{-1, 0, 1} : std::vector<std::int8_t>{0, 1};
    for (auto v : values) {
      eps_a[pos] = v;
      if (self(self, pos + 1, nonzero || v != 0)) return true;
    }
    eps_a[pos] = 0;
    return false;
  };
  rec(rec, 0, false);

  verdict.explored = explored;
  if (witness) {
    verdict.kind = VerdictKind::balancing;
    verdict.witness = SignVector(*witness);
    if constexpr (A::exact) {
      verdict.norm_sq_scaled = witness_norm;
    } else {
      verdict.norm_sq = witness_norm;
    }
    return verdict;
  }
  // Singletons are always candidates for the minimum.
  for (std::size_t i = m; i-- > 0;) {
    Acc s{};
    for (const auto& [x, u] : cols.cols[i]) s += A::sq(u);
    if (arith.classify(s) == Cls::boundary) saw_boundary = true;
    if (!min || s <= *min) {
      min = s;
      argmin = Signs(m, 0);
      argmin[i] = 1;
    }
  }
  if constexpr (A::exact) {
    verdict.kind = VerdictKind::not_balancing;
    verdict.norm_sq_scaled = *min;
  } else {
    verdict.kind = saw_boundary ? VerdictKind::boundary_inconclusive : VerdictKind::not_balancing;
    verdict.norm_sq = *min;
  }
  verdict.argmin = SignVector(argmin);
  return verdict;
}

// ---------------------------------------------------------------------------
// Random sampling.

template <class A>
Verdict sample(const Columns<typename A::Value>& cols, const A& arith, std::uint64_t trials,
               std::uint64_t seed) {
  using V = typename A::Value;
  using Acc = typename A::Acc;
  if (trials < 1) throw ContractViolation("at least one trial is required");
  const std::size_t m = cols.m();
  if (m == 0) throw ContractViolation("the family must contain at least one vector");

  Verdict verdict;
  verdict.method = Method::sample;
  verdict.budget = trials;
  if constexpr (A::exact) verdict.scale_sq = arith.target;

  std::mt19937_64 rng(seed);
  // 2^64 - 1 is divisible by 3; rejecting the top value leaves a uniform trit.
  auto trit = [&rng]() {
    std::uint64_t x;
    do {
      x = rng();
    } while (x == std::numeric_limits<std::uint64_t>::max());
    return static_cast<std::int8_t>(static_cast<int>(x % 3) - 1);
  };

  std::vector<V> v(static_cast<std::size_t>(cols.n), V{});
  std::vector<std::int64_t> touched;
  Signs eps(m, 0);
  for (std::uint64_t trial = 1; trial <= trials; ++trial) {
    bool nonzero = false;
    while (!nonzero) {
      for (auto& c : eps) {
        c = trit();
        nonzero = nonzero || c != 0;
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (eps[i] == 0) continue;
      for (const auto& [x, u] : cols.cols[i]) {
        if (v[x] == V{}) touched.push_back(x);
        v[x] += static_cast<V>(eps[i]) * u;
      }
    }
    Acc norm{};
    for (auto x : touched) {
      norm += A::sq(v[x]);
      v[x] = V{};
    }
    touched.clear();
    if (arith.classify(norm) == Cls::below) {
      verdict.kind = VerdictKind::balancing;
      verdict.explored = trial;
      verdict.witness = SignVector(eps).canonical();
      if constexpr (A::exact) {
        verdict.norm_sq_scaled = norm;
      } else {
        verdict.norm_sq = norm;
      }
      return verdict;
    }
  }
  verdict.kind = VerdictKind::inconclusive;
  verdict.explored = trials;
  return verdict;
}

void require_tolerance(double tolerance) {
  if (!(tolerance >= 0.0) || !(tolerance < 1.0)) throw ContractViolation("tolerance must lie in [0, 1)");
}

}  // namespace

Verdict solve_exhaustive(const UnitVectorFamily& family, const SearchOptions& options) {
  const auto cols = columns_of(family);
  const ExactArith arith(cols, family.scale_sq(), options.collect_boundary);
  return depth_first_search(cols, arith, Method::exhaustive, false, options);
}

Verdict solve_branch_bound(const UnitVectorFamily& family, const SearchOptions& options) {
  const auto cols = columns_of(family);
  const ExactArith arith(cols, family.scale_sq(), options.collect_boundary);
  return depth_first_search(cols, arith, Method::branch_bound, true, options);
}

Verdict solve_mitm(const UnitVectorFamily& family, const MitmOptions& options) {
  const auto cols = columns_of(family);
  const ExactArith arith(cols, family.scale_sq(), false);
  const auto unit = static_cast<double>(ipow128(family.base(), family.exponent()));
  return meet_in_the_middle(cols, arith, unit, options);
}

Verdict sample_random(const UnitVectorFamily& family, std::uint64_t trials, std::uint64_t seed) {
  const auto cols = columns_of(family);
  const ExactArith arith(cols, family.scale_sq(), false);
  return sample(cols, arith, trials, seed);
}

Verdict solve_exhaustive(const RealFamily& family, double tolerance, const SearchOptions& options) {
  require_tolerance(tolerance);
  const RealArith arith{tolerance};
  return depth_first_search(columns_of(family), arith, Method::exhaustive, false, options);
}

Verdict solve_branch_bound(const RealFamily& family, double tolerance, const SearchOptions& options) {
  require_tolerance(tolerance);
  const RealArith arith{tolerance};
  return depth_first_search(columns_of(family), arith, Method::branch_bound, true, options);
}

Verdict solve_mitm(const RealFamily& family, double tolerance, const MitmOptions& options) {
  require_tolerance(tolerance);
  const RealArith arith{tolerance};
  return meet_in_the_middle(columns_of(family), arith, 1.0, options);
}

Verdict sample_random(const RealFamily& family, double tolerance, std::uint64_t trials,
                      std::uint64_t seed) {
  require_tolerance(tolerance);
  const RealArith arith{tolerance};
  return sample(columns_of(family), arith, trials, seed);
}

}  // namespace selbal
