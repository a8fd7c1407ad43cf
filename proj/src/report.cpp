#include "selbal/report.hpp"

#include <sstream>

#include "selbal/instance_io.hpp"

namespace selbal {

using nlohmann::json;

json to_json(const SignVector& eps) {
  json arr = json::array();
  for (auto c : eps.coefficients()) arr.push_back(static_cast<int>(c));
  return arr;
}

json to_json(const Verdict& v) {
  json j{{"verdict", to_string(v.kind)}, {"method", to_string(v.method)}};
  j["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  if (v.kind == VerdictKind::balancing) {
    if (v.norm_sq_scaled) j["norm_sq_scaled"] = int128_to_json(*v.norm_sq_scaled);
  } else {
    j["min_norm_sq_scaled"] = v.norm_sq_scaled ? int128_to_json(*v.norm_sq_scaled) : json(nullptr);
  }
  if (v.norm_sq) j["norm_sq"] = *v.norm_sq;
  if (v.argmin) j["argmin"] = to_json(*v.argmin);
  j["scale_sq"] = int128_to_json(v.scale_sq);
  if (v.method == Method::structural) j["lower_bound_scaled"] = int128_to_json(v.scale_sq);
  j["explored"] = v.explored;
  j["budget"] = v.budget;
  if (v.method == Method::branch_bound) j["pruned"] = v.pruned;
  if (!v.boundary.empty() || v.boundary_truncated) {
    json b = json::array();
    for (const auto& e : v.boundary) b.push_back(to_json(e));
    j["boundary"] = b;
    j["boundary_truncated"] = v.boundary_truncated;
  }
  return j;
}

json to_json(const StructuralReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json item{{"check", c.name}, {"passed", c.passed}};
    if (!c.passed) item["detail"] = c.detail;
    checks.push_back(item);
  }
  return json{{"passed", r.passed()}, {"checks", checks}};
}

json to_json(const ProofTrace& t) {
  json supports = json::array();
  for (const auto& level : t.supports) supports.push_back(level);
  json certified = json::array();
  for (const auto& c : t.certified) {
    certified.push_back(json{{"x", c.x}, {"y", c.y}, {"t", c.t}, {"index", c.index}, {"numerator", c.numerator}});
  }
  return json{{"j", t.j},
              {"supports", supports},
              {"certified", certified},
              {"required", t.required},
              {"lower_bound_scaled", int128_to_json(t.lower_bound_scaled)},
              {"norm_sq_scaled", int128_to_json(t.norm_sq_scaled)},
              {"scale_sq", int128_to_json(t.scale_sq)}};
}

json to_json(const StrictnessReport& r) {
  json outside = json::array();
  for (const auto& e : r.outside) outside.push_back(to_json(e));
  return json{{"verdict", to_json(r.verdict)},
              {"norm_one", r.boundary},
              {"norm_one_in_family", r.in_family},
              {"norm_one_outside_family", outside},
              {"complete", r.complete}};
}

namespace {

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    }
    return;
  }
  rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
}

}  // namespace

std::string render_table(const json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream out;
  for (const auto& [k, v] : rows) out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  return out.str();
}

}  // namespace selbal
