#include "selbal/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace selbal {

using nlohmann::json;

namespace {

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path.empty() ? "<root>" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::int64_t as_int64(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ParseError(field, "expected an integer");
  return j.get<std::int64_t>();
}

const json& as_array(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError(field, "expected an array");
  return j;
}

std::string at(const std::string& field, std::size_t i) {
  return field + "[" + std::to_string(i) + "]";
}

std::vector<Entry> entries_from_json(const json& j, const std::string& field) {
  std::vector<Entry> entries;
  for (std::size_t e = 0; e < as_array(j, field).size(); ++e) {
    const std::string ef = at(field, e);
    const json& pair = as_array(j[e], ef);
    if (pair.size() != 2) throw ParseError(ef, "expected [coordIndex, numerator]");
    entries.push_back({as_int64(pair[0], ef + "[0]"), as_int64(pair[1], ef + "[1]")});
  }
  return entries;
}

json entries_to_json(std::span<const Entry> entries) {
  json arr = json::array();
  for (const auto& e : entries) arr.push_back(json::array({e.index, e.numerator}));
  return arr;
}

Point point_from_json(const json& j, const std::string& field) {
  Point p;
  for (std::size_t c = 0; c < as_array(j, field).size(); ++c) p.push_back(as_int64(j[c], at(field, c)));
  return p;
}

}  // namespace

json int128_to_json(Int128 v) {
  if (fits_int64(v)) return json(static_cast<std::int64_t>(v));
  return json(to_string(v));
}

Int128 int128_from_json(const json& j, const std::string& field) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    try {
      return parse_int128(j.get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(field, e.what());
    }
  }
  throw ParseError(field, "expected an integer");
}

json to_json(const ScaledVector& v) {
  return json{{"n", v.dimension()},
              {"p", v.base()},
              {"k", v.exponent()},
              {"entries", entries_to_json(v.entries())}};
}

ScaledVector scaled_vector_from_json(const json& j) {
  const auto n = as_int64(require(j, "n", ""), "n");
  const auto p = as_int64(require(j, "p", ""), "p");
  const auto k = as_int64(require(j, "k", ""), "k");
  auto entries = entries_from_json(require(j, "entries", ""), "entries");
  try {
    return ScaledVector(n, p, static_cast<int>(k), std::move(entries));
  } catch (const ContractViolation& e) {
    throw ParseError("entries", e.what());
  }
}

json to_json(const LatticeShell& shell) {
  json points = json::array();
  for (const auto& pt : shell.points) points.push_back(pt);
  return json{{"Rsq", shell.radius_sq}, {"D", shell.box_bound}, {"points", points}};
}

json to_json(const ConstructionParams& params) {
  json sizes = json::array();
  for (const auto& level : params.chain) sizes.push_back(level.size());
  json j{{"d", params.d},
         {"p", params.p},
         {"k", params.k},
         {"L", params.L},
         {"shell", to_json(params.shell)},
         {"chain_sizes", sizes},
         {"level0", params.level0 == BaseLevel::full_basis ? "full_basis" : "shell"}};
  if (!params.name.empty()) j["name"] = params.name;
  return j;
}

ConstructionParams params_from_json(const json& j) {
  const std::string root = "provenance";
  ConstructionParams params;
  params.d = static_cast<int>(as_int64(require(j, "d", root), root + ".d"));
  params.p = as_int64(require(j, "p", root), root + ".p");
  params.k = static_cast<int>(as_int64(require(j, "k", root), root + ".k"));
  params.L = as_int64(require(j, "L", root), root + ".L");

  const std::string sf = root + ".shell";
  const json& shell = require(j, "shell", root);
  params.shell.dimension = params.d;
  params.shell.radius_sq = as_int64(require(shell, "Rsq", sf), sf + ".Rsq");
  const json& points = as_array(require(shell, "points", sf), sf + ".points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    Point pt = point_from_json(points[i], at(sf + ".points", i));
    if (static_cast<int>(pt.size()) != params.d) {
      throw ParseError(at(sf + ".points", i), "point dimension differs from d");
    }
    params.shell.r = std::max(params.shell.r, inf_norm(pt));
    params.shell.points.push_back(std::move(pt));
  }
  std::sort(params.shell.points.begin(), params.shell.points.end());
  params.shell.box_bound =
      shell.contains("D") ? as_int64(shell["D"], sf + ".D") : params.shell.r;

  const std::string cf = root + ".chain_sizes";
  const json& sizes = as_array(require(j, "chain_sizes", root), cf);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto size = as_int64(sizes[i], at(cf, i));
    if (size < 0 || static_cast<std::size_t>(size) > params.shell.points.size()) {
      throw ParseError(at(cf, i), "chain level larger than the shell");
    }
    params.chain.emplace_back(params.shell.points.begin(), params.shell.points.begin() + size);
  }

  if (j.contains("level0")) {
    const auto& level0 = j["level0"];
    if (level0 == "full_basis") {
      params.level0 = BaseLevel::full_basis;
    } else if (level0 == "shell") {
      params.level0 = BaseLevel::shell;
    } else {
      throw ParseError(root + ".level0", "expected \"shell\" or \"full_basis\"");
    }
  }
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError(root + ".name", "expected a string");
    params.name = j["name"].get<std::string>();
  }
  return params;
}

json to_json(const UnitVectorFamily& family) {
  json vectors = json::array();
  for (const auto& v : family.vectors()) vectors.push_back(entries_to_json(v.entries()));
  json j{{"format", kInstanceFormat},
         {"n", family.dimension()},
         {"m", family.size()},
         {"p", family.base()},
         {"k", family.exponent()},
         {"vectors", vectors}};
  if (family.provenance()) j["provenance"] = to_json(*family.provenance());
  return j;
}

UnitVectorFamily family_from_json(const json& j) {
  const json& format = require(j, "format", "");
  if (format != kInstanceFormat) throw ParseError("format", "expected \"" + std::string(kInstanceFormat) + "\"");
  const auto n = as_int64(require(j, "n", ""), "n");
  const auto m = as_int64(require(j, "m", ""), "m");
  const auto p = as_int64(require(j, "p", ""), "p");
  const auto k = as_int64(require(j, "k", ""), "k");
  if (n < 1) throw ParseError("n", "must be positive");
  if (p < 2) throw ParseError("p", "must be at least 2");
  if (k < 0 || k > 62) throw ParseError("k", "out of range");
  const json& vectors = as_array(require(j, "vectors", ""), "vectors");
  if (static_cast<std::int64_t>(vectors.size()) != m) {
    throw ParseError("m", "declares " + std::to_string(m) + " vectors but " +
                              std::to_string(vectors.size()) + " are listed");
  }
  std::vector<ScaledVector> parsed;
  parsed.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const std::string field = at("vectors", i);
    try {
      parsed.emplace_back(n, p, static_cast<int>(k), entries_from_json(vectors[i], field));
    } catch (const ContractViolation& e) {
      throw ParseError(field, e.what());
    }
  }
  std::optional<ConstructionParams> provenance;
  if (j.contains("provenance") && !j["provenance"].is_null()) {
    provenance = params_from_json(j["provenance"]);
  }
  try {
    UnitVectorFamily family(n, p, std::move(parsed), std::move(provenance));
    if (family.size() > 0 && family.exponent() != k) throw ParseError("k", "vectors were rescaled; stored k is wrong");
    return family;
  } catch (const ContractViolation& e) {
    throw ParseError("vectors", e.what());
  }
}

json to_json(const RealFamily& family) {
  json vectors = json::array();
  for (const auto& v : family.vectors()) {
    json arr = json::array();
    for (const auto& e : v) arr.push_back(json::array({e.index, e.value}));
    vectors.push_back(arr);
  }
  return json{{"format", kRealInstanceFormat},
              {"n", family.dimension()},
              {"m", family.size()},
              {"vectors", vectors}};
}

RealFamily real_family_from_json(const json& j) {
  const json& format = require(j, "format", "");
  if (format != kRealInstanceFormat) {
    throw ParseError("format", "expected \"" + std::string(kRealInstanceFormat) + "\"");
  }
  const auto n = as_int64(require(j, "n", ""), "n");
  const auto m = as_int64(require(j, "m", ""), "m");
  const json& vectors = as_array(require(j, "vectors", ""), "vectors");
  if (static_cast<std::int64_t>(vectors.size()) != m) throw ParseError("m", "does not match vectors");
  std::vector<std::vector<RealEntry>> parsed;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const std::string field = at("vectors", i);
    std::vector<RealEntry> v;
    for (std::size_t e = 0; e < as_array(vectors[i], field).size(); ++e) {
      const std::string ef = at(field, e);
      const json& pair = as_array(vectors[i][e], ef);
      if (pair.size() != 2 || !pair[1].is_number()) throw ParseError(ef, "expected [coordIndex, value]");
      v.push_back({as_int64(pair[0], ef + "[0]"), pair[1].get<double>()});
    }
    parsed.push_back(std::move(v));
  }
  try {
    return RealFamily(n, std::move(parsed));
  } catch (const ContractViolation& e) {
    throw ParseError("vectors", e.what());
  }
}

AnyFamily any_family_from_json(const json& j) {
  const json& format = require(j, "format", "");
  if (format == kRealInstanceFormat) return real_family_from_json(j);
  return family_from_json(j);
}

AnyFamily load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("<file>", "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError("<file>", e.what());
  }
  return any_family_from_json(j);
}

void save_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump() << '\n';
}

}  // namespace selbal
