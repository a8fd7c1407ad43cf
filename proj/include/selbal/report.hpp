#pragma once

#include <string>

#include "json.hpp"
#include "selbal/solver.hpp"
#include "selbal/structural.hpp"

namespace selbal {

nlohmann::json to_json(const SignVector& eps);
// { "verdict", "method", "witness", "argmin", "min_norm_sq_scaled" | "norm_sq",
//   "scale_sq", "explored", "budget", ... }; Int128 values above 2^63 are strings.
nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const StructuralReport& r);
nlohmann::json to_json(const ProofTrace& t);
nlohmann::json to_json(const StrictnessReport& r);

// Two-column "key  value" rendering of a flat or nested JSON object.
std::string render_table(const nlohmann::json& j);

}  // namespace selbal
