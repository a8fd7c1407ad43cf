#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "json.hpp"
#include "selbal/params.hpp"
#include "selbal/vectorspace.hpp"

namespace selbal {

inline constexpr const char* kInstanceFormat = "selbal-instance-v1";
inline constexpr const char* kRealInstanceFormat = "selbal-real-instance-v1";

// Integers that fit in 64 bits are emitted as JSON numbers, larger ones as
// decimal strings.
nlohmann::json int128_to_json(Int128 v);
Int128 int128_from_json(const nlohmann::json& j, const std::string& field);

nlohmann::json to_json(const ScaledVector& v);
ScaledVector scaled_vector_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LatticeShell& shell);
nlohmann::json to_json(const ConstructionParams& params);
// The chain is rebuilt as lexicographic prefixes of the shell of the recorded
// sizes. Nothing beyond field syntax is validated here; the structural
// verifier owns the semantic checks.
ConstructionParams params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const UnitVectorFamily& family);
UnitVectorFamily family_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RealFamily& family);
RealFamily real_family_from_json(const nlohmann::json& j);

using AnyFamily = std::variant<UnitVectorFamily, RealFamily>;

// Dispatches on the "format" field.
AnyFamily any_family_from_json(const nlohmann::json& j);
AnyFamily load_instance(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace selbal
