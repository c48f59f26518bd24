#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "octaffine/affine_decision.hpp"
#include "octaffine/conditions.hpp"
#include "octaffine/octa_model.hpp"
#include "octaffine/reconstruct.hpp"

namespace octa {

inline constexpr const char* kDevFormat = "octa-dev/1";
inline constexpr const char* kGeomFormat = "octa-geom/1";
inline constexpr const char* kDecisionFormat = "decision/1";

nlohmann::json development_to_json(const NaturalDevelopment& dev);

/// Parses and validates an octa-dev/1 document; violations cover both the
/// schema and the development invariants.
DevelopmentValidation development_from_json(const nlohmann::json& doc);

nlohmann::json geometry_to_json(const Octahedron3& oct);

struct GeometryParse {
    bool ok = false;
    std::vector<std::string> errors;
    Octahedron3 octahedron;
};
GeometryParse geometry_from_json(const nlohmann::json& doc);

nlohmann::json group1_to_json(const Group1Report& rep, const Tolerances& tol);
nlohmann::json group2_to_json(const Group2Report& rep, const Tolerances& tol);
nlohmann::json group5_to_json(const Group5Report& rep, const Tolerances& tol);
nlohmann::json reconstruction_to_json(const ReconstructionResult& res, const Tolerances& tol);
nlohmann::json decision_to_json(const Decision& dec, const Tolerances& tol);

/// Reads a whole file; empty optional on I/O failure.
std::optional<std::string> read_file(const std::string& path);

/// Writes via a temporary sibling and rename, so readers never observe a
/// half-written document.
bool write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace octa
