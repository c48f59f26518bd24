#include "octaffine/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace octa {

using nlohmann::json;

namespace cb = combinatorics;

namespace {

std::string edge_key(int i, int j) {
    return std::to_string(std::min(i, j)) + std::to_string(std::max(i, j));
}

}  // namespace

json development_to_json(const NaturalDevelopment& dev) {
    json edges = json::object();
    for (const auto& [i, j] : cb::kEdges) edges[edge_key(i, j)] = dev.length(i, j);
    return json{{"format", kDevFormat}, {"edges", edges}};
}

DevelopmentValidation development_from_json(const json& doc) {
    DevelopmentValidation out;
    if (!doc.is_object()) {
        out.violations.push_back("document is not a JSON object");
        return out;
    }
    if (!doc.contains("format") || doc["format"] != kDevFormat) {
        out.violations.push_back(std::string("missing or unexpected format (want \"") +
                                 kDevFormat + "\")");
        return out;
    }
    if (!doc.contains("edges") || !doc["edges"].is_object()) {
        out.violations.push_back("missing \"edges\" object");
        return out;
    }
    std::map<std::string, double> raw;
    for (const auto& [key, value] : doc["edges"].items()) {
        if (!value.is_number()) {
            out.violations.push_back("edge \"" + key + "\" is not a number");
            return out;
        }
        raw[key] = value.get<double>();
    }
    return validate_development(raw);
}

json geometry_to_json(const Octahedron3& oct) {
    json verts = json::array();
    for (const Vec3& v : oct.vertices) verts.push_back(json::array({v.x, v.y, v.z}));
    return json{{"format", kGeomFormat}, {"vertices", verts}};
}

GeometryParse geometry_from_json(const json& doc) {
    GeometryParse out;
    if (!doc.is_object() || !doc.contains("format") || doc["format"] != kGeomFormat) {
        out.errors.push_back(std::string("missing or unexpected format (want \"") + kGeomFormat +
                             "\")");
        return out;
    }
    if (!doc.contains("vertices") || !doc["vertices"].is_array() || doc["vertices"].size() != 6) {
        out.errors.push_back("\"vertices\" must be an array of six [x,y,z] triples");
        return out;
    }
    for (int i = 0; i < 6; ++i) {
        const auto& row = doc["vertices"][i];
        if (!row.is_array() || row.size() != 3 || !row[0].is_number() || !row[1].is_number() ||
            !row[2].is_number()) {
            out.errors.push_back("vertex " + std::to_string(i) + " is not an [x,y,z] triple");
            return out;
        }
        out.octahedron.vertices[i] = {row[0].get<double>(), row[1].get<double>(),
                                      row[2].get<double>()};
    }
    out.ok = true;
    return out;
}

json group1_to_json(const Group1Report& rep, const Tolerances& tol) {
    return json{{"eq6_margins", {rep.eq6_margins[0], rep.eq6_margins[1]}},
                {"eq7_margin", rep.eq7_margin},
                {"eq8_res", rep.eq8_res},
                {"eq9_res", rep.eq9_res},
                {"eq10_res", rep.eq10_res},
                {"satisfied", rep.satisfied(tol)}};
}

json group2_to_json(const Group2Report& rep, const Tolerances& tol) {
    json margins = json::array();
    for (const auto& e : rep.entries) {
        margins.push_back(json{{"face", {e.face[0], e.face[1], e.face[2]}},
                               {"apexes", {e.apexes.first, e.apexes.second}},
                               {"margin", e.margin}});
    }
    return json{{"margins", margins},
                {"min_margin", rep.min_margin()},
                {"all_positive", rep.all_strictly_positive(tol)}};
}

json group5_to_json(const Group5Report& rep, const Tolerances& tol) {
    return json{{"ratios", rep.ratios},
                {"alpha_hat", rep.alpha_hat},
                {"spread", rep.spread},
                {"signs_ok", rep.signs_ok},
                {"satisfied", rep.satisfied(tol)}};
}

namespace {

const char* status_name(ReconStatus s) {
    switch (s) {
        case ReconStatus::Unique: return "unique";
        case ReconStatus::None: return "none";
        case ReconStatus::Ambiguous: return "ambiguous";
    }
    return "none";
}

}  // namespace

json reconstruction_to_json(const ReconstructionResult& res, const Tolerances& tol) {
    json out;
    out["status"] = status_name(res.status);
    out["candidates_found"] = res.candidates_found;
    if (res.status == ReconStatus::None) {
        out["diagonals"] = nullptr;
        out["vertices"] = nullptr;
        out["residuals"] = nullptr;
    } else {
        out["diagonals"] = json{{"05", res.diagonals.d05},
                                {"14", res.diagonals.d14},
                                {"23", res.diagonals.d23}};
        json verts = json::array();
        for (const Vec3& v : res.embedding.points) verts.push_back(json::array({v.x, v.y, v.z}));
        out["vertices"] = verts;
        out["residuals"] = json{{"eq6_margins", {res.group1.eq6_margins[0], res.group1.eq6_margins[1]}},
                                {"eq7_margin", res.group1.eq7_margin},
                                {"eq8", res.group1.eq8_res},
                                {"eq9", res.group1.eq9_res},
                                {"eq10", res.group1.eq10_res},
                                {"group2_min_margin", res.group2.min_margin()},
                                {"embedding_error", res.embedding.max_distance_error}};
        (void)tol;
    }
    if (!res.diagnostic.empty()) out["diagnostic"] = res.diagnostic;
    return out;
}

json decision_to_json(const Decision& dec, const Tolerances& tol) {
    json out;
    out["format"] = kDecisionFormat;
    out["verdict"] = to_string(dec.verdict);
    out["alpha"] = dec.alpha_hat ? json(*dec.alpha_hat) : json(nullptr);
    out["ratios"] = dec.group5 ? json(dec.group5->ratios) : json(nullptr);
    out["map_residual"] = dec.map_residual ? json(*dec.map_residual) : json(nullptr);
    json details;
    details["spread"] = dec.group5 ? json(dec.group5->spread) : json(nullptr);
    details["signs_ok"] = dec.group5 ? json(dec.group5->signs_ok) : json(nullptr);
    if (!dec.diagnostic.empty()) details["diagnostic"] = dec.diagnostic;
    details["reconstruction_a"] = reconstruction_to_json(dec.recon_a, tol);
    details["reconstruction_b"] = reconstruction_to_json(dec.recon_b, tol);
    out["details"] = details;
    return out;
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return ss.str();
}

bool write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return false;
        out << contents;
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            return false;
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        return false;
    }
    return true;
}

}  // namespace octa
