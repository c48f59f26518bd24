#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "octaffine/genkit.hpp"
#include "octaffine/json_io.hpp"

using namespace octa;
using nlohmann::json;

TEST_CASE("development JSON round-trip") {
    std::array<double, 12> l{};
    for (int e = 0; e < 12; ++e) l[e] = 1.0 + 0.01 * e;
    const NaturalDevelopment dev(l);
    const json doc = development_to_json(dev);
    CHECK(doc["format"] == "octa-dev/1");
    CHECK(doc["edges"].size() == 12);
    const auto back = development_from_json(doc);
    REQUIRE(back.ok);
    for (int e = 0; e < 12; ++e) CHECK(back.development->length(e) == dev.length(e));
}

TEST_CASE("development JSON rejects malformed documents") {
    SUBCASE("wrong format string") {
        const auto r = development_from_json(json{{"format", "octa-dev/2"}, {"edges", json::object()}});
        CHECK_FALSE(r.ok);
    }
    SUBCASE("missing edge") {
        json doc = development_to_json(NaturalDevelopment(std::array<double, 12>{
            1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
        doc["edges"].erase("45");
        const auto r = development_from_json(doc);
        CHECK_FALSE(r.ok);
        bool names_key = false;
        for (const auto& v : r.violations)
            if (v.find("45") != std::string::npos) names_key = true;
        CHECK(names_key);
    }
    SUBCASE("non-numeric entry") {
        json doc = development_to_json(NaturalDevelopment(std::array<double, 12>{
            1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
        doc["edges"]["01"] = "long";
        CHECK_FALSE(development_from_json(doc).ok);
    }
    SUBCASE("scientific notation is accepted") {
        json doc = development_to_json(NaturalDevelopment(std::array<double, 12>{
            1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
        const auto parsed = json::parse(R"({"format":"octa-dev/1","edges":{
            "01":1e0,"02":1.0E0,"03":0.1e1,"04":1,"12":1,"13":1,
            "15":1,"24":1,"25":1,"34":1,"35":1,"45":1}})");
        const auto r = development_from_json(parsed);
        REQUIRE(r.ok);
        CHECK(r.development->length(0) == 1.0);
    }
}

TEST_CASE("geometry JSON round-trip") {
    GenConfig cfg;
    const Octahedron3 oct = random_convex_octahedron(cfg.with_seed(11));
    const json doc = geometry_to_json(oct);
    CHECK(doc["format"] == "octa-geom/1");
    const GeometryParse back = geometry_from_json(doc);
    REQUIRE(back.ok);
    for (int i = 0; i < 6; ++i) {
        CHECK(back.octahedron.vertices[i].x == oct.vertices[i].x);
        CHECK(back.octahedron.vertices[i].y == oct.vertices[i].y);
        CHECK(back.octahedron.vertices[i].z == oct.vertices[i].z);
    }
    SUBCASE("wrong vertex count is rejected") {
        json bad = doc;
        bad["vertices"].erase(5);
        CHECK_FALSE(geometry_from_json(bad).ok);
    }
}

TEST_CASE("result serialization carries the schema fields") {
    Tolerances tol;
    std::array<double, 12> l;
    l.fill(1.0);
    const NaturalDevelopment dev(l);

    const ReconstructionResult res = reconstruct(dev, tol);
    const json rj = reconstruction_to_json(res, tol);
    CHECK(rj["status"] == "unique");
    CHECK(rj["diagonals"].contains("05"));
    CHECK(rj["diagonals"].contains("14"));
    CHECK(rj["diagonals"].contains("23"));
    CHECK(rj["vertices"].size() == 6);
    CHECK(rj["residuals"].contains("eq8"));
    CHECK(rj["candidates_found"] == 1);

    const Decision dec = decide(dev, dev.scaled(2.0), tol);
    const json dj = decision_to_json(dec, tol);
    CHECK(dj["format"] == "decision/1");
    CHECK(dj["verdict"] == "equivalent");
    CHECK(dj["alpha"].get<double>() == doctest::Approx(64.0).epsilon(1e-7));
    CHECK(dj["ratios"].size() == 12);
    CHECK(dj["map_residual"].is_number());
    CHECK(dj["details"].contains("reconstruction_a"));
    CHECK(dj["details"].contains("reconstruction_b"));
}

TEST_CASE("atomic file writing") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "octaffine-io-test";
    fs::create_directories(dir);
    const std::string path = (dir / "out.json").string();
    CHECK(write_file_atomic(path, "{\"x\":1}\n"));
    const auto text = read_file(path);
    REQUIRE(text.has_value());
    CHECK(*text == "{\"x\":1}\n");
    CHECK_FALSE(read_file((dir / "missing.json").string()).has_value());
    fs::remove_all(dir);
}
