#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "octaffine/octa_model.hpp"
#include "oracles.hpp"

using namespace octa;
namespace cb = combinatorics;

namespace {

Octahedron3 axis_octahedron() {
    Octahedron3 oct;
    oct.vertices = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, -1}, {0, -1, 0}, {-1, 0, 0}}};
    return oct;
}

std::map<std::string, double> regular_raw() {
    std::map<std::string, double> raw;
    for (const auto& [i, j] : cb::kEdges)
        raw[std::to_string(i) + std::to_string(j)] = 1.0;
    return raw;
}

}  // namespace

TEST_CASE("combinatorics self-consistency") {
    CHECK(cb::kEdges.size() == 12);
    CHECK(cb::kFaces.size() == 8);
    CHECK(cb::kAntipodalPairs.size() == 3);

    SUBCASE("faces avoid antipodal pairs and use one vertex per pair") {
        for (const auto& f : cb::kFaces) {
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b) CHECK(f[a] + f[b] != 5);
        }
    }
    SUBCASE("every edge lies in exactly two faces") {
        for (const auto& [i, j] : cb::kEdges) {
            int count = 0;
            for (const auto& f : cb::kFaces) {
                const bool has_i = f[0] == i || f[1] == i || f[2] == i;
                const bool has_j = f[0] == j || f[1] == j || f[2] == j;
                if (has_i && has_j) ++count;
            }
            CHECK(count == 2);
        }
    }
    SUBCASE("faces sharing an edge have antipodal apexes") {
        for (const auto& [i, j] : cb::kEdges) {
            std::vector<int> apexes;
            for (const auto& f : cb::kFaces) {
                const bool has_i = f[0] == i || f[1] == i || f[2] == i;
                const bool has_j = f[0] == j || f[1] == j || f[2] == j;
                if (has_i && has_j)
                    for (int v : f)
                        if (v != i && v != j) apexes.push_back(v);
            }
            REQUIRE(apexes.size() == 2);
            CHECK(apexes[0] + apexes[1] == 5);
            const auto [p, q] = cb::edge_apexes(i, j);
            CHECK(std::min(apexes[0], apexes[1]) == std::min(p, q));
        }
    }
    SUBCASE("edge_index covers exactly the non-antipodal pairs") {
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                if (i == j || i + j == 5)
                    CHECK(cb::edge_index(i, j) == -1);
                else
                    CHECK(cb::edge_index(i, j) >= 0);
            }
    }
    SUBCASE("48 labelings preserve the combinatorics") {
        const auto& perms = cb::octahedral_symmetries();
        CHECK(perms.size() == 48);
        std::set<std::array<int, 6>> unique(perms.begin(), perms.end());
        CHECK(unique.size() == 48);
        for (const auto& p : perms) {
            for (int v = 0; v < 6; ++v) CHECK(p[cb::antipode(v)] == cb::antipode(p[v]));
            for (const auto& [i, j] : cb::kEdges) CHECK(cb::is_edge(p[i], p[j]));
        }
    }
}

TEST_CASE("development validation") {
    SUBCASE("regular development is valid") {
        const auto val = validate_development(regular_raw());
        REQUIRE(val.ok);
        CHECK(val.development->scale() == doctest::Approx(1.0));
    }
    SUBCASE("oversized edge breaks a face triangle") {
        auto raw = regular_raw();
        raw["01"] = 3.0;
        const auto val = validate_development(raw);
        CHECK_FALSE(val.ok);
        bool mentions_face = false;
        for (const auto& v : val.violations)
            if (v.find("{0,1,2}") != std::string::npos) mentions_face = true;
        CHECK(mentions_face);
    }
    SUBCASE("a diagonal key is rejected by name") {
        auto raw = regular_raw();
        raw["05"] = 1.0;
        const auto val = validate_development(raw);
        CHECK_FALSE(val.ok);
        bool mentions_diagonal = false;
        for (const auto& v : val.violations)
            if (v.find("diagonal") != std::string::npos) mentions_diagonal = true;
        CHECK(mentions_diagonal);
    }
    SUBCASE("missing and non-positive edges are reported") {
        auto raw = regular_raw();
        raw.erase("34");
        auto val = validate_development(raw);
        CHECK_FALSE(val.ok);

        raw = regular_raw();
        raw["12"] = 0.0;
        val = validate_development(raw);
        CHECK_FALSE(val.ok);
    }
}

TEST_CASE("face-triangle reduction") {
    std::array<std::array<double, 3>, 8> sides{};
    for (auto& s : sides) s = {1.0, 1.0, 1.0};
    SUBCASE("consistent triangles reduce to the regular development") {
        const auto val = development_from_face_triangles(sides);
        REQUIRE(val.ok);
        for (int e = 0; e < 12; ++e) CHECK(val.development->length(e) == 1.0);
    }
    SUBCASE("a shared-side mismatch is rejected") {
        sides[1][0] = 1.5;  // face {0,1,3} side {0,1} disagrees with face {0,1,2}
        const auto val = development_from_face_triangles(sides);
        CHECK_FALSE(val.ok);
    }
}

TEST_CASE("develop and diagonals") {
    const Octahedron3 axis = axis_octahedron();
    SUBCASE("axis octahedron has edges sqrt(2) and diagonals 2") {
        const NaturalDevelopment dev = develop(axis);
        for (int e = 0; e < 12; ++e)
            CHECK(dev.length(e) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        const DiagonalSet d = diagonals_of(axis);
        CHECK(d.d05 == doctest::Approx(2.0));
        CHECK(d.d14 == doctest::Approx(2.0));
        CHECK(d.d23 == doctest::Approx(2.0));
    }
    SUBCASE("scaling the octahedron scales the development") {
        Octahedron3 big = axis;
        for (auto& v : big.vertices) v = v * 3.5;
        const NaturalDevelopment dev = develop(axis);
        const NaturalDevelopment dev_big = develop(big);
        for (int e = 0; e < 12; ++e)
            CHECK(dev_big.length(e) == doctest::Approx(3.5 * dev.length(e)).epsilon(1e-14));
    }
    SUBCASE("sheared octahedron matches direct distance computation") {
        Octahedron3 sheared = axis;
        for (auto& v : sheared.vertices) v = {v.x + v.y, v.y, v.z};
        const NaturalDevelopment dev = develop(sheared);
        for (const auto& [i, j] : cb::kEdges)
            CHECK(dev.length(i, j) ==
                  doctest::Approx(distance(sheared.vertices[i], sheared.vertices[j])));
    }
    SUBCASE("anisotropic scaling stretches the diagonals accordingly") {
        Octahedron3 stretched = axis;
        for (auto& v : stretched.vertices) v = {v.x, 2.0 * v.y, 3.0 * v.z};
        const DiagonalSet d = diagonals_of(stretched);
        CHECK(d.d05 == doctest::Approx(2.0));
        CHECK(d.d14 == doctest::Approx(4.0));
        CHECK(d.d23 == doctest::Approx(6.0));
    }
    SUBCASE("development is invariant under rigid motion") {
        // rotation by 90 degrees about z plus a translation
        Octahedron3 moved = axis;
        for (auto& v : moved.vertices) v = {-v.y + 0.3, v.x - 1.7, v.z + 0.5};
        const NaturalDevelopment a = develop(axis);
        const NaturalDevelopment b = develop(moved);
        for (int e = 0; e < 12; ++e)
            CHECK(b.length(e) == doctest::Approx(a.length(e)).epsilon(1e-12));
    }
}

TEST_CASE("octahedron invariants") {
    Tolerances tol;
    SUBCASE("axis octahedron is valid") {
        CHECK(validate_octahedron(axis_octahedron(), tol).empty());
    }
    SUBCASE("flattened vertex produces coplanar adjacent faces") {
        Octahedron3 bad = axis_octahedron();
        // project x2 into the plane of face {0,1,3}: x + y - z = 1
        bad.vertices[2] = {2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0};
        CHECK_FALSE(validate_octahedron(bad, tol).empty());
    }
}

TEST_CASE("convexity verdicts") {
    Tolerances tol;
    SUBCASE("axis octahedron is convex") {
        CHECK(is_convex(axis_octahedron(), tol).verdict == Convexity::Convex);
        CHECK(canonical_faces_are_hull_facets(axis_octahedron(), tol));
    }
    SUBCASE("vertex pushed inside the opposite pyramid is caught") {
        Octahedron3 dented = axis_octahedron();
        dented.vertices[2] = {0.2, 0.2, -0.2};  // interior of the hull of the others
        const ConvexityReport rep = is_convex(dented, tol);
        REQUIRE(rep.verdict == Convexity::Nonconvex);
        const auto& face = cb::kFaces[rep.face_index];
        CHECK((face[0] == 2 || face[1] == 2 || face[2] == 2));

        // the brute-force hull oracle agrees
        const auto facets = oracle::hull_facets_bruteforce(dented);
        const std::set<std::array<int, 3>> canonical(cb::kFaces.begin(), cb::kFaces.end());
        CHECK(facets != canonical);
    }
    SUBCASE("flattened vertex reports marginal") {
        Octahedron3 flat = axis_octahedron();
        flat.vertices[2] = {2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0};  // on plane of face {0,1,3}
        CHECK(is_convex(flat, tol).verdict == Convexity::Marginal);
    }
    SUBCASE("hull facet oracle agrees on jittered instances") {
        oracle::TestRng rng(57);
        const std::set<std::array<int, 3>> canonical(cb::kFaces.begin(), cb::kFaces.end());
        int checked = 0;
        for (int trial = 0; trial < 60; ++trial) {
            Octahedron3 oct = axis_octahedron();
            for (auto& v : oct.vertices)
                v += {rng.uniform(-0.35, 0.35), rng.uniform(-0.35, 0.35), rng.uniform(-0.35, 0.35)};
            if (!validate_octahedron(oct, tol).empty()) continue;
            const bool lib_convex = is_convex(oct, tol).verdict == Convexity::Convex;
            const bool oracle_convex = oracle::hull_facets_bruteforce(oct, 1e-9) == canonical;
            CHECK(lib_convex == oracle_convex);
            ++checked;
        }
        CHECK(checked > 30);
    }
}

TEST_CASE("assemble_sdm") {
    SUBCASE("regular development with sqrt(2) diagonals") {
        const auto val = validate_development(regular_raw());
        REQUIRE(val.ok);
        const DiagonalSet diag{std::sqrt(2.0), std::sqrt(2.0), std::sqrt(2.0)};
        const SquaredDistanceMatrix m = assemble_sdm(*val.development, diag);
        CHECK(m.check_invariants().empty());
        int ones = 0, twos = 0;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) {
                if (m.at(i, j) == doctest::Approx(1.0)) ++ones;
                if (m.at(i, j) == doctest::Approx(2.0)) ++twos;
            }
        CHECK(ones == 12);
        CHECK(twos == 3);
    }
    SUBCASE("round-trip through coordinates") {
        oracle::TestRng rng(61);
        Tolerances tol;
        Octahedron3 oct = axis_octahedron();
        for (auto& v : oct.vertices)
            v += {rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2)};
        REQUIRE(validate_octahedron(oct, tol).empty());
        const SquaredDistanceMatrix m = assemble_sdm(develop(oct), diagonals_of(oct));
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                CHECK(m.at(i, j) ==
                      doctest::Approx(distance_sq(oct.vertices[i], oct.vertices[j])).epsilon(1e-13));
        // and the assembled matrix passes the embeddability conditions
        const MengerReport rep = menger_conditions(m, tol, develop(oct).scale());
        for (double r : rep.equality_residuals) CHECK(std::abs(r) < 1e-10);
    }
    SUBCASE("relabeling permutes edge lengths consistently") {
        Octahedron3 oct = axis_octahedron();
        oct.vertices[0] = {1.3, 0.1, -0.05};
        oct.vertices[3] = {0.2, -0.1, -1.4};
        const NaturalDevelopment dev = develop(oct);
        const auto& perm = cb::octahedral_symmetries()[17];
        const NaturalDevelopment relab = dev.relabeled(perm);
        for (const auto& [i, j] : cb::kEdges)
            CHECK(relab.length(i, j) == doctest::Approx(dev.length(perm[i], perm[j])));
    }
}
