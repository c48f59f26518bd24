#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "octaffine/cm_core.hpp"
#include "octaffine/octa_model.hpp"
#include "oracles.hpp"

using namespace octa;
namespace cb = combinatorics;

namespace {

SquaredDistanceMatrix all_equal_matrix(int n, double d) {
    SquaredDistanceMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m.set(i, j, d * d);
    return m;
}

SquaredDistanceMatrix regular_octahedron_matrix() {
    SquaredDistanceMatrix m(6);
    for (const auto& [i, j] : cb::kEdges) m.set(i, j, 1.0);
    for (const auto& [i, j] : cb::kAntipodalPairs) m.set(i, j, 2.0);
    return m;
}

std::array<Vec3, 6> random_six_points(oracle::TestRng& rng) {
    std::array<Vec3, 6> pts;
    for (auto& p : pts)
        p = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    return pts;
}

}  // namespace

TEST_CASE("cm determinant fixed points") {
    SUBCASE("two points at distance 2") {
        auto m = all_equal_matrix(2, 2.0);
        const std::array<int, 2> idx{0, 1};
        CHECK(cm_determinant(idx, m).value == doctest::Approx(8.0).epsilon(1e-12));
    }
    SUBCASE("three points pairwise 1") {
        auto m = all_equal_matrix(3, 1.0);
        const std::array<int, 3> idx{0, 1, 2};
        CHECK(cm_determinant(idx, m).value == doctest::Approx(-3.0).epsilon(1e-12));
    }
    SUBCASE("four points pairwise 1") {
        auto m = all_equal_matrix(4, 1.0);
        const std::array<int, 4> idx{0, 1, 2, 3};
        CHECK(cm_determinant(idx, m).value == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("agreement with the naive expansion") {
        oracle::TestRng rng(7);
        auto pts = random_six_points(rng);
        auto m = SquaredDistanceMatrix::from_points(pts);
        const std::vector<int> subset{0, 2, 3, 5};
        const std::array<int, 4> idx{0, 2, 3, 5};
        CHECK(cm_determinant(idx, m).value ==
              doctest::Approx(oracle::naive_cm(subset, m)).epsilon(1e-11));
    }
}

TEST_CASE("cm determinant argument checking") {
    auto m = all_equal_matrix(4, 1.0);
    const std::array<int, 2> out_of_range{0, 7};
    CHECK_THROWS_AS((void)cm_determinant(out_of_range, m), std::out_of_range);
    const std::array<int, 3> duplicate{0, 1, 1};
    CHECK_THROWS_AS((void)cm_determinant(duplicate, m), std::invalid_argument);
    const std::array<int, 1> too_small{0};
    CHECK_THROWS_AS((void)cm_determinant(too_small, m), std::invalid_argument);
}

TEST_CASE("cm normalization and units") {
    auto m = all_equal_matrix(3, 2.0);
    const std::array<int, 3> idx{0, 1, 2};
    const CmValue v = cm_determinant(idx, m, 4.0);
    CHECK(v.order == 2);
    CHECK(v.normalized == doctest::Approx(v.value / 16.0).epsilon(1e-15));
    CHECK((v.normalized > 0) == (v.value > 0));
}

TEST_CASE("cm of two points equals twice the squared distance") {
    for (double d : {0.1, 1.0, 2.0, 17.5, 1e-4, 1e4}) {
        auto m = all_equal_matrix(2, d);
        const std::array<int, 2> idx{0, 1};
        const double got = cm_determinant(idx, m).value;
        CHECK(got == doctest::Approx(2.0 * d * d).epsilon(1e-14));
    }
}

TEST_CASE("simplex volumes from distances") {
    SUBCASE("equilateral triangle area^2 = 3/16") {
        auto m = all_equal_matrix(3, 1.0);
        const std::array<int, 3> idx{0, 1, 2};
        const VolumeSq v = simplex_volume_sq(idx, m);
        CHECK_FALSE(v.sign_violated);
        CHECK(v.value == doctest::Approx(3.0 / 16.0).epsilon(1e-12));
        CHECK(v.value == doctest::Approx(oracle::heron_area_sq(1, 1, 1)).epsilon(1e-12));
    }
    SUBCASE("collinear triangle has zero area") {
        SquaredDistanceMatrix m(3);
        m.set(0, 1, 4.0);  // sides 2, 1, 1
        m.set(0, 2, 1.0);
        m.set(1, 2, 1.0);
        const std::array<int, 3> idx{0, 1, 2};
        const VolumeSq v = simplex_volume_sq(idx, m, 1e-9);
        CHECK_FALSE(v.sign_violated);
        CHECK(v.value == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("regular tetrahedron vol^2 = 1/72") {
        auto m = all_equal_matrix(4, 1.0);
        const std::array<int, 4> idx{0, 1, 2, 3};
        const VolumeSq v = simplex_volume_sq(idx, m);
        CHECK_FALSE(v.sign_violated);
        CHECK(v.value == doctest::Approx(1.0 / 72.0).epsilon(1e-12));
    }
    SUBCASE("impossible triangle reports the sign violation") {
        SquaredDistanceMatrix m(3);
        m.set(0, 1, 9.0);  // sides 3, 1, 1: no such triangle
        m.set(0, 2, 1.0);
        m.set(1, 2, 1.0);
        const std::array<int, 3> idx{0, 1, 2};
        const VolumeSq v = simplex_volume_sq(idx, m, 1e-9);
        CHECK(v.sign_violated);
        CHECK(v.relative_excess > 0.0);
    }
    SUBCASE("random simplices agree with the Gram oracle") {
        oracle::TestRng rng(11);
        for (int n_pts = 3; n_pts <= 5; ++n_pts) {
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<Vec3> pts(n_pts);
                for (auto& p : pts)
                    p = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
                SquaredDistanceMatrix m(n_pts);
                for (int i = 0; i < n_pts; ++i)
                    for (int j = i + 1; j < n_pts; ++j) m.set(i, j, distance_sq(pts[i], pts[j]));
                std::vector<int> subset(n_pts);
                for (int i = 0; i < n_pts; ++i) subset[i] = i;
                const VolumeSq got = simplex_volume_sq(subset, m);
                const double want = oracle::gram_volume_sq(pts);
                // five points in R^3 span zero 4-volume, so allow an
                // absolute floor alongside the relative bound
                CHECK(std::abs(got.value - want) <= 1e-10 * std::max(1.0, want));
            }
        }
    }
}

TEST_CASE("cm homogeneity and permutation invariance") {
    // A generic semimetric (not realizable by points) keeps every order
    // nondegenerate, including the six-point determinant.
    oracle::TestRng rng(23);
    SquaredDistanceMatrix m(6);
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) m.set(i, j, rng.uniform(0.5, 2.0));

    SUBCASE("scaling squared distances by lambda scales cm of k+1 points by lambda^k") {
        for (double lambda : {0.37, 2.0, 9.42}) {
            SquaredDistanceMatrix scaled(6);
            for (int i = 0; i < 6; ++i)
                for (int j = i + 1; j < 6; ++j) scaled.set(i, j, lambda * m.at(i, j));
            std::vector<int> subset;
            for (int k = 1; k <= 5; ++k) {
                subset.clear();
                for (int i = 0; i <= k; ++i) subset.push_back(i);
                const double base = cm_determinant(subset, m).value;
                const double got = cm_determinant(subset, scaled).value;
                CHECK(got == doctest::Approx(std::pow(lambda, k) * base).epsilon(1e-11));
            }
        }
    }
    SUBCASE("subset order does not matter") {
        const std::array<int, 5> a{0, 1, 2, 3, 4};
        const std::array<int, 5> b{3, 0, 4, 1, 2};
        CHECK(cm_determinant(a, m).value == doctest::Approx(cm_determinant(b, m).value).epsilon(1e-12));
    }
}

TEST_CASE("slot quadratic reproduces the determinant") {
    oracle::TestRng rng(31);
    auto pts = random_six_points(rng);
    auto m = SquaredDistanceMatrix::from_points(pts);
    const std::array<int, 5> subset{0, 1, 2, 3, 4};
    const SlotQuadratic q = cm_slot_quadratic(subset, m, 2, 3);
    for (double t : {0.0, 0.5, 1.0, 2.7, 11.0}) {
        SquaredDistanceMatrix mt = m;
        mt.set(2, 3, t);
        const double want = cm_determinant(subset, mt).value;
        CHECK(q.eval(t) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("menger conditions") {
    Tolerances tol;
    SUBCASE("regular octahedron distances satisfy everything") {
        auto m = regular_octahedron_matrix();
        const MengerReport rep = menger_conditions(m, tol);
        for (double margin : rep.strict_margins) CHECK(margin > 0.0);
        for (double res : rep.equality_residuals) CHECK(std::abs(res) < 1e-12);
        CHECK(rep.satisfied(tol));
    }
    SUBCASE("six equidistant points do not embed in R^3") {
        auto m = all_equal_matrix(6, 1.0);
        const MengerReport rep = menger_conditions(m, tol);
        // The six-point determinant must be nonzero; cross-check the value
        // against the naive expansion rather than trusting either path.
        const std::vector<int> all{0, 1, 2, 3, 4, 5};
        const double want = oracle::naive_cm(all, m);
        CHECK(std::abs(want) > 1.0);
        CHECK(rep.equality_residuals[2] == doctest::Approx(want).epsilon(1e-12));
        CHECK_FALSE(rep.satisfied(tol));
    }
    SUBCASE("coplanar points fail the base-tetrahedron margin") {
        std::array<Vec3, 6> pts;
        for (int i = 0; i < 6; ++i) {
            const double ang = 2.0 * 3.14159265358979323846 * i / 6.0;
            pts[i] = {std::cos(ang), std::sin(ang), 0.0};
        }
        auto m = SquaredDistanceMatrix::from_points(pts);
        const MengerReport rep = menger_conditions(m, tol);
        CHECK(rep.strict_margins[2] < 1e-12);
        CHECK_FALSE(rep.satisfied(tol));
    }
}

TEST_CASE("embedding six points") {
    Tolerances tol;
    SUBCASE("regular octahedron distances embed with tiny error") {
        auto m = regular_octahedron_matrix();
        const EmbedOutcome out = embed_six_points(m, tol);
        REQUIRE(out.status == EmbedStatus::Ok);
        CHECK(out.result.max_distance_error < 1e-10);
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                CHECK(distance(out.result.points[i], out.result.points[j]) ==
                      doctest::Approx(std::sqrt(m.at(i, j))).epsilon(1e-10));
    }
    SUBCASE("round-trip on random point sets") {
        oracle::TestRng rng(41);
        for (int trial = 0; trial < 25; ++trial) {
            auto pts = random_six_points(rng);
            auto m = SquaredDistanceMatrix::from_points(pts);
            const EmbedOutcome out = embed_six_points(m, tol);
            if (out.status != EmbedStatus::Ok) continue;  // wildly degenerate draws
            auto m2 = SquaredDistanceMatrix::from_points(out.result.points);
            for (int i = 0; i < 6; ++i)
                for (int j = i + 1; j < 6; ++j)
                    CHECK(std::sqrt(m2.at(i, j)) ==
                          doctest::Approx(std::sqrt(m.at(i, j))).epsilon(1e-9));
        }
    }
    SUBCASE("chirality convention is fixed") {
        oracle::TestRng rng(43);
        auto pts = random_six_points(rng);
        auto m = SquaredDistanceMatrix::from_points(pts);
        const EmbedOutcome out = embed_six_points(m, tol);
        REQUIRE(out.status == EmbedStatus::Ok);
        const auto& p = out.result.points;
        CHECK(p[0].norm() == doctest::Approx(0.0));
        CHECK(p[1].y == doctest::Approx(0.0));
        CHECK(p[1].z == doctest::Approx(0.0));
        CHECK(p[1].x > 0.0);
        CHECK(p[2].z == doctest::Approx(0.0));
        CHECK(p[2].y > 0.0);
        CHECK(p[3].z > 0.0);
    }
    SUBCASE("all-equal distances are rejected") {
        auto m = all_equal_matrix(6, 1.0);
        const EmbedOutcome out = embed_six_points(m, tol);
        CHECK(out.status == EmbedStatus::InconsistentInput);
    }
}
