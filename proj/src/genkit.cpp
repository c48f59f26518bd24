#include "octaffine/genkit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace octa {

namespace {

// splitmix64; keeps generation independent of the standard library's
// distribution implementations.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    double uniform_sym(double amp) { return uniform(-amp, amp); }
};

Mat3 random_rotation(Rng& rng) {
    // Uniform unit quaternion (Shoemake).
    const double u1 = rng.uniform01();
    const double u2 = rng.uniform01();
    const double u3 = rng.uniform01();
    constexpr double tau = 2.0 * std::numbers::pi;
    const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    const double qx = a * std::sin(tau * u2);
    const double qy = a * std::cos(tau * u2);
    const double qz = b * std::sin(tau * u3);
    const double qw = b * std::cos(tau * u3);

    Mat3 r;
    r.m[0] = {1 - 2 * (qy * qy + qz * qz), 2 * (qx * qy - qz * qw), 2 * (qx * qz + qy * qw)};
    r.m[1] = {2 * (qx * qy + qz * qw), 1 - 2 * (qx * qx + qz * qz), 2 * (qy * qz - qx * qw)};
    r.m[2] = {2 * (qx * qz - qy * qw), 2 * (qy * qz + qx * qw), 1 - 2 * (qx * qx + qy * qy)};
    return r;
}

const std::array<Vec3, 6> kAxisVertices{{{1, 0, 0},   // x0
                                         {0, 1, 0},   // x1
                                         {0, 0, 1},   // x2
                                         {0, 0, -1},  // x3
                                         {0, -1, 0},  // x4
                                         {-1, 0, 0}}}; // x5

}  // namespace

Octahedron3 random_convex_octahedron(const GenConfig& cfg) {
    if (!(cfg.noise >= 0.0 && cfg.noise < 1.0))
        throw std::invalid_argument("noise must lie in [0,1)");
    Rng rng(cfg.seed * 0x9e3779b97f4a7c15ULL + 0x02468aceb13579bdULL);
    Tolerances tol;

    for (int attempt = 0; attempt < cfg.max_rejections; ++attempt) {
        const Mat3 rot = random_rotation(rng);
        Octahedron3 oct;
        for (int i = 0; i < 6; ++i) {
            const Vec3 jitter{rng.uniform_sym(cfg.noise), rng.uniform_sym(cfg.noise),
                              rng.uniform_sym(cfg.noise)};
            oct.vertices[i] = rot * (kAxisVertices[i] + jitter);
        }
        if (!validate_octahedron(oct, tol).empty()) continue;
        if (is_convex(oct, tol).verdict != Convexity::Convex) continue;
        if (!canonical_faces_are_hull_facets(oct, tol)) continue;
        return oct;
    }
    throw std::runtime_error("random_convex_octahedron: rejection budget exhausted");
}

AffineMap random_affine(const GenConfig& cfg) {
    if (!(cfg.det_lo > 0.0 && cfg.det_hi >= cfg.det_lo))
        throw std::invalid_argument("empty determinant range");
    Rng rng(cfg.seed * 0xd1342543de82ef95ULL + 0x5851f42d4c957f2dULL);

    // Build from an SVD-style factorization so the determinant and condition
    // bounds hold by construction. Singular values are log-uniform within a
    // band whose width respects cond_max, then rescaled to hit the target
    // |det|; the rescale leaves the condition number unchanged.
    const double target_det = std::exp(rng.uniform(std::log(cfg.det_lo), std::log(cfg.det_hi)));

    AffineMap map;
    if (cfg.cond_max <= 1.0) {
        // Degenerate band: pure scaling.
        const double c = std::cbrt(target_det);
        map.linear = Mat3::identity() * c;
    } else {
        const double half_log = 0.5 * std::log(std::min(cfg.cond_max, 32.0));
        double s[3];
        for (double& x : s) x = std::exp(rng.uniform(-half_log, half_log));
        const double rescale = std::cbrt(target_det / (s[0] * s[1] * s[2]));
        for (double& x : s) x *= rescale;

        const Mat3 rot_l = random_rotation(rng);
        const Mat3 rot_r = random_rotation(rng);
        Mat3 diag{};
        diag.m[0][0] = s[0];
        diag.m[1][1] = s[1];
        diag.m[2][2] = s[2];
        map.linear = rot_l * diag * rot_r;
        if (rng.uniform01() < 0.5) {
            // Flip orientation; alpha = det^2 is blind to the sign.
            for (int r = 0; r < 3; ++r) map.linear.m[r][0] = -map.linear.m[r][0];
        }
    }
    map.translation = {rng.uniform_sym(cfg.translation_amp), rng.uniform_sym(cfg.translation_amp),
                       rng.uniform_sym(cfg.translation_amp)};
    map.det = map.linear.det();
    return map;
}

NaturalDevelopment perturb_development(const NaturalDevelopment& dev, int edge_idx,
                                       double factor) {
    if (edge_idx < 0 || edge_idx >= combinatorics::kNumEdges)
        throw std::out_of_range("edge index out of range");
    std::array<double, 12> lengths = dev.lengths();
    lengths[edge_idx] *= factor;
    NaturalDevelopment out(lengths);
    const auto issues = check_development(out);
    if (!issues.empty())
        throw std::invalid_argument("perturbed development is invalid: " + issues.front());
    return out;
}

}  // namespace octa
