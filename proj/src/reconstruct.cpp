#include "octaffine/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace octa {

namespace cb = combinatorics;

namespace {

constexpr std::array<int, 4> kBase{0, 1, 2, 3};
constexpr std::array<int, 5> kFive4{0, 1, 2, 3, 4};  // carries delta_14
constexpr std::array<int, 5> kFive5{0, 1, 2, 3, 5};  // carries delta_05
constexpr std::array<int, 6> kAll{0, 1, 2, 3, 4, 5};

struct QuadRoots {
    int count = 0;
    double lo = 0.0, hi = 0.0;
};

// Numerically stable real roots of a x^2 + b x + c, sorted ascending.
// A vanishing leading coefficient degrades to the linear case.
QuadRoots solve_quadratic(double a, double b, double c) {
    QuadRoots r;
    const double mag = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (mag == 0.0) return r;
    if (std::abs(a) < 1e-14 * mag) {
        if (b == 0.0) return r;
        r.count = 1;
        r.lo = r.hi = -c / b;
        return r;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return r;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    double x0, x1;
    if (q != 0.0) {
        x0 = q / a;
        x1 = c / q;
    } else {
        x0 = 0.0;
        x1 = -b / a;
    }
    r.count = disc == 0.0 ? 1 : 2;
    r.lo = std::min(x0, x1);
    r.hi = std::max(x0, x1);
    return r;
}

// Working state: a normalized squared-distance matrix whose edge entries are
// fixed and whose three diagonal slots are overwritten per evaluation.
class ClosureSystem {
  public:
    explicit ClosureSystem(const NaturalDevelopment& dev) : m_(6) {
        const double scale = dev.scale();
        for (const auto& [i, j] : cb::kEdges) {
            const double l = dev.length(i, j);
            m_.set(i, j, l * l / scale);
        }
        m_.set(0, 5, 1.0);
        m_.set(1, 4, 1.0);
        m_.set(2, 3, 1.0);
    }

    void set_u(double u) { m_.set(2, 3, u); }
    void set_v(double v) { m_.set(1, 4, v); }
    void set_w(double w) { m_.set(0, 5, w); }

    // cm(x0..x3) as a quadratic in u; the feasibility interval generator.
    SlotQuadratic base_quadratic() {
        return cm_slot_quadratic(kBase, m_, 2, 3);
    }

    // Five-point closure as a quadratic in v at the current u.
    SlotQuadratic quad_v() { return cm_slot_quadratic(kFive4, m_, 1, 4); }
    // Five-point closure as a quadratic in w at the current u.
    SlotQuadratic quad_w() { return cm_slot_quadratic(kFive5, m_, 0, 5); }

    double f8() { return cm_determinant(kFive4, m_, 1.0).value; }
    double f9() { return cm_determinant(kFive5, m_, 1.0).value; }
    double f10() { return cm_determinant(kAll, m_, 1.0).value; }

    SlotQuadratic quad(std::span<const int> subset, int i, int j) {
        return cm_slot_quadratic(subset, m_, i, j);
    }

  private:
    SquaredDistanceMatrix m_;
};

struct Candidate {
    double u = 0.0, v = 0.0, w = 0.0;
    double residual = 0.0;
};

// Damped Newton on (f8, f9, f10) over (u, v, w). Every equation is exactly
// quadratic in each variable, so the Jacobian comes from the slot-quadratic
// coefficients rather than finite differences.
std::optional<Candidate> newton_polish(ClosureSystem& sys, double u, double v, double w,
                                       const Tolerances& tol) {
    const double target = 1e-13;  // stop improving below this
    const double accept = 1e-11;  // still a root for downstream purposes
    double r[3];
    auto load = [&](double uu, double vv, double ww) {
        sys.set_u(uu);
        sys.set_v(vv);
        sys.set_w(ww);
        r[0] = sys.f8();
        r[1] = sys.f9();
        r[2] = sys.f10();
        return std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
    };

    double rnorm = load(u, v, w);
    for (int it = 0; it < tol.newton_max && rnorm > target; ++it) {
        Mat3 jac;
        jac.m[0][0] = sys.quad(kFive4, 2, 3).derivative(u);
        jac.m[0][1] = sys.quad(kFive4, 1, 4).derivative(v);
        jac.m[0][2] = 0.0;
        jac.m[1][0] = sys.quad(kFive5, 2, 3).derivative(u);
        jac.m[1][1] = 0.0;
        jac.m[1][2] = sys.quad(kFive5, 0, 5).derivative(w);
        jac.m[2][0] = sys.quad(kAll, 2, 3).derivative(u);
        jac.m[2][1] = sys.quad(kAll, 1, 4).derivative(v);
        jac.m[2][2] = sys.quad(kAll, 0, 5).derivative(w);

        Vec3 step;
        if (!solve3(jac, Vec3{-r[0], -r[1], -r[2]}, step)) break;
        if (!std::isfinite(step.x) || !std::isfinite(step.y) || !std::isfinite(step.z)) break;

        double lambda = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 12; ++bt, lambda *= 0.5) {
            const double nu = u + lambda * step.x;
            const double nv = v + lambda * step.y;
            const double nw = w + lambda * step.z;
            const double nn = load(nu, nv, nw);
            if (nn < rnorm) {
                u = nu;
                v = nv;
                w = nw;
                rnorm = nn;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    if (rnorm > accept) return std::nullopt;
    return Candidate{u, v, w, rnorm};
}

// Locates a sign change of a scalar function of u by bisection.
template <typename F>
std::optional<double> bisect(F&& f, double lo, double hi, double flo, double rel_tol) {
    for (int it = 0; it < 200 && (hi - lo) > rel_tol * std::max(std::abs(lo), std::abs(hi));
         ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto fm = f(mid);
        if (!fm.has_value()) return std::nullopt;
        if (*fm == 0.0) return mid;
        if ((*fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = *fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

namespace {

// State of one branch pair at a given u: the chosen v and w roots, the
// six-point residual G and its analytic derivative H = dG/du along the
// branch. The derivative exists because each closure equation is exactly
// quadratic in each squared diagonal: at a root of the v-quadratic,
// dv/du = -(df8/du)/(df8/dv), and likewise for w.
struct BranchSample {
    double v = 0.0, w = 0.0;
    double g = 0.0;
    double h = 0.0;
    bool valid = false;
    bool h_valid = false;
};

}  // namespace

std::vector<DiagonalSet> solve_diagonals(const NaturalDevelopment& dev, const Tolerances& tol) {
    const auto issues = check_development(dev);
    if (!issues.empty()) throw std::invalid_argument("solve_diagonals: " + issues.front());
    const double scale = dev.scale();

    ClosureSystem sys(dev);

    // Feasibility interval of u from the base-tetrahedron inequality.
    const SlotQuadratic q7 = sys.base_quadratic();
    const QuadRoots u_range = solve_quadratic(q7.a, q7.b, q7.c);
    std::vector<Candidate> accepted;
    if (u_range.count < 2) return {};
    const double u_lo = std::max(u_range.lo, 0.0);
    const double u_hi = u_range.hi;
    if (!(u_hi > u_lo)) return {};

    // branch index: bit 0 = upper v root, bit 1 = upper w root.
    auto sample_branch = [&](double u, int branch) -> BranchSample {
        BranchSample s;
        sys.set_u(u);
        const SlotQuadratic qv = sys.quad_v();
        const QuadRoots rv = solve_quadratic(qv.a, qv.b, qv.c);
        if (rv.count == 0) return s;
        const SlotQuadratic qw = sys.quad_w();
        const QuadRoots rw = solve_quadratic(qw.a, qw.b, qw.c);
        if (rw.count == 0) return s;
        s.v = (branch & 1) ? rv.hi : rv.lo;
        s.w = (branch & 2) ? rw.hi : rw.lo;
        sys.set_v(s.v);
        sys.set_w(s.w);
        s.g = sys.f10();
        s.valid = true;

        // dG/du along the branch. df/dv at a root is +-sqrt(disc), so it
        // vanishes only at branch boundaries.
        const double f8_v = qv.derivative(s.v);
        const double f9_w = qw.derivative(s.w);
        if (f8_v != 0.0 && f9_w != 0.0) {
            const double f8_u = sys.quad(kFive4, 2, 3).derivative(u);
            const double f9_u = sys.quad(kFive5, 2, 3).derivative(u);
            const double dv_du = -f8_u / f8_v;
            const double dw_du = -f9_u / f9_w;
            const double g_u = sys.quad(kAll, 2, 3).derivative(u);
            const double g_v = sys.quad(kAll, 1, 4).derivative(s.v);
            const double g_w = sys.quad(kAll, 0, 5).derivative(s.w);
            s.h = g_u + g_v * dv_du + g_w * dw_du;
            s.h_valid = std::isfinite(s.h);
        }
        return s;
    };

    // The convex solution is a fold of G along its branch (the branch
    // tangent is annihilated by the full Jacobian there), so G generically
    // touches zero without crossing. Roots are therefore located two ways:
    // plain sign changes of G, and sign changes of H whose refined extremum
    // brings |G| down to rounding level.
    std::vector<Candidate> seeds;          // go through the Newton polish
    std::vector<Candidate> exact_roots;    // accepted as-is (|G| at noise floor)
    const double fold_accept = 1e-14;

    const int n = tol.grid_samples;
    const double step = (u_hi - u_lo) / n;
    std::array<BranchSample, 4> prev{};
    std::array<double, 4> prev_u{};

    auto refine_g = [&](int br, double lo, double hi, double glo) -> std::optional<double> {
        return bisect(
            [&](double uu) -> std::optional<double> {
                const BranchSample s = sample_branch(uu, br);
                if (!s.valid) return std::nullopt;
                return s.g;
            },
            lo, hi, glo, tol.bisect_rel);
    };
    auto refine_h = [&](int br, double lo, double hi, double hlo) -> std::optional<double> {
        return bisect(
            [&](double uu) -> std::optional<double> {
                const BranchSample s = sample_branch(uu, br);
                if (!s.valid || !s.h_valid) return std::nullopt;
                return s.h;
            },
            lo, hi, hlo, tol.bisect_rel);
    };

    for (int i = 0; i < n; ++i) {
        const double u = u_lo + (i + 0.5) * step;
        for (int br = 0; br < 4; ++br) {
            const BranchSample s = sample_branch(u, br);
            const BranchSample& p = prev[br];
            if (s.valid && p.valid) {
                if (s.g != 0.0 && p.g != 0.0 && (s.g < 0.0) != (p.g < 0.0)) {
                    if (auto root = refine_g(br, prev_u[br], u, p.g)) {
                        const BranchSample at = sample_branch(*root, br);
                        if (at.valid) seeds.push_back({*root, at.v, at.w, std::abs(at.g)});
                    }
                }
                if (s.h_valid && p.h_valid && s.h != 0.0 && p.h != 0.0 &&
                    (s.h < 0.0) != (p.h < 0.0)) {
                    if (auto ext = refine_h(br, prev_u[br], u, p.h)) {
                        const BranchSample at = sample_branch(*ext, br);
                        if (at.valid && std::abs(at.g) <= fold_accept)
                            exact_roots.push_back({*ext, at.v, at.w, std::abs(at.g)});
                        else if (at.valid && std::abs(at.g) <= 1e-6)
                            seeds.push_back({*ext, at.v, at.w, std::abs(at.g)});
                    }
                }
            }
            prev[br] = s;
            prev_u[br] = u;
        }
    }

    for (const Candidate& c : exact_roots) {
        if (!(c.u > 0.0 && c.v > 0.0 && c.w > 0.0)) continue;
        if (!(q7.eval(c.u) > 0.0)) continue;
        accepted.push_back(c);
    }
    for (const Candidate& seed : seeds) {
        const auto polished = newton_polish(sys, seed.u, seed.v, seed.w, tol);
        if (!polished) continue;
        const Candidate c = *polished;
        if (!(c.u > 0.0 && c.v > 0.0 && c.w > 0.0)) continue;
        if (!(q7.eval(c.u) > 0.0)) continue;  // base tetrahedron must stay nondegenerate
        accepted.push_back(c);
    }

    // Dedupe triples closer than 1e-8 relative; keep ordering by u.
    std::sort(accepted.begin(), accepted.end(),
              [](const Candidate& a, const Candidate& b) { return a.u < b.u; });
    std::vector<DiagonalSet> out;
    auto close = [](double a, double b) {
        return std::abs(a - b) <= 1e-8 * std::max({std::abs(a), std::abs(b), 1e-300});
    };
    const Candidate* last = nullptr;
    for (const Candidate& c : accepted) {
        if (last && close(c.u, last->u) && close(c.v, last->v) && close(c.w, last->w)) continue;
        DiagonalSet d;
        d.d23 = std::sqrt(c.u * scale);
        d.d14 = std::sqrt(c.v * scale);
        d.d05 = std::sqrt(c.w * scale);
        out.push_back(d);
        last = &c;
    }
    return out;
}

ReconstructionResult reconstruct(const NaturalDevelopment& dev, const Tolerances& tol) {
    ReconstructionResult result;
    const std::vector<DiagonalSet> candidates = solve_diagonals(dev, tol);
    if (candidates.empty()) {
        result.diagnostic = "no positive diagonal triple solves the closure equations";
        return result;
    }

    struct Survivor {
        DiagonalSet diag;
        EmbeddingResult emb;
        Group1Report g1;
        Group2Report g2;
    };
    std::vector<Survivor> survivors;
    bool saw_marginal = false;
    for (const DiagonalSet& diag : candidates) {
        const Group1Report g1 = group1(dev, diag, tol);
        if (!g1.satisfied(tol)) continue;
        const Group2Report g2 = group2(dev, diag, tol);
        if (g2.any_marginal(tol)) saw_marginal = true;
        if (!g2.all_strictly_positive(tol)) continue;

        const EmbedOutcome emb = embed_six_points(assemble_sdm(dev, diag), tol);
        if (emb.status != EmbedStatus::Ok) continue;

        Octahedron3 oct{emb.result.points};
        if (!validate_octahedron(oct, tol).empty()) continue;
        if (is_convex(oct, tol).verdict != Convexity::Convex) continue;

        survivors.push_back({diag, emb.result, g1, g2});
    }

    result.candidates_found = static_cast<int>(survivors.size());
    if (survivors.empty()) {
        result.status = ReconStatus::None;
        result.diagnostic = saw_marginal
                                ? "candidates sit on the convexity boundary (marginal)"
                                : "all " + std::to_string(candidates.size()) +
                                      " algebraic candidates fail the convexity conditions";
        return result;
    }
    const Survivor& s = survivors.front();
    result.diagonals = s.diag;
    result.embedding = s.emb;
    result.group1 = s.g1;
    result.group2 = s.g2;
    if (survivors.size() == 1) {
        result.status = ReconStatus::Unique;
    } else {
        result.status = ReconStatus::Ambiguous;
        result.diagnostic = "multiple convex realizations survived; numerically suspect";
    }
    return result;
}

}  // namespace octa
