#include "octaffine/affine_decision.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace octa {

namespace cb = combinatorics;

Octahedron3 apply(const AffineMap& map, const Octahedron3& oct) {
    Octahedron3 out;
    for (int i = 0; i < 6; ++i) out.vertices[i] = map.apply(oct.vertices[i]);
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Equivalent: return "equivalent";
        case Verdict::NotEquivalent: return "not_equivalent";
        case Verdict::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

MapFit recover_affine_map(const EmbeddingResult& emb_a, const EmbeddingResult& emb_b,
                          const Tolerances& tol) {
    const auto& p = emb_a.points;
    const auto& q = emb_b.points;

    const Mat3 da = Mat3::from_columns(p[1] - p[0], p[2] - p[0], p[3] - p[0]);
    const Mat3 db = Mat3::from_columns(q[1] - q[0], q[2] - q[0], q[3] - q[0]);

    double unit_a = 0.0, unit_b = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            unit_a += distance_sq(p[i], p[j]);
            unit_b += distance_sq(q[i], q[j]);
        }
    unit_a = std::sqrt(unit_a / 15.0);
    unit_b = std::sqrt(unit_b / 15.0);

    const double det_a = da.det();
    if (std::abs(det_a) / (unit_a * unit_a * unit_a) <= tol.eps_geom)
        throw std::domain_error("recover_affine_map: degenerate base tetrahedron");

    MapFit fit;
    fit.map.linear = db * da.inverse();
    fit.map.translation = q[0] - fit.map.linear * p[0];
    fit.map.det = fit.map.linear.det();

    double worst = 0.0;
    for (int i = 4; i <= 5; ++i)
        worst = std::max(worst, (fit.map.apply(p[i]) - q[i]).norm() / unit_b);
    fit.residual = worst;
    return fit;
}

Decision decide(const NaturalDevelopment& dev_a, const NaturalDevelopment& dev_b,
                const Tolerances& tol) {
    Decision d;
    d.recon_a = reconstruct(dev_a, tol);
    d.recon_b = reconstruct(dev_b, tol);

    const bool a_unique = d.recon_a.status == ReconStatus::Unique;
    const bool b_unique = d.recon_b.status == ReconStatus::Unique;
    if (!a_unique || !b_unique) {
        const bool a_none = d.recon_a.status == ReconStatus::None;
        const bool b_none = d.recon_b.status == ReconStatus::None;
        if ((a_none && b_unique) || (b_none && a_unique)) {
            d.verdict = Verdict::NotEquivalent;
            d.diagnostic = std::string("development ") + (a_none ? "A" : "B") +
                           " admits no convex realization";
        } else {
            d.verdict = Verdict::Indeterminate;
            d.diagnostic = "reconstruction did not yield a unique convex realization on "
                           "either side";
        }
        return d;
    }

    const Group5Report g5 =
        group5(dev_a, d.recon_a.diagonals, dev_b, d.recon_b.diagonals, tol);
    d.group5 = g5;
    d.alpha_hat = g5.alpha_hat;

    if (!g5.signs_ok) {
        d.verdict = Verdict::NotEquivalent;
        d.diagnostic = "an edge tetrahedron determinant has the wrong sign";
        return d;
    }
    if (g5.spread <= tol.alpha_yes) {
        const MapFit fit = recover_affine_map(d.recon_a.embedding, d.recon_b.embedding, tol);
        d.map_residual = fit.residual;
        if (fit.residual <= tol.eps_rel) {
            d.verdict = Verdict::Equivalent;
        } else {
            d.verdict = Verdict::Indeterminate;
            d.diagnostic = "ratio test passed but the recovered map misses vertices 4/5";
        }
        return d;
    }
    if (g5.spread >= tol.alpha_no) {
        d.verdict = Verdict::NotEquivalent;
        return d;
    }
    d.verdict = Verdict::Indeterminate;
    d.diagnostic = "ratio spread falls in the gray band between alpha_yes and alpha_no";
    return d;
}

namespace {

double diagonal_entry(const DiagonalSet& diag, int i, int j) {
    const int lo = std::min(i, j), hi = std::max(i, j);
    if (lo == 0 && hi == 5) return diag.d05;
    if (lo == 1 && hi == 4) return diag.d14;
    if (lo == 2 && hi == 3) return diag.d23;
    throw std::invalid_argument("not an antipodal pair");
}

}  // namespace

std::vector<LabelingCandidate> align_labelings(const NaturalDevelopment& dev_a,
                                               const NaturalDevelopment& dev_b,
                                               const Tolerances& tol) {
    const ReconstructionResult ra = reconstruct(dev_a, tol);
    const ReconstructionResult rb = reconstruct(dev_b, tol);
    if (ra.status != ReconStatus::Unique || rb.status != ReconStatus::Unique) return {};

    std::vector<LabelingCandidate> out;
    for (const auto& perm : cb::octahedral_symmetries()) {
        const NaturalDevelopment dev_bp = dev_b.relabeled(perm);
        DiagonalSet diag_bp;
        diag_bp.d05 = diagonal_entry(rb.diagonals, perm[0], perm[5]);
        diag_bp.d14 = diagonal_entry(rb.diagonals, perm[1], perm[4]);
        diag_bp.d23 = diagonal_entry(rb.diagonals, perm[2], perm[3]);
        const Group5Report g5 = group5(dev_a, ra.diagonals, dev_bp, diag_bp, tol);
        if (g5.signs_ok && g5.spread < tol.alpha_no)
            out.push_back({perm, g5.spread});
    }
    std::sort(out.begin(), out.end(),
              [](const LabelingCandidate& a, const LabelingCandidate& b) {
                  return a.spread < b.spread;
              });
    return out;
}

}  // namespace octa
