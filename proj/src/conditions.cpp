#include "octaffine/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace octa {

namespace cb = combinatorics;

Group1Report group1(const NaturalDevelopment& dev, const DiagonalSet& diag, const Tolerances& tol) {
    const SquaredDistanceMatrix m = assemble_sdm(dev, diag);
    const MengerReport menger = menger_conditions(m, tol, dev.scale());
    Group1Report rep;
    rep.eq6_margins[0] = menger.strict_margins[0];
    rep.eq6_margins[1] = menger.strict_margins[1];
    rep.eq7_margin = menger.strict_margins[2];
    rep.eq8_res = menger.equality_residuals[0];
    rep.eq9_res = menger.equality_residuals[1];
    rep.eq10_res = menger.equality_residuals[2];
    return rep;
}

namespace {

// The three apex pairs for a face {a,b,c}: antipodes of two face vertices.
// Enumerated as (a',b'), (a',c'), (b',c') and stored sorted.
std::array<std::pair<int, int>, 3> apex_pairs_of_face(const std::array<int, 3>& f) {
    const int pa = cb::antipode(f[0]);
    const int pb = cb::antipode(f[1]);
    const int pc = cb::antipode(f[2]);
    auto sorted = [](int x, int y) { return std::make_pair(std::min(x, y), std::max(x, y)); };
    return {sorted(pa, pb), sorted(pa, pc), sorted(pb, pc)};
}

Group2Report group2_impl(const NaturalDevelopment& dev, const DiagonalSet& diag,
                         const Tolerances& tol, bool displayed_variant) {
    const SquaredDistanceMatrix m = assemble_sdm(dev, diag);
    const double scale = dev.scale();
    const double scale4 = scale * scale * scale * scale;

    Group2Report rep;
    int out = 0;
    for (int fi = 0; fi < cb::kNumFaces; ++fi) {
        const auto& f = cb::kFaces[fi];
        for (const auto& [p, q] : apex_pairs_of_face(f)) {
            const std::array<int, 5> subset{f[0], f[1], f[2], p, q};
            const double t_measured = m.at(p, q);  // always an edge entry

            SlotQuadratic quad;
            if (!displayed_variant) {
                // Quadratic in t = |p-q|^2; the t^2 coefficient is -cm(face).
                quad = cm_slot_quadratic(subset, m, p, q);
            } else {
                // Alternative arrangement: slot at the antipodal pair of the
                // first apex, still compared against the measured |p-q|^4.
                quad = cm_slot_quadratic(subset, m, p, cb::antipode(p));
            }
            if (!(quad.a / (scale * scale) > tol.eps_geom))
                throw std::domain_error("group2: degenerate supporting triangle (A <= 0)");

            Group2Entry e;
            e.face_index = fi;
            e.face = f;
            e.apexes = {p, q};
            e.margin = (quad.c - quad.a * t_measured * t_measured) / scale4;
            rep.entries[out++] = e;
        }
    }
    return rep;
}

}  // namespace

Group2Report group2(const NaturalDevelopment& dev, const DiagonalSet& diag, const Tolerances& tol) {
    return group2_impl(dev, diag, tol, false);
}

Group2Report group2_displayed_variant(const NaturalDevelopment& dev, const DiagonalSet& diag,
                                      const Tolerances& tol) {
    return group2_impl(dev, diag, tol, true);
}

Group5Report group5(const NaturalDevelopment& dev_a, const DiagonalSet& diag_a,
                    const NaturalDevelopment& dev_b, const DiagonalSet& diag_b,
                    const Tolerances& tol) {
    const SquaredDistanceMatrix ma = assemble_sdm(dev_a, diag_a);
    const SquaredDistanceMatrix mb = assemble_sdm(dev_b, diag_b);
    const double scale_a = dev_a.scale();
    const double scale_b = dev_b.scale();

    Group5Report rep;
    rep.signs_ok = true;
    for (int e = 0; e < cb::kNumEdges; ++e) {
        const auto [i0, i1] = cb::kEdges[e];
        const auto [i2, i3] = cb::edge_apexes(i0, i1);
        const std::array<int, 4> tet{i0, i1, i2, i3};
        const CmValue ca = cm_determinant(tet, ma, scale_a);
        const CmValue cb_ = cm_determinant(tet, mb, scale_b);
        if (std::abs(ca.normalized) <= tol.eps_geom)
            throw std::domain_error("group5: degenerate edge tetrahedron in first instance");
        if (ca.value <= 0.0 || cb_.value <= 0.0) rep.signs_ok = false;
        rep.ratios[e] = cb_.value / ca.value;
    }

    std::array<double, 12> sorted = rep.ratios;
    std::sort(sorted.begin(), sorted.end());
    rep.alpha_hat = 0.5 * (sorted[5] + sorted[6]);

    double spread = 0.0;
    for (double r : rep.ratios) spread = std::max(spread, std::abs(r / rep.alpha_hat - 1.0));
    rep.spread = spread;
    return rep;
}

}  // namespace octa
