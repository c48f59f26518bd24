#pragma once

#include <array>
#include <optional>

#include "octaffine/octa_model.hpp"
#include "octaffine/tolerances.hpp"

namespace octa {

/// Embeddability conditions on one (development, diagonals) instance: two
/// strict triangle/segment margins, the strict base-tetrahedron margin and
/// the three five/six-point equality residuals. All dimensionless.
struct Group1Report {
    std::array<double, 2> eq6_margins{};
    double eq7_margin = 0.0;
    double eq8_res = 0.0;
    double eq9_res = 0.0;
    double eq10_res = 0.0;

    bool satisfied(const Tolerances& tol) const {
        return eq6_margins[0] > tol.eps_rel && eq6_margins[1] > tol.eps_rel &&
               eq7_margin > tol.eps_rel && std::abs(eq8_res) <= tol.eps_rel &&
               std::abs(eq9_res) <= tol.eps_rel && std::abs(eq10_res) <= tol.eps_rel;
    }
    double max_abs_residual() const {
        return std::max({std::abs(eq8_res), std::abs(eq9_res), std::abs(eq10_res)});
    }
};

/// One same-closed-halfspace margin: for the face and the two apexes of
/// adjacent faces, positive means the apexes lie strictly on one side of
/// the face plane.
struct Group2Entry {
    int face_index = -1;
    std::array<int, 3> face{};
    std::pair<int, int> apexes{};
    double margin = 0.0;
};

struct Group2Report {
    std::array<Group2Entry, 24> entries{};

    double min_margin() const {
        double m = entries[0].margin;
        for (const auto& e : entries) m = std::min(m, e.margin);
        return m;
    }
    bool all_strictly_positive(const Tolerances& tol) const {
        return min_margin() > tol.eps_geom;
    }
    bool any_marginal(const Tolerances& tol) const {
        for (const auto& e : entries)
            if (std::abs(e.margin) <= tol.eps_geom) return true;
        return false;
    }
};

/// Per-edge four-point determinant ratios between two instances; the common
/// ratio is the squared determinant of the affine map when one exists.
struct Group5Report {
    std::array<double, 12> ratios{};
    double alpha_hat = 0.0;
    double spread = 0.0;
    bool signs_ok = false;

    bool satisfied(const Tolerances& tol) const { return signs_ok && spread <= tol.alpha_yes; }
};

struct ConditionReport {
    Group1Report group1;
    Group2Report group2;
    std::optional<Group5Report> group5;
};

Group1Report group1(const NaturalDevelopment& dev, const DiagonalSet& diag, const Tolerances& tol);

Group2Report group2(const NaturalDevelopment& dev, const DiagonalSet& diag, const Tolerances& tol);

/// Same 24 inequalities evaluated in the alternative determinant arrangement
/// (quadratic slot at the antipodal pair of the first apex, complement over
/// the remaining points). Kept for diagnostics and cross-checking only; the
/// halfspace semantics of group2 are normative.
Group2Report group2_displayed_variant(const NaturalDevelopment& dev, const DiagonalSet& diag,
                                      const Tolerances& tol);

Group5Report group5(const NaturalDevelopment& dev_a, const DiagonalSet& diag_a,
                    const NaturalDevelopment& dev_b, const DiagonalSet& diag_b,
                    const Tolerances& tol);

}  // namespace octa
