#pragma once

#include <string>
#include <vector>

#include "octaffine/conditions.hpp"
#include "octaffine/octa_model.hpp"

namespace octa {

enum class ReconStatus { Unique, None, Ambiguous };

struct ReconstructionResult {
    ReconStatus status = ReconStatus::None;
    DiagonalSet diagonals;
    EmbeddingResult embedding;
    Group1Report group1;
    Group2Report group2;
    int candidates_found = 0;  ///< survivors after the convexity filter
    std::string diagnostic;
};

/// All positive diagonal triples solving the three closure equations
/// (five-point and six-point determinants vanish) inside the feasibility
/// interval of the base-tetrahedron inequality. Each squared diagonal enters
/// every equation quadratically, so the search reduces to four closed-form
/// branches and a univariate sign scan, followed by a damped Newton polish.
std::vector<DiagonalSet> solve_diagonals(const NaturalDevelopment& dev, const Tolerances& tol);

/// Filters the algebraic candidates down to convex realizations: the 24
/// halfspace margins must be strictly positive, the six points must embed
/// with matching distances, and the embedded hull must be a convex
/// octahedron with the canonical face set.
ReconstructionResult reconstruct(const NaturalDevelopment& dev, const Tolerances& tol);

}  // namespace octa
