#pragma once

#include <optional>
#include <string>
#include <vector>

#include "octaffine/conditions.hpp"
#include "octaffine/reconstruct.hpp"

namespace octa {

struct AffineMap {
    Mat3 linear = Mat3::identity();
    Vec3 translation{};
    double det = 1.0;

    Vec3 apply(const Vec3& p) const { return linear * p + translation; }
};

Octahedron3 apply(const AffineMap& map, const Octahedron3& oct);

enum class Verdict { Equivalent, NotEquivalent, Indeterminate };

std::string to_string(Verdict v);

struct Decision {
    Verdict verdict = Verdict::Indeterminate;
    std::optional<double> alpha_hat;        ///< squared determinant estimate
    std::optional<Group5Report> group5;
    std::optional<double> map_residual;     ///< vertex-4/5 mismatch of the recovered map
    ReconstructionResult recon_a;
    ReconstructionResult recon_b;
    std::string diagnostic;
};

/// The full decision procedure: reconstruct both developments, compare the
/// twelve per-edge determinant ratios, and certify an "equivalent" verdict
/// by recovering the affine map on the base tetrahedra and checking it on
/// the remaining two vertices.
Decision decide(const NaturalDevelopment& dev_a, const NaturalDevelopment& dev_b,
                const Tolerances& tol);

struct MapFit {
    AffineMap map;
    double residual = 0.0;  ///< dimensionless, over vertices 4 and 5
};

/// Unique affine map sending vertices 0..3 of one embedding onto the other's,
/// with the mismatch on vertices 4 and 5. Throws on a degenerate base
/// tetrahedron.
MapFit recover_affine_map(const EmbeddingResult& emb_a, const EmbeddingResult& emb_b,
                          const Tolerances& tol);

struct LabelingCandidate {
    std::array<int, 6> perm{};
    double spread = 0.0;
};

/// Optional pre-pass when the two developments were not labeled against the
/// same enumeration: screens the 48 combinatorial relabelings of the second
/// development by the ratio-spread test and returns the plausible ones,
/// best first. Requires both developments to reconstruct.
std::vector<LabelingCandidate> align_labelings(const NaturalDevelopment& dev_a,
                                               const NaturalDevelopment& dev_b,
                                               const Tolerances& tol);

}  // namespace octa
