#pragma once

#include <cstdint>

#include "octaffine/affine_decision.hpp"
#include "octaffine/octa_model.hpp"

namespace octa {

/// Deterministic generation parameters; every generator is a pure function
/// of its config, so distinct seeds give independent, reproducible samples.
struct GenConfig {
    std::uint64_t seed = 0;
    double noise = 0.25;          ///< relative vertex perturbation amplitude, in [0,1)
    double det_lo = 0.1;          ///< |det| range for random affine maps
    double det_hi = 10.0;
    double cond_max = 100.0;
    double translation_amp = 1.0; ///< affine translation amplitude (0 forces none)
    int max_rejections = 1000;

    GenConfig with_seed(std::uint64_t s) const {
        GenConfig c = *this;
        c.seed = s;
        return c;
    }
};

/// Random convex octahedron under the canonical labeling: the six axis
/// points, perturbed and rotated, resampled until convex with the canonical
/// hull facets and cleanly non-coplanar adjacent faces. Throws when
/// max_rejections is exhausted.
Octahedron3 random_convex_octahedron(const GenConfig& cfg);

/// Random invertible affine map with |det| inside [det_lo, det_hi] and
/// condition number at most cond_max; the determinant sign is random.
AffineMap random_affine(const GenConfig& cfg);

/// Copy of the development with one edge rescaled. Throws when the result
/// violates a face triangle inequality.
NaturalDevelopment perturb_development(const NaturalDevelopment& dev, int edge_idx, double factor);

}  // namespace octa
