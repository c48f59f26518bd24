#pragma once

namespace octa {

/// Numeric thresholds shared by the condition evaluators, the diagonal
/// solver and the decision procedure. All bounds apply to dimensionless
/// (scale-normalized) quantities.
struct Tolerances {
    double eps_rel = 1e-9;     ///< equality residual bound
    double eps_geom = 1e-9;    ///< strict-margin band around zero
    double alpha_yes = 1e-7;   ///< ratio spread below which the verdict is "equivalent"
    double alpha_no = 1e-4;    ///< ratio spread above which the verdict is "not_equivalent"
    double bisect_rel = 1e-13; ///< bisection bracket relative width
    int newton_max = 50;       ///< damped Newton iteration cap
    int grid_samples = 1024;   ///< sign-scan grid density

    bool valid() const {
        return eps_rel > 0 && eps_rel < 1 && eps_geom > 0 && eps_geom < 1 &&
               alpha_yes > 0 && alpha_yes < 1 && alpha_no > 0 && alpha_no < 1 &&
               alpha_yes < alpha_no && bisect_rel > 0 && bisect_rel < 1 &&
               newton_max > 0 && grid_samples > 1;
    }
};

}  // namespace octa
