#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "octaffine/tolerances.hpp"
#include "octaffine/vec3.hpp"

namespace octa {

/// Symmetric matrix of squared pairwise distances for 2..7 points.
/// Entries carry length^2 units; the diagonal is zero.
class SquaredDistanceMatrix {
  public:
    static constexpr int kMaxPoints = 7;

    explicit SquaredDistanceMatrix(int n);

    int size() const { return n_; }
    double at(int i, int j) const;
    void set(int i, int j, double squared_distance);

    /// Mean squared distance over the off-diagonal pairs; the default
    /// normalization scale when the caller supplies none.
    double mean_squared_distance() const;

    /// Checks symmetry/positivity invariants; returns a diagnostic per
    /// violation (empty means valid).
    std::vector<std::string> check_invariants() const;

    static SquaredDistanceMatrix from_points(std::span<const Vec3> pts);

  private:
    int n_;
    std::array<std::array<double, kMaxPoints>, kMaxPoints> s_{};
};

/// A Cayley-Menger determinant value together with its order (number of
/// points minus one) and the dimensionless normalization value/scale^order.
struct CmValue {
    double value = 0.0;
    int order = 0;
    double normalized = 0.0;
};

/// cm(subset) viewed as a quadratic a*t^2 + b*t + c in t = the squared
/// distance of one point pair of the subset.
struct SlotQuadratic {
    double a = 0.0, b = 0.0, c = 0.0;

    double eval(double t) const { return (a * t + b) * t + c; }
    double derivative(double t) const { return 2.0 * a * t + b; }
};

/// Bordered Cayley-Menger determinant of the chosen points. `scale` sets the
/// normalization (pass 0 to use the matrix mean squared distance).
CmValue cm_determinant(std::span<const int> points_subset, const SquaredDistanceMatrix& m,
                       double scale = 0.0);

/// Coefficients of cm(subset) as a quadratic in the squared distance between
/// subset points slot_i and slot_j (both must belong to the subset).
SlotQuadratic cm_slot_quadratic(std::span<const int> points_subset, const SquaredDistanceMatrix& m,
                                int slot_i, int slot_j);

/// Squared n-volume of the simplex on `points_subset` (n = subset size - 1)
/// via vol^2 = (-1)^(n+1) / (2^n (n!)^2) * cm.
struct VolumeSq {
    double value = 0.0;       ///< clamped to >= 0
    bool sign_violated = false; ///< cm had the metrically impossible sign beyond tolerance
    double relative_excess = 0.0; ///< dimensionless magnitude of the violation
};
VolumeSq simplex_volume_sq(std::span<const int> points_subset, const SquaredDistanceMatrix& m,
                           double tol_rel = 1e-12);

/// Menger embeddability report for six points in R^3 with base x0..x3:
/// strict inequalities (-1)^(k+1) cm(x0..xk) > 0 for k = 1,2,3 and the
/// three equality residuals cm(x0..x3,x4), cm(x0..x3,x5), cm(x0..x3,x4,x5).
/// All values are dimensionless.
struct MengerReport {
    std::array<double, 3> strict_margins{};
    std::array<double, 3> equality_residuals{};

    bool satisfied(const Tolerances& tol) const {
        for (double m : strict_margins)
            if (!(m > tol.eps_rel)) return false;
        for (double r : equality_residuals)
            if (!(std::abs(r) <= tol.eps_rel)) return false;
        return true;
    }
};
MengerReport menger_conditions(const SquaredDistanceMatrix& m, const Tolerances& tol,
                               double scale = 0.0);

/// Coordinates recovered from a six-point squared-distance matrix by
/// sequential trilateration, plus the worst relative distance mismatch.
struct EmbeddingResult {
    std::array<Vec3, 6> points{};
    double max_distance_error = 0.0;
};

enum class EmbedStatus { Ok, DegenerateBase, InconsistentInput };

struct EmbedOutcome {
    EmbedStatus status = EmbedStatus::Ok;
    EmbeddingResult result;
    std::string diagnostic;
};

/// Places x0 at the origin, x1 on the positive first axis, x2 in the upper
/// half of the first coordinate plane and x3 with positive third coordinate;
/// x4, x5 follow from the linearized squared-distance equations. The final
/// residual check covers all 15 pairs.
EmbedOutcome embed_six_points(const SquaredDistanceMatrix& m, const Tolerances& tol);

}  // namespace octa
