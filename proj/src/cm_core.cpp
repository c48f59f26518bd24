#include "octaffine/cm_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace octa {

namespace {

// Bordered matrices go up to (7 points + border) = 9x9.
constexpr int kMaxDim = SquaredDistanceMatrix::kMaxPoints + 2;

// Determinant by partial-pivot elimination in long double. Sizes are tiny
// and fixed, so no blocking or scaling tricks are warranted.
long double det_lu(long double a[kMaxDim][kMaxDim], int n) {
    long double det = 1.0L;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        long double best = std::abs(a[col][col]);
        for (int r = col + 1; r < n; ++r) {
            const long double mag = std::abs(a[r][col]);
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0L) return 0.0L;
        if (pivot != col) {
            for (int c = col; c < n; ++c) std::swap(a[pivot][c], a[col][c]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < n; ++r) {
            const long double f = a[r][col] / a[col][col];
            for (int c = col + 1; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

// Fills the bordered CM matrix of the subset, optionally overriding the
// entry of one point pair (slot_i/slot_j are subset positions, not ids).
void fill_bordered(long double a[kMaxDim][kMaxDim], std::span<const int> subset,
                   const SquaredDistanceMatrix& m, int slot_a = -1, int slot_b = -1,
                   long double slot_value = 0.0L) {
    const int k = static_cast<int>(subset.size());
    a[0][0] = 0.0L;
    for (int i = 0; i < k; ++i) {
        a[0][i + 1] = 1.0L;
        a[i + 1][0] = 1.0L;
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            a[i + 1][j + 1] = (i == j) ? 0.0L : static_cast<long double>(m.at(subset[i], subset[j]));
    if (slot_a >= 0) {
        a[slot_a + 1][slot_b + 1] = slot_value;
        a[slot_b + 1][slot_a + 1] = slot_value;
    }
}

void check_subset(std::span<const int> subset, const SquaredDistanceMatrix& m) {
    const int k = static_cast<int>(subset.size());
    if (k < 2 || k > SquaredDistanceMatrix::kMaxPoints)
        throw std::invalid_argument("cm subset must contain 2..7 points");
    for (int i = 0; i < k; ++i) {
        if (subset[i] < 0 || subset[i] >= m.size())
            throw std::out_of_range("cm subset index out of range");
        for (int j = i + 1; j < k; ++j)
            if (subset[i] == subset[j]) throw std::invalid_argument("cm subset has a duplicate index");
    }
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

bool solve3(const Mat3& M, const Vec3& b, Vec3& x) {
    long double a[kMaxDim][kMaxDim];
    long double rhs[3] = {b.x, b.y, b.z};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = M.m[i][j];
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (a[pivot][col] == 0.0L) return false;
        if (pivot != col) {
            for (int c = col; c < 3; ++c) std::swap(a[pivot][c], a[col][c]);
            std::swap(rhs[pivot], rhs[col]);
        }
        for (int r = col + 1; r < 3; ++r) {
            const long double f = a[r][col] / a[col][col];
            for (int c = col + 1; c < 3; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    long double xs[3];
    for (int r = 2; r >= 0; --r) {
        long double s = rhs[r];
        for (int c = r + 1; c < 3; ++c) s -= a[r][c] * xs[c];
        xs[r] = s / a[r][r];
    }
    x = {static_cast<double>(xs[0]), static_cast<double>(xs[1]), static_cast<double>(xs[2])};
    return true;
}

SquaredDistanceMatrix::SquaredDistanceMatrix(int n) : n_(n) {
    if (n < 2 || n > kMaxPoints)
        throw std::invalid_argument("SquaredDistanceMatrix supports 2..7 points");
}

double SquaredDistanceMatrix::at(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw std::out_of_range("SquaredDistanceMatrix index out of range");
    return s_[i][j];
}

void SquaredDistanceMatrix::set(int i, int j, double squared_distance) {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw std::out_of_range("SquaredDistanceMatrix index out of range");
    if (i == j) throw std::invalid_argument("diagonal entries are fixed at zero");
    s_[i][j] = squared_distance;
    s_[j][i] = squared_distance;
}

double SquaredDistanceMatrix::mean_squared_distance() const {
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            sum += s_[i][j];
            ++count;
        }
    return sum / count;
}

std::vector<std::string> SquaredDistanceMatrix::check_invariants() const {
    std::vector<std::string> issues;
    for (int i = 0; i < n_; ++i) {
        if (s_[i][i] != 0.0) issues.push_back("nonzero diagonal at " + std::to_string(i));
        for (int j = i + 1; j < n_; ++j) {
            if (s_[i][j] != s_[j][i])
                issues.push_back("asymmetric entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
            if (!(s_[i][j] > 0.0))
                issues.push_back("non-positive squared distance (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
        }
    }
    return issues;
}

SquaredDistanceMatrix SquaredDistanceMatrix::from_points(std::span<const Vec3> pts) {
    SquaredDistanceMatrix m(static_cast<int>(pts.size()));
    for (int i = 0; i < m.size(); ++i)
        for (int j = i + 1; j < m.size(); ++j) m.set(i, j, distance_sq(pts[i], pts[j]));
    return m;
}

CmValue cm_determinant(std::span<const int> points_subset, const SquaredDistanceMatrix& m,
                       double scale) {
    check_subset(points_subset, m);
    const int k = static_cast<int>(points_subset.size());
    long double a[kMaxDim][kMaxDim];
    fill_bordered(a, points_subset, m);
    const long double det = det_lu(a, k + 1);

    CmValue out;
    out.value = static_cast<double>(det);
    out.order = k - 1;
    const double s = scale > 0.0 ? scale : m.mean_squared_distance();
    out.normalized = static_cast<double>(det / std::pow(static_cast<long double>(s), k - 1));
    return out;
}

SlotQuadratic cm_slot_quadratic(std::span<const int> points_subset, const SquaredDistanceMatrix& m,
                                int slot_i, int slot_j) {
    check_subset(points_subset, m);
    const int k = static_cast<int>(points_subset.size());
    int pa = -1, pb = -1;
    for (int i = 0; i < k; ++i) {
        if (points_subset[i] == slot_i) pa = i;
        if (points_subset[i] == slot_j) pb = i;
    }
    if (pa < 0 || pb < 0 || pa == pb)
        throw std::invalid_argument("slot pair must be two distinct subset members");

    long double a[kMaxDim][kMaxDim];

    // c = det at t = 0
    fill_bordered(a, points_subset, m, pa, pb, 0.0L);
    const long double c = det_lu(a, k + 1);

    // det at t = 1
    fill_bordered(a, points_subset, m, pa, pb, 1.0L);
    const long double at1 = det_lu(a, k + 1);

    // The t^2 coefficient is minus the determinant of the bordered matrix
    // with the slot pair's rows and columns removed.
    long double minor[kMaxDim][kMaxDim];
    std::vector<int> rest;
    for (int i = 0; i < k; ++i)
        if (i != pa && i != pb) rest.push_back(points_subset[i]);
    fill_bordered(minor, rest, m);
    const long double coeff_a = -det_lu(minor, static_cast<int>(rest.size()) + 1);

    SlotQuadratic q;
    q.a = static_cast<double>(coeff_a);
    q.c = static_cast<double>(c);
    q.b = static_cast<double>(at1 - coeff_a - c);
    return q;
}

VolumeSq simplex_volume_sq(std::span<const int> points_subset, const SquaredDistanceMatrix& m,
                           double tol_rel) {
    const int n = static_cast<int>(points_subset.size()) - 1;
    if (n < 1 || n > 4)
        throw std::invalid_argument("simplex_volume_sq expects 2..5 points");
    const CmValue cm = cm_determinant(points_subset, m);
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^(n+1)
    const double denom = std::pow(2.0, n) * factorial(n) * factorial(n);
    const double vol_sq = sign * cm.value / denom;

    VolumeSq out;
    if (vol_sq >= 0.0) {
        out.value = vol_sq;
    } else {
        const double excess = -sign * cm.normalized;
        if (excess > tol_rel) {
            out.sign_violated = true;
            out.relative_excess = excess;
        }
        out.value = 0.0;
    }
    return out;
}

MengerReport menger_conditions(const SquaredDistanceMatrix& m, const Tolerances& tol,
                               double scale) {
    (void)tol;
    if (m.size() != 6) throw std::invalid_argument("menger_conditions expects six points");
    const double s = scale > 0.0 ? scale : m.mean_squared_distance();

    MengerReport rep;
    static constexpr std::array<int, 2> k1{0, 1};
    static constexpr std::array<int, 3> k2{0, 1, 2};
    static constexpr std::array<int, 4> k3{0, 1, 2, 3};
    rep.strict_margins[0] = cm_determinant(k1, m, s).normalized;   // (+1)^2 cm > 0
    rep.strict_margins[1] = -cm_determinant(k2, m, s).normalized;  // (-1)^3 cm > 0
    rep.strict_margins[2] = cm_determinant(k3, m, s).normalized;   // (-1)^4 cm > 0

    static constexpr std::array<int, 5> e4{0, 1, 2, 3, 4};
    static constexpr std::array<int, 5> e5{0, 1, 2, 3, 5};
    static constexpr std::array<int, 6> e45{0, 1, 2, 3, 4, 5};
    rep.equality_residuals[0] = cm_determinant(e4, m, s).normalized;
    rep.equality_residuals[1] = cm_determinant(e5, m, s).normalized;
    rep.equality_residuals[2] = cm_determinant(e45, m, s).normalized;
    return rep;
}

EmbedOutcome embed_six_points(const SquaredDistanceMatrix& m, const Tolerances& tol) {
    EmbedOutcome out;
    if (m.size() != 6) throw std::invalid_argument("embed_six_points expects six points");
    const double scale = m.mean_squared_distance();
    const double unit = std::sqrt(scale);
    const double degeneracy_band = tol.eps_geom;

    auto degenerate = [&](const std::string& what) {
        out.status = EmbedStatus::DegenerateBase;
        out.diagnostic = what;
        return out;
    };

    std::array<Vec3, 6>& p = out.result.points;
    p[0] = {0, 0, 0};

    const double s01 = m.at(0, 1);
    if (s01 / scale <= degeneracy_band) return degenerate("x0 and x1 coincide");
    const double d01 = std::sqrt(s01);
    p[1] = {d01, 0, 0};

    // x2 in the plane z = 0, y > 0.
    const double ax = (s01 + m.at(0, 2) - m.at(1, 2)) / (2.0 * d01);
    const double ay_sq = m.at(0, 2) - ax * ax;
    if (ay_sq / scale <= degeneracy_band) return degenerate("x0, x1, x2 are collinear");
    p[2] = {ax, std::sqrt(ay_sq), 0};

    // x3 with z > 0.
    const double bx = (s01 + m.at(0, 3) - m.at(1, 3)) / (2.0 * d01);
    const double by = (m.at(0, 3) + m.at(0, 2) - m.at(2, 3) - 2.0 * ax * bx) / (2.0 * p[2].y);
    const double bz_sq = m.at(0, 3) - bx * bx - by * by;
    if (bz_sq / scale <= degeneracy_band) return degenerate("base tetrahedron is flat");
    p[3] = {bx, by, std::sqrt(bz_sq)};

    // x4 and x5 from the linear system 2 x_i . x = s_0j + |x_i|^2 - s_ij.
    const Mat3 M = Mat3::from_columns(p[1] * 2.0, p[2] * 2.0, p[3] * 2.0);
    Mat3 Mt;  // rows are 2*p1, 2*p2, 2*p3
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Mt.m[i][j] = M.m[j][i];
    for (int target = 4; target <= 5; ++target) {
        Vec3 rhs{m.at(0, target) + p[1].norm_sq() - m.at(1, target),
                 m.at(0, target) + p[2].norm_sq() - m.at(2, target),
                 m.at(0, target) + p[3].norm_sq() - m.at(3, target)};
        Vec3 x;
        if (!solve3(Mt, rhs, x)) return degenerate("trilateration system is singular");
        p[target] = x;
    }

    double worst = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            const double want = std::sqrt(m.at(i, j));
            const double got = distance(p[i], p[j]);
            worst = std::max(worst, std::abs(got - want) / (want > 0 ? want : unit));
        }
    out.result.max_distance_error = worst;
    if (worst > tol.eps_rel) {
        out.status = EmbedStatus::InconsistentInput;
        out.diagnostic = "pairwise distances are not realizable in R^3";
    }
    return out;
}

}  // namespace octa
