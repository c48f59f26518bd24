#include "octaffine/octa_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace octa {

namespace combinatorics {

namespace {
struct EdgeTable {
    int idx[6][6];
    EdgeTable() {
        for (auto& row : idx)
            for (int& v : row) v = -1;
        for (int e = 0; e < kNumEdges; ++e) {
            const auto [i, j] = kEdges[e];
            idx[i][j] = e;
            idx[j][i] = e;
        }
    }
};
}  // namespace

int edge_index(int i, int j) {
    static const EdgeTable table;
    if (i < 0 || i > 5 || j < 0 || j > 5) return -1;
    return table.idx[i][j];
}

std::pair<int, int> edge_apexes(int i, int j) {
    if (edge_index(i, j) < 0) throw std::invalid_argument("not a canonical edge");
    // The faces incident to {i,j} are {i,j,c} and {i,j,antipode(c)} where c
    // runs over the antipodal pair disjoint from {i,j}.
    for (const auto& [p, q] : kAntipodalPairs) {
        if (p != i && p != j && q != i && q != j) return {p, q};
    }
    throw std::logic_error("edge_apexes: unreachable");
}

const std::vector<std::array<int, 6>>& octahedral_symmetries() {
    static const std::vector<std::array<int, 6>> perms = [] {
        std::vector<std::array<int, 6>> out;
        std::array<int, 3> axis_perm{0, 1, 2};
        std::sort(axis_perm.begin(), axis_perm.end());
        do {
            for (int flips = 0; flips < 8; ++flips) {
                std::array<int, 6> p{};
                for (int axis = 0; axis < 3; ++axis) {
                    auto [lo, hi] = kAntipodalPairs[axis];
                    auto [tlo, thi] = kAntipodalPairs[axis_perm[axis]];
                    const bool flip = (flips >> axis) & 1;
                    p[lo] = flip ? thi : tlo;
                    p[hi] = flip ? tlo : thi;
                }
                out.push_back(p);
            }
        } while (std::next_permutation(axis_perm.begin(), axis_perm.end()));
        return out;
    }();
    return perms;
}

}  // namespace combinatorics

namespace cb = combinatorics;

double NaturalDevelopment::length(int i, int j) const {
    const int e = cb::edge_index(i, j);
    if (e < 0) throw std::invalid_argument("no canonical edge between these vertices");
    return lengths_[e];
}

double NaturalDevelopment::scale() const {
    double sum = 0.0;
    for (double l : lengths_) sum += l * l;
    return sum / 12.0;
}

NaturalDevelopment NaturalDevelopment::scaled(double factor) const {
    std::array<double, 12> out = lengths_;
    for (double& l : out) l *= factor;
    return NaturalDevelopment(out);
}

NaturalDevelopment NaturalDevelopment::relabeled(const std::array<int, 6>& perm) const {
    std::array<double, 12> out{};
    for (int e = 0; e < cb::kNumEdges; ++e) {
        const auto [i, j] = cb::kEdges[e];
        out[e] = length(perm[i], perm[j]);
    }
    return NaturalDevelopment(out);
}

namespace {

std::string edge_key(int i, int j) {
    return std::to_string(std::min(i, j)) + std::to_string(std::max(i, j));
}

bool triangle_ok(double a, double b, double c) {
    return a < b + c && b < a + c && c < a + b;
}

std::string face_name(const std::array<int, 3>& f) {
    return "{" + std::to_string(f[0]) + "," + std::to_string(f[1]) + "," + std::to_string(f[2]) + "}";
}

}  // namespace

std::vector<std::string> check_development(const NaturalDevelopment& dev) {
    std::vector<std::string> issues;
    for (int e = 0; e < cb::kNumEdges; ++e) {
        if (!(dev.length(e) > 0.0)) {
            const auto [i, j] = cb::kEdges[e];
            issues.push_back("edge " + edge_key(i, j) + " has non-positive length");
        }
    }
    if (!issues.empty()) return issues;
    for (const auto& f : cb::kFaces) {
        const double a = dev.length(f[0], f[1]);
        const double b = dev.length(f[0], f[2]);
        const double c = dev.length(f[1], f[2]);
        if (!triangle_ok(a, b, c))
            issues.push_back("face " + face_name(f) + " violates the triangle inequality");
    }
    return issues;
}

DevelopmentValidation validate_development(const std::map<std::string, double>& raw) {
    DevelopmentValidation out;
    std::set<std::string> expected;
    for (const auto& [i, j] : cb::kEdges) expected.insert(edge_key(i, j));

    for (const auto& [key, value] : raw) {
        (void)value;
        if (!expected.count(key)) {
            bool diagonal = key == "05" || key == "14" || key == "23";
            out.violations.push_back(diagonal
                                         ? "key \"" + key + "\" is a diagonal, not an edge"
                                         : "unknown edge key \"" + key + "\"");
        }
    }
    for (const auto& key : expected)
        if (!raw.count(key)) out.violations.push_back("missing edge key \"" + key + "\"");
    if (!out.violations.empty()) return out;

    std::array<double, 12> lengths{};
    for (int e = 0; e < cb::kNumEdges; ++e) {
        const auto [i, j] = cb::kEdges[e];
        lengths[e] = raw.at(edge_key(i, j));
    }
    NaturalDevelopment dev(lengths);
    auto issues = check_development(dev);
    out.violations.insert(out.violations.end(), issues.begin(), issues.end());
    if (out.violations.empty()) {
        out.ok = true;
        out.development = dev;
    }
    return out;
}

DevelopmentValidation development_from_face_triangles(
    const std::array<std::array<double, 3>, 8>& face_sides) {
    DevelopmentValidation out;
    std::array<double, 12> lengths{};
    std::array<bool, 12> seen{};
    for (int fi = 0; fi < cb::kNumFaces; ++fi) {
        const auto& f = cb::kFaces[fi];
        const std::array<std::pair<int, int>, 3> sides{{{f[0], f[1]}, {f[0], f[2]}, {f[1], f[2]}}};
        for (int s = 0; s < 3; ++s) {
            const int e = cb::edge_index(sides[s].first, sides[s].second);
            const double len = face_sides[fi][s];
            if (!seen[e]) {
                lengths[e] = len;
                seen[e] = true;
            } else if (std::abs(lengths[e] - len) > 1e-12 * std::max(lengths[e], len)) {
                out.violations.push_back("face " + face_name(f) + " side " +
                                         edge_key(sides[s].first, sides[s].second) +
                                         " disagrees with the shared edge length");
            }
        }
    }
    if (!out.violations.empty()) return out;
    NaturalDevelopment dev(lengths);
    auto issues = check_development(dev);
    out.violations.insert(out.violations.end(), issues.begin(), issues.end());
    if (out.violations.empty()) {
        out.ok = true;
        out.development = dev;
    }
    return out;
}

namespace {

double octa_scale(const Octahedron3& oct) {
    double sum = 0.0;
    for (const auto& [i, j] : cb::kEdges) sum += distance_sq(oct.vertices[i], oct.vertices[j]);
    return sum / 12.0;
}

}  // namespace

std::vector<std::string> validate_octahedron(const Octahedron3& oct, const Tolerances& tol) {
    std::vector<std::string> issues;
    const double scale = octa_scale(oct);
    if (!(scale > 0.0)) {
        issues.push_back("degenerate vertex set");
        return issues;
    }

    for (const auto& f : cb::kFaces) {
        const Vec3 n = (oct.vertices[f[1]] - oct.vertices[f[0]])
                           .cross(oct.vertices[f[2]] - oct.vertices[f[0]]);
        if (n.norm() / scale <= tol.eps_geom)
            issues.push_back("face " + face_name(f) + " is degenerate");
    }

    // Adjacent faces non-coplanar: the edge's two apexes and endpoints span
    // a nonzero oriented volume.
    const double vol_scale = std::pow(scale, 1.5);
    for (const auto& [i, j] : cb::kEdges) {
        const auto [p, q] = cb::edge_apexes(i, j);
        const Vec3 a = oct.vertices[j] - oct.vertices[i];
        const Vec3 b = oct.vertices[p] - oct.vertices[i];
        const Vec3 c = oct.vertices[q] - oct.vertices[i];
        if (std::abs(a.dot(b.cross(c))) / vol_scale <= tol.eps_geom)
            issues.push_back("faces adjacent to edge " + edge_key(i, j) + " are coplanar");
    }
    return issues;
}

NaturalDevelopment develop(const Octahedron3& oct) {
    std::array<double, 12> lengths{};
    for (int e = 0; e < cb::kNumEdges; ++e) {
        const auto [i, j] = cb::kEdges[e];
        lengths[e] = distance(oct.vertices[i], oct.vertices[j]);
    }
    return NaturalDevelopment(lengths);
}

DiagonalSet diagonals_of(const Octahedron3& oct) {
    DiagonalSet d;
    d.d05 = distance(oct.vertices[0], oct.vertices[5]);
    d.d14 = distance(oct.vertices[1], oct.vertices[4]);
    d.d23 = distance(oct.vertices[2], oct.vertices[3]);
    return d;
}

ConvexityReport is_convex(const Octahedron3& oct, const Tolerances& tol) {
    ConvexityReport rep;
    rep.min_abs_offset = std::numeric_limits<double>::infinity();
    const double unit = std::sqrt(octa_scale(oct));

    bool marginal = false;
    int marginal_face = -1;
    for (int fi = 0; fi < cb::kNumFaces; ++fi) {
        const auto& f = cb::kFaces[fi];
        const Vec3 base = oct.vertices[f[0]];
        Vec3 n = (oct.vertices[f[1]] - base).cross(oct.vertices[f[2]] - base);
        const double nn = n.norm();
        if (nn / (unit * unit) <= tol.eps_geom)
            throw std::domain_error("degenerate face plane in is_convex");
        n = n / nn;

        double signs[3];
        int others[3];
        int k = 0;
        for (int v = 0; v < 6; ++v) {
            if (v == f[0] || v == f[1] || v == f[2]) continue;
            others[k] = v;
            signs[k] = n.dot(oct.vertices[v] - base) / unit;
            rep.min_abs_offset = std::min(rep.min_abs_offset, std::abs(signs[k]));
            ++k;
        }
        int pos = 0, neg = 0;
        for (int t = 0; t < 3; ++t) {
            if (signs[t] > tol.eps_geom)
                ++pos;
            else if (signs[t] < -tol.eps_geom)
                ++neg;
            else {
                marginal = true;
                if (marginal_face < 0) marginal_face = fi;
            }
        }
        if (pos > 0 && neg > 0) {
            rep.verdict = Convexity::Nonconvex;
            rep.face_index = fi;
            const double minority_sign = (pos <= neg) ? 1.0 : -1.0;
            for (int t = 0; t < 3; ++t) {
                if (signs[t] * minority_sign > tol.eps_geom) {
                    rep.offending_vertex = others[t];
                    break;
                }
            }
            return rep;
        }
    }
    if (marginal) {
        rep.verdict = Convexity::Marginal;
        rep.face_index = marginal_face;
    }
    return rep;
}

bool canonical_faces_are_hull_facets(const Octahedron3& oct, const Tolerances& tol) {
    return is_convex(oct, tol).verdict == Convexity::Convex;
}

SquaredDistanceMatrix assemble_sdm(const NaturalDevelopment& dev, const DiagonalSet& diag) {
    SquaredDistanceMatrix m(6);
    for (const auto& [i, j] : cb::kEdges) {
        const double l = dev.length(i, j);
        m.set(i, j, l * l);
    }
    m.set(0, 5, diag.d05 * diag.d05);
    m.set(1, 4, diag.d14 * diag.d14);
    m.set(2, 3, diag.d23 * diag.d23);
    return m;
}

}  // namespace octa
