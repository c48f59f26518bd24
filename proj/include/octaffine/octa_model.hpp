#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "octaffine/cm_core.hpp"
#include "octaffine/tolerances.hpp"
#include "octaffine/vec3.hpp"

namespace octa {

/// Canonical octahedron combinatorics under the fixed vertex enumeration:
/// antipodal pairs (0,5), (1,4), (2,3); every other vertex pair is an edge;
/// faces take one vertex from each antipodal pair.
namespace combinatorics {

inline constexpr int kNumVertices = 6;
inline constexpr int kNumEdges = 12;
inline constexpr int kNumFaces = 8;

inline constexpr std::array<std::pair<int, int>, 3> kAntipodalPairs{{{0, 5}, {1, 4}, {2, 3}}};

inline constexpr std::array<std::pair<int, int>, kNumEdges> kEdges{{{0, 1},
                                                                    {0, 2},
                                                                    {0, 3},
                                                                    {0, 4},
                                                                    {1, 2},
                                                                    {1, 3},
                                                                    {1, 5},
                                                                    {2, 4},
                                                                    {2, 5},
                                                                    {3, 4},
                                                                    {3, 5},
                                                                    {4, 5}}};

inline constexpr std::array<std::array<int, 3>, kNumFaces> kFaces{{{0, 1, 2},
                                                                   {0, 1, 3},
                                                                   {0, 2, 4},
                                                                   {0, 3, 4},
                                                                   {1, 2, 5},
                                                                   {1, 3, 5},
                                                                   {2, 4, 5},
                                                                   {3, 4, 5}}};

constexpr int antipode(int v) { return 5 - v; }

constexpr bool is_edge(int i, int j) { return i != j && i + j != 5; }

/// Position of the unordered edge {i,j} in kEdges; -1 for diagonals.
int edge_index(int i, int j);

/// The two apex vertices of the faces incident to edge {i,j}; always an
/// antipodal pair.
std::pair<int, int> edge_apexes(int i, int j);

/// All 48 vertex relabelings preserving the canonical combinatorics
/// (permutations of the three antipodal pairs times per-pair swaps).
const std::vector<std::array<int, 6>>& octahedral_symmetries();

}  // namespace combinatorics

/// The twelve edge lengths of an octahedron development under the canonical
/// labeling; stored in kEdges order.
class NaturalDevelopment {
  public:
    NaturalDevelopment() = default;
    explicit NaturalDevelopment(const std::array<double, 12>& lengths) : lengths_(lengths) {}

    double length(int edge_idx) const { return lengths_.at(edge_idx); }
    double length(int i, int j) const;
    const std::array<double, 12>& lengths() const { return lengths_; }

    /// Mean of the twelve squared edge lengths; used as the dimensionless
    /// normalization scale everywhere downstream.
    double scale() const;

    NaturalDevelopment scaled(double factor) const;

    /// Development of the octahedron with relabeled vertices: the edge {i,j}
    /// of the result has the length of {perm[i], perm[j]}.
    NaturalDevelopment relabeled(const std::array<int, 6>& perm) const;

    bool operator==(const NaturalDevelopment&) const = default;

  private:
    std::array<double, 12> lengths_{};
};

struct DevelopmentValidation {
    bool ok = false;
    std::vector<std::string> violations;
    std::optional<NaturalDevelopment> development;
};

/// Validates twelve keyed lengths ("01", "02", ... with i<j) against the
/// canonical edge set, positivity and the per-face triangle inequalities.
DevelopmentValidation validate_development(const std::map<std::string, double>& raw);

/// Same checks applied to an already-assembled length array.
std::vector<std::string> check_development(const NaturalDevelopment& dev);

/// Reduces eight per-face side-length triples to a development, rejecting
/// shared-edge mismatches above 1e-12 relative. The outer index follows
/// combinatorics::kFaces; each inner triple gives the lengths of the sides
/// opposite to no vertex in particular: ({a,b}, {a,c}, {b,c}) for the sorted
/// face {a,b,c}.
DevelopmentValidation development_from_face_triangles(
    const std::array<std::array<double, 3>, 8>& face_sides);

/// Six labeled points in 3-space under the canonical enumeration.
struct Octahedron3 {
    std::array<Vec3, 6> vertices{};
};

/// The three diagonal lengths (not given by a development).
struct DiagonalSet {
    double d05 = 0.0, d14 = 0.0, d23 = 0.0;

    double operator[](int pair_idx) const {
        return pair_idx == 0 ? d05 : pair_idx == 1 ? d14 : d23;
    }
};

/// Octahedron invariants: nondegenerate faces and non-coplanar adjacent
/// faces. Convexity is a separate, stronger test.
std::vector<std::string> validate_octahedron(const Octahedron3& oct, const Tolerances& tol);

NaturalDevelopment develop(const Octahedron3& oct);

DiagonalSet diagonals_of(const Octahedron3& oct);

enum class Convexity { Convex, Nonconvex, Marginal };

struct ConvexityReport {
    Convexity verdict = Convexity::Convex;
    int face_index = -1;        ///< offending face for Nonconvex/Marginal
    int offending_vertex = -1;  ///< vertex on the wrong side (Nonconvex)
    double min_abs_offset = 0.0; ///< smallest |normalized signed distance| seen
};

/// For each face, the three non-incident vertices must lie strictly on one
/// side of the face plane. Offsets within tol.eps_geom of zero are reported
/// as Marginal rather than forced to a boolean.
ConvexityReport is_convex(const Octahedron3& oct, const Tolerances& tol);

/// True when every canonical face is a strict facet of the convex hull of
/// the six vertices (for an octahedron this pins the full facet set).
bool canonical_faces_are_hull_facets(const Octahedron3& oct, const Tolerances& tol);

/// 6x6 squared-distance matrix with edges from the development and the
/// antipodal entries from the diagonal set.
SquaredDistanceMatrix assemble_sdm(const NaturalDevelopment& dev, const DiagonalSet& diag);

}  // namespace octa
