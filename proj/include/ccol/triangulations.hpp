#pragma once

// Labelled planar triangulations with an explicit face list, the stacked
// family T_n, and the octahedron.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ccol/bigint.hpp"

namespace ccol {

/// Vertex labels are 1-based throughout this module.
using Edge = std::pair<int, int>;   // first < second
using Face = std::array<int, 3>;    // ascending

Edge make_edge(int a, int b);
Face make_face(int a, int b, int c);
inline Face make_face(const Face& f) { return make_face(f[0], f[1], f[2]); }

/// A triangulation whose faces are known by construction. Instances only
/// come from k4(), octahedron() and stacking, so the face list is never
/// recomputed from the edge set.
class FacedTriangulation {
public:
    static FacedTriangulation k4();
    static FacedTriangulation octahedron();

    int n() const { return n_; }
    const std::set<Edge>& edges() const { return edges_; }
    const std::set<Face>& faces() const { return faces_; }
    bool has_edge(int a, int b) const { return edges_.count(make_edge(a, b)) != 0; }
    bool has_face(const Face& f) const { return faces_.count(make_face(f)) != 0; }

    /// Adds vertex n+1 inside `face` and joins it to the three corners.
    /// Throws std::invalid_argument if `face` is not a current face.
    FacedTriangulation with_stacked(const Face& face) const&;
    FacedTriangulation with_stacked(const Face& face) &&;

    /// Empty when the Euler counts and edge/face incidences all hold.
    std::optional<std::string> invariant_violation() const;

    std::vector<Edge> edge_list() const { return {edges_.begin(), edges_.end()}; }

    friend bool operator==(const FacedTriangulation&, const FacedTriangulation&) = default;

private:
    FacedTriangulation() = default;
    void stack_in_place(const Face& face);

    int n_ = 0;
    std::set<Edge> edges_;
    std::set<Face> faces_;
};

struct StackStep {
    int vertex;
    Face face;
    friend bool operator==(const StackStep&, const StackStep&) = default;
};

/// A member of T_n: K4 on 1..4 plus the ordered stacking history of 5..n.
class StackedTriangulation {
public:
    static StackedTriangulation k4();
    /// Replays `steps` (vertices 5, 6, ... in order) and rejects any step whose
    /// face is absent at that point.
    static StackedTriangulation from_steps(std::vector<StackStep> steps);

    int n() const { return 4 + static_cast<int>(stacks_.size()); }
    const std::vector<StackStep>& stacks() const { return stacks_; }
    FacedTriangulation expand() const;

    friend bool operator==(const StackedTriangulation&, const StackedTriangulation&) = default;

private:
    StackedTriangulation() = default;
    std::vector<StackStep> stacks_;
};

StackedTriangulation k4();
/// Throws std::invalid_argument if `face` is not a face of t's expansion.
StackedTriangulation stack_child(const StackedTriangulation& t, const Face& face);

/// |T_10| = 322560; larger n needs the override.
constexpr int kEnumerateGuard = 10;

/// Visits every member of T_n once, children in lexicographic face order.
void for_each_Tn(int n,
                 const std::function<void(const StackedTriangulation&, const FacedTriangulation&)>& visit,
                 bool override_guard = false);
std::vector<StackedTriangulation> enumerate_Tn(int n, bool override_guard = false);

/// 2^(n-4) (n-3)!
BigInt count_Tn(int n);

/// Uniform member of T_n: each step picks a face uniformly among the current
/// faces (sorted), which is uniform because face-choice sequences biject
/// with members.
StackedTriangulation sample_uniform_Tn(int n, std::uint64_t seed);

/// Canonical octahedron faces f1..f8.
const std::array<Face, 8>& octahedron_faces();
/// The three antipodal (non-adjacent) pairs of the octahedron.
const std::array<Edge, 3>& octahedron_non_edges();

/// 64-bit edge mask for n <= 11, a cheap key for labelled-graph identity.
std::uint64_t edge_mask(const std::set<Edge>& edges, int n);

}  // namespace ccol
