#pragma once

// Straight-line embeddings of labelled planar graphs on labelled point sets:
// exact checks, placement search with a node budget, the unique
// reconstruction of a stacked triangulation from a labelled point set, and
// conflict verification against a stream of order-type representatives.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ccol/construction.hpp"
#include "ccol/geom.hpp"
#include "ccol/triangulations.hpp"

namespace ccol {

/// Edge list view of a labelled graph on vertices 1..n.
struct PlanarGraph {
    int n = 0;
    std::vector<Edge> edges;

    PlanarGraph() = default;
    PlanarGraph(int n_, std::vector<Edge> edges_);
    PlanarGraph(const FacedTriangulation& t);    // NOLINT(google-explicit-constructor)
    PlanarGraph(const StackedTriangulation& t);  // NOLINT(google-explicit-constructor)

    friend bool operator==(const PlanarGraph&, const PlanarGraph&) = default;
};

/// target[v-1] is the 0-based index of the point carrying vertex v.
struct VertexPlacement {
    std::vector<int> target;

    static VertexPlacement identity(int n);
    /// Injective into [0, points) and total on the n vertices.
    bool valid(int n, int points) const;
    friend bool operator==(const VertexPlacement&, const VertexPlacement&) = default;
};

enum class Verdict { Embeds, DoesNotEmbed, Unknown };
const char* to_string(Verdict v);

struct EmbeddingVerdict {
    Verdict outcome = Verdict::Unknown;
    std::optional<VertexPlacement> witness;
    std::uint64_t crossings_checked = 0;
    std::uint64_t nodes = 0;

    bool embeds() const { return outcome == Verdict::Embeds; }
};

constexpr std::uint64_t kDefaultSearchBudget = 200'000'000;

bool is_straight_line_embedding(const PlanarGraph& g, const LabelledPointSet& points,
                                const VertexPlacement& placement);
bool is_straight_line_embedding(const PlanarGraph& g, const OrientationTable& table,
                                const VertexPlacement& placement);

bool has_label_preserving_embedding(const PlanarGraph& g, const LabelledPointSet& points);

/// The unique member of T_n with a label-preserving straight-line embedding
/// on `points`, if any. Requires general position and n >= 4.
std::optional<StackedTriangulation> reconstruct_stacked(const LabelledPointSet& points);
std::optional<StackedTriangulation> reconstruct_stacked(const OrientationTable& table);

/// Backtracking placement search. Vertices are placed by decreasing degree
/// (ties by label) and a branch dies as soon as two placed edges cross.
/// Running out of `budget` search nodes yields Verdict::Unknown.
EmbeddingVerdict embeds_on(const PlanarGraph& g, const LabelledPointSet& points,
                           std::uint64_t budget = kDefaultSearchBudget);
EmbeddingVerdict embeds_on(const PlanarGraph& g, const OrientationTable& table,
                           std::uint64_t budget = kDefaultSearchBudget);

/// Alternative for stacked inputs: tries every relabelling tau of the points
/// and accepts iff the reconstruction on the relabelled set equals `t`.
/// Requires general position; practical for n <= 9.
EmbeddingVerdict embeds_on_by_reconstruction(const StackedTriangulation& t, const LabelledPointSet& points);

struct SimultaneousVerdict {
    Verdict outcome = Verdict::Unknown;
    /// One entry per graph examined; stops after the first DoesNotEmbed.
    std::vector<EmbeddingVerdict> per_graph;
};

SimultaneousVerdict simultaneously_embeddable_on(std::span<const PlanarGraph> graphs,
                                                 const LabelledPointSet& points,
                                                 std::uint64_t budget = kDefaultSearchBudget);

enum class ConflictOutcome { Conflict, NotConflict, Inconclusive };
const char* to_string(ConflictOutcome o);

struct ConflictVerdict {
    ConflictOutcome outcome = ConflictOutcome::Inconclusive;
    /// A representative on which every graph embeds, with one witness each.
    std::optional<LabelledPointSet> counterexample;
    std::vector<VertexPlacement> witnesses;
    std::size_t representatives_checked = 0;
    std::size_t representatives_unknown = 0;

    bool is_conflict() const { return outcome == ConflictOutcome::Conflict; }
};

/// Pulls representatives until exhausted (nullopt).
using RepresentativeStream = std::function<std::optional<LabelledPointSet>()>;

/// Conflict iff on every representative some graph fails to embed. Duplicate
/// graphs are ignored. An empty stream is refused. Representatives are meant
/// to be general-position sets, one per simple order type.
ConflictVerdict verify_conflict_collection(std::span<const PlanarGraph> graphs, int n,
                                           const RepresentativeStream& reps,
                                           std::uint64_t budget = kDefaultSearchBudget);
ConflictVerdict verify_conflict_collection(std::span<const PlanarGraph> graphs, int n,
                                           std::span<const LabelledPointSet> reps,
                                           std::uint64_t budget = kDefaultSearchBudget);

struct EmbeddingCounts {
    long label_preserving_count = 0;
    long embeddable_count = 0;
    BigInt total;
};

/// Exhaustive over T_n for 4 <= n <= 8 on a general-position set.
EmbeddingCounts exact_embedding_counts(int n, const LabelledPointSet& points);

/// Edge masks of every member of T_n that embeds on the set under some
/// placement; found by running the reconstruction over all point orders
/// with shared prefixes. General position, n <= 11.
std::vector<std::uint64_t> embeddable_stacked_masks(const OrientationTable& table);

/// Points strictly inside the image of each octahedron face f1..f8 under a
/// straight-line embedding; nullopt marks the outer face of the drawn
/// octahedron.
std::array<std::optional<int>, 8> face_interior_counts(const OrientationTable& table,
                                                       const VertexPlacement& placement);

struct ConsistencyReport {
    bool holds = true;      // no octahedron placement extends to both graphs
    bool complete = true;   // search finished within budget
    std::uint64_t octahedron_placements = 0;
    std::uint64_t extend_first = 0;     // octahedron placements extending T(s)
    std::uint64_t extend_second = 0;    // ... extending T(s')
    std::uint64_t embeddings_checked = 0;
    std::uint64_t face_count_mismatches = 0;
    std::optional<VertexPlacement> shared_octahedron;
};

/// Searches placements of T_n(s) and T_n(s') on `points` that agree on the
/// octahedron vertices 1..6. Every complete embedding found along the way is
/// also checked against the face-interior counts of its composition.
ConsistencyReport octahedron_consistency_check(const Composition8& s, const Composition8& s_prime, long n,
                                               const LabelledPointSet& points,
                                               std::uint64_t budget = kDefaultSearchBudget);

}  // namespace ccol
