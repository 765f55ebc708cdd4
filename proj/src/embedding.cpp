#include "ccol/embedding.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ccol {

namespace {

enum class SearchStatus { Exhausted, Stopped, BudgetExceeded };

// Injective placements of a graph's vertices onto the points of a table,
// built one vertex at a time; a partial placement survives only while no two
// of its edges cross and no placed point sits inside a placed edge.
class PlacementSearch {
public:
    PlacementSearch(const PlanarGraph& g, const OrientationTable& table)
        : table_(table), adjacency_(static_cast<std::size_t>(g.n)) {
        if (g.n > table.size()) throw std::invalid_argument("graph has more vertices than points");
        for (const auto& [a, b] : g.edges) {
            adjacency_[a - 1].push_back(b - 1);
            adjacency_[b - 1].push_back(a - 1);
        }
    }

    // `order` lists 0-based vertices still to place; `initial` fixes the
    // others (-1 = free). visit(pos) returns false to stop.
    template <class Visit>
    SearchStatus run(const std::vector<int>& order, const std::vector<int>& initial, std::uint64_t budget,
                     Visit&& visit) {
        nodes_ = 0;
        budget_ = budget;
        pos_.assign(adjacency_.size(), -1);
        used_.assign(static_cast<std::size_t>(table_.size()), 0);
        edges_.clear();
        marks_.clear();
        placed_points_.clear();
        for (std::size_t v = 0; v < initial.size(); ++v) {
            if (initial[v] < 0) continue;
            if (!place(static_cast<int>(v), initial[v])) return SearchStatus::Exhausted;
        }
        return descend(order, 0, visit);
    }

    std::uint64_t nodes() const { return nodes_; }
    std::uint64_t crossings() const { return crossings_; }

private:
    template <class Visit>
    SearchStatus descend(const std::vector<int>& order, std::size_t depth, Visit& visit) {
        if (depth == order.size()) return visit(pos_) ? SearchStatus::Exhausted : SearchStatus::Stopped;
        const int v = order[depth];
        for (int p = 0; p < table_.size(); ++p) {
            if (used_[p]) continue;
            if (++nodes_ > budget_) return SearchStatus::BudgetExceeded;
            if (!place(v, p)) continue;
            const auto status = descend(order, depth + 1, visit);
            unplace(v);
            if (status != SearchStatus::Exhausted) return status;
        }
        return SearchStatus::Exhausted;
    }

    bool place(int v, int p) {
        if (used_[p]) return false;
        const bool gp = table_.general_position();
        if (!gp)
            for (const auto& [x, y] : edges_)
                if (table_.strictly_between(x, p, y)) return false;
        const std::size_t mark = edges_.size();
        for (int u : adjacency_[v]) {
            const int q = pos_[u];
            if (q < 0) continue;
            for (std::size_t e = 0; e < edges_.size(); ++e) {
                ++crossings_;
                if (table_.segments_cross(p, q, edges_[e].first, edges_[e].second)) {
                    edges_.resize(mark);
                    return false;
                }
            }
            if (!gp)
                for (int w : placed_points_)
                    if (w != q && table_.strictly_between(p, w, q)) {
                        edges_.resize(mark);
                        return false;
                    }
            edges_.emplace_back(p, q);
        }
        pos_[v] = p;
        used_[p] = 1;
        placed_points_.push_back(p);
        marks_.push_back(mark);
        return true;
    }

    void unplace(int v) {
        edges_.resize(marks_.back());
        marks_.pop_back();
        used_[pos_[v]] = 0;
        pos_[v] = -1;
        placed_points_.pop_back();
    }

    const OrientationTable& table_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<int> pos_;
    std::vector<char> used_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::size_t> marks_;
    std::vector<int> placed_points_;
    std::uint64_t nodes_ = 0;
    std::uint64_t budget_ = 0;
    std::uint64_t crossings_ = 0;
};

// A label-preserving drawing of a stacked triangulation under construction,
// in point indices: bounded triangular faces plus the outer triangle.
struct Drawing {
    std::vector<std::array<int, 3>> bounded;
    std::array<int, 3> outer{};
};

std::optional<Drawing> draw_k4(const OrientationTable& t, const std::array<int, 4>& q) {
    int inner = -1;
    for (int c = 0; c < 4; ++c) {
        std::array<int, 3> rest{};
        for (int i = 0, k = 0; i < 4; ++i)
            if (i != c) rest[k++] = q[i];
        if (t.strictly_inside(q[c], rest[0], rest[1], rest[2])) {
            if (inner >= 0) return std::nullopt;
            inner = c;
        }
    }
    if (inner < 0) return std::nullopt;
    Drawing d;
    for (int i = 0, k = 0; i < 4; ++i)
        if (i != inner) d.outer[k++] = q[i];
    const int x = q[inner];
    d.bounded = {{x, d.outer[0], d.outer[1]}, {x, d.outer[1], d.outer[2]}, {x, d.outer[0], d.outer[2]}};
    return d;
}

// Stacks point p into the only face that can hold it. Returns the corners of
// that face, or nullopt if p cannot be joined to them without a crossing.
std::optional<std::array<int, 3>> stack_point(Drawing& d, const OrientationTable& t, int p) {
    for (std::size_t i = 0; i < d.bounded.size(); ++i) {
        const auto f = d.bounded[i];
        if (!t.strictly_inside(p, f[0], f[1], f[2])) continue;
        d.bounded[i] = {p, f[0], f[1]};
        d.bounded.push_back({p, f[1], f[2]});
        d.bounded.push_back({p, f[0], f[2]});
        return f;
    }
    // Outside the hull triangle: p must see all three outer corners, and then
    // exactly one corner ends up inside the new hull triangle.
    const auto [a, b, c] = d.outer;
    if (t.segments_cross(p, a, b, c) || t.segments_cross(p, b, a, c) || t.segments_cross(p, c, a, b))
        return std::nullopt;
    const std::array<int, 3> f = d.outer;
    for (int k = 0; k < 3; ++k) {
        const int x = f[k], y = f[(k + 1) % 3], z = f[(k + 2) % 3];
        if (!t.strictly_inside(x, p, y, z)) continue;
        d.outer = {p, y, z};
        d.bounded.push_back({p, x, y});
        d.bounded.push_back({p, x, z});
        return f;
    }
    return std::nullopt;
}

std::vector<int> degree_order(const PlanarGraph& g) {
    std::vector<int> degree(static_cast<std::size_t>(g.n), 0);
    for (const auto& [a, b] : g.edges) ++degree[a - 1], ++degree[b - 1];
    std::vector<int> order(static_cast<std::size_t>(g.n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return degree[a] > degree[b]; });
    return order;
}

void require_sizes(const PlanarGraph& g, int points) {
    if (g.n != points)
        throw std::invalid_argument("graph has " + std::to_string(g.n) + " vertices but the point set has " +
                                    std::to_string(points) + " points");
}

std::uint64_t edge_bit(int a, int b) {  // labels, a < b
    return std::uint64_t{1} << ((b - 1) * (b - 2) / 2 + (a - 1));
}

}  // namespace

PlanarGraph::PlanarGraph(int n_, std::vector<Edge> edges_) : n(n_), edges(std::move(edges_)) {
    for (auto& e : edges) {
        e = make_edge(e.first, e.second);
        if (e.first < 1 || e.second > n || e.first == e.second)
            throw std::invalid_argument("edge outside the vertex range 1..n");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("duplicate edge");
}

PlanarGraph::PlanarGraph(const FacedTriangulation& t) : n(t.n()), edges(t.edge_list()) {}

PlanarGraph::PlanarGraph(const StackedTriangulation& t) : PlanarGraph(t.expand()) {}

VertexPlacement VertexPlacement::identity(int n) {
    VertexPlacement p;
    p.target.resize(static_cast<std::size_t>(n));
    std::iota(p.target.begin(), p.target.end(), 0);
    return p;
}

bool VertexPlacement::valid(int n, int points) const {
    if (static_cast<int>(target.size()) != n) return false;
    std::vector<char> seen(static_cast<std::size_t>(std::max(points, 0)), 0);
    for (int p : target) {
        if (p < 0 || p >= points || seen[p]) return false;
        seen[p] = 1;
    }
    return true;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Embeds: return "embeds";
        case Verdict::DoesNotEmbed: return "does-not-embed";
        case Verdict::Unknown: return "unknown";
    }
    return "?";
}

const char* to_string(ConflictOutcome o) {
    switch (o) {
        case ConflictOutcome::Conflict: return "conflict";
        case ConflictOutcome::NotConflict: return "not-conflict";
        case ConflictOutcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

bool is_straight_line_embedding(const PlanarGraph& g, const OrientationTable& table,
                                const VertexPlacement& placement) {
    require_sizes(g, table.size());
    if (!placement.valid(g.n, table.size())) throw std::invalid_argument("placement is not injective");
    const auto& at = placement.target;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const int a = at[g.edges[i].first - 1], b = at[g.edges[i].second - 1];
        for (std::size_t j = i + 1; j < g.edges.size(); ++j) {
            const int c = at[g.edges[j].first - 1], d = at[g.edges[j].second - 1];
            if (table.segments_cross(a, b, c, d)) return false;
        }
        if (!table.general_position())
            for (int w = 0; w < table.size(); ++w)
                if (w != a && w != b && table.strictly_between(a, w, b)) return false;
    }
    return true;
}

bool is_straight_line_embedding(const PlanarGraph& g, const LabelledPointSet& points,
                                const VertexPlacement& placement) {
    require_sizes(g, static_cast<int>(points.size()));
    return is_straight_line_embedding(g, OrientationTable(points), placement);
}

bool has_label_preserving_embedding(const PlanarGraph& g, const LabelledPointSet& points) {
    return is_straight_line_embedding(g, points, VertexPlacement::identity(g.n));
}

std::optional<StackedTriangulation> reconstruct_stacked(const OrientationTable& table) {
    const int n = table.size();
    if (n < 4) throw std::invalid_argument("reconstruction needs n >= 4");
    if (!table.general_position()) throw std::invalid_argument("reconstruction needs general position");
    auto drawing = draw_k4(table, {0, 1, 2, 3});
    if (!drawing) return std::nullopt;
    std::vector<StackStep> steps;
    for (int p = 4; p < n; ++p) {
        const auto face = stack_point(*drawing, table, p);
        if (!face) return std::nullopt;
        steps.push_back({p + 1, make_face((*face)[0] + 1, (*face)[1] + 1, (*face)[2] + 1)});
    }
    return StackedTriangulation::from_steps(std::move(steps));
}

std::optional<StackedTriangulation> reconstruct_stacked(const LabelledPointSet& points) {
    if (points.size() < 4) throw std::invalid_argument("reconstruction needs n >= 4");
    return reconstruct_stacked(OrientationTable(points));
}

EmbeddingVerdict embeds_on(const PlanarGraph& g, const OrientationTable& table, std::uint64_t budget) {
    require_sizes(g, table.size());
    PlacementSearch search(g, table);
    EmbeddingVerdict verdict;
    const auto status = search.run(degree_order(g), std::vector<int>(static_cast<std::size_t>(g.n), -1), budget,
                                   [&](const std::vector<int>& pos) {
                                       verdict.witness = VertexPlacement{pos};
                                       return false;
                                   });
    verdict.nodes = search.nodes();
    verdict.crossings_checked = search.crossings();
    switch (status) {
        case SearchStatus::Stopped: verdict.outcome = Verdict::Embeds; break;
        case SearchStatus::Exhausted: verdict.outcome = Verdict::DoesNotEmbed; break;
        case SearchStatus::BudgetExceeded: verdict.outcome = Verdict::Unknown; break;
    }
    return verdict;
}

EmbeddingVerdict embeds_on(const PlanarGraph& g, const LabelledPointSet& points, std::uint64_t budget) {
    require_sizes(g, static_cast<int>(points.size()));
    return embeds_on(g, OrientationTable(points), budget);
}

EmbeddingVerdict embeds_on_by_reconstruction(const StackedTriangulation& t, const LabelledPointSet& points) {
    const int n = t.n();
    if (static_cast<int>(points.size()) != n)
        throw std::invalid_argument("graph has " + std::to_string(n) + " vertices but the point set has " +
                                    std::to_string(points.size()) + " points");
    if (!is_general_position(points)) throw std::invalid_argument("reconstruction needs general position");
    const auto target = t.expand();
    std::vector<int> tau(static_cast<std::size_t>(n));
    std::iota(tau.begin(), tau.end(), 0);
    EmbeddingVerdict verdict;
    verdict.outcome = Verdict::DoesNotEmbed;
    do {
        ++verdict.nodes;
        const auto rebuilt = reconstruct_stacked(points.relabelled(tau));
        if (rebuilt && rebuilt->expand() == target) {
            verdict.outcome = Verdict::Embeds;
            verdict.witness = VertexPlacement{tau};
            break;
        }
    } while (std::next_permutation(tau.begin(), tau.end()));
    return verdict;
}

SimultaneousVerdict simultaneously_embeddable_on(std::span<const PlanarGraph> graphs,
                                                 const LabelledPointSet& points, std::uint64_t budget) {
    for (const auto& g : graphs) require_sizes(g, static_cast<int>(points.size()));
    const OrientationTable table(points);
    SimultaneousVerdict result;
    bool unknown = false;
    for (const auto& g : graphs) {
        result.per_graph.push_back(embeds_on(g, table, budget));
        const auto outcome = result.per_graph.back().outcome;
        if (outcome == Verdict::DoesNotEmbed) {
            result.outcome = Verdict::DoesNotEmbed;
            return result;
        }
        unknown = unknown || outcome == Verdict::Unknown;
    }
    result.outcome = unknown ? Verdict::Unknown : Verdict::Embeds;
    return result;
}

ConflictVerdict verify_conflict_collection(std::span<const PlanarGraph> graphs, int n,
                                           const RepresentativeStream& reps, std::uint64_t budget) {
    if (graphs.empty()) throw std::invalid_argument("empty graph collection");
    std::vector<PlanarGraph> distinct;
    for (const auto& g : graphs) {
        if (g.n != n) throw std::invalid_argument("graph size does not match n");
        if (std::find(distinct.begin(), distinct.end(), g) == distinct.end()) distinct.push_back(g);
    }
    ConflictVerdict verdict;
    while (auto rep = reps()) {
        if (static_cast<int>(rep->size()) != n) throw std::invalid_argument("representative size does not match n");
        ++verdict.representatives_checked;
        const auto sim = simultaneously_embeddable_on(distinct, *rep, budget);
        if (sim.outcome == Verdict::Embeds) {
            verdict.outcome = ConflictOutcome::NotConflict;
            for (const auto& v : sim.per_graph) verdict.witnesses.push_back(*v.witness);
            verdict.counterexample = std::move(*rep);
            return verdict;
        }
        if (sim.outcome == Verdict::Unknown) ++verdict.representatives_unknown;
    }
    if (verdict.representatives_checked == 0)
        throw std::invalid_argument("no representatives supplied; refusing a vacuous verification");
    verdict.outcome =
        verdict.representatives_unknown > 0 ? ConflictOutcome::Inconclusive : ConflictOutcome::Conflict;
    return verdict;
}

ConflictVerdict verify_conflict_collection(std::span<const PlanarGraph> graphs, int n,
                                           std::span<const LabelledPointSet> reps, std::uint64_t budget) {
    std::size_t next = 0;
    return verify_conflict_collection(
        graphs, n,
        [&]() -> std::optional<LabelledPointSet> {
            if (next == reps.size()) return std::nullopt;
            return reps[next++];
        },
        budget);
}

std::vector<std::uint64_t> embeddable_stacked_masks(const OrientationTable& table) {
    const int n = table.size();
    if (n < 4 || n > 11) throw std::invalid_argument("embeddable_stacked_masks supports 4 <= n <= 11");
    if (!table.general_position()) throw std::invalid_argument("embeddable_stacked_masks needs general position");
    std::set<std::uint64_t> masks;
    std::vector<int> label(static_cast<std::size_t>(n), 0);  // 0 = unused, else 1-based label
    std::uint64_t k4_mask = 0;
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b) k4_mask |= edge_bit(a, b);

    auto extend = [&](auto&& self, const Drawing& d, int depth, std::uint64_t mask) -> void {
        if (depth == n) {
            masks.insert(mask);
            return;
        }
        for (int p = 0; p < n; ++p) {
            if (label[p]) continue;
            Drawing next = d;
            const auto face = stack_point(next, table, p);
            if (!face) continue;
            const int v = depth + 1;
            std::uint64_t m = mask;
            for (int c : *face) m |= edge_bit(label[c], v);
            label[p] = v;
            self(self, next, depth + 1, m);
            label[p] = 0;
        }
    };

    std::array<int, 4> q{};
    for (q[0] = 0; q[0] < n; ++q[0])
        for (q[1] = 0; q[1] < n; ++q[1])
            for (q[2] = 0; q[2] < n; ++q[2])
                for (q[3] = 0; q[3] < n; ++q[3]) {
                    if (q[0] == q[1] || q[0] == q[2] || q[0] == q[3] || q[1] == q[2] || q[1] == q[3] ||
                        q[2] == q[3])
                        continue;
                    const auto d = draw_k4(table, q);
                    if (!d) continue;
                    for (int i = 0; i < 4; ++i) label[q[i]] = i + 1;
                    extend(extend, *d, 4, k4_mask);
                    for (int i = 0; i < 4; ++i) label[q[i]] = 0;
                }
    return {masks.begin(), masks.end()};
}

EmbeddingCounts exact_embedding_counts(int n, const LabelledPointSet& points) {
    if (n < 4 || n > 8) throw std::invalid_argument("exact_embedding_counts supports 4 <= n <= 8");
    if (static_cast<int>(points.size()) != n) throw std::invalid_argument("point set size does not match n");
    const OrientationTable table(points);
    if (!table.general_position()) throw std::invalid_argument("exact_embedding_counts needs general position");
    EmbeddingCounts counts;
    counts.total = count_Tn(n);
    const auto identity = VertexPlacement::identity(n);
    for_each_Tn(n, [&](const StackedTriangulation&, const FacedTriangulation& t) {
        if (is_straight_line_embedding(PlanarGraph(t), table, identity)) ++counts.label_preserving_count;
    });
    counts.embeddable_count = static_cast<long>(embeddable_stacked_masks(table).size());
    return counts;
}

std::array<std::optional<int>, 8> face_interior_counts(const OrientationTable& table,
                                                       const VertexPlacement& placement) {
    if (placement.target.size() < 6) throw std::invalid_argument("placement must cover vertices 1..6");
    std::array<std::optional<int>, 8> counts{};
    const auto& faces = octahedron_faces();
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const int a = placement.target[faces[i][0] - 1];
        const int b = placement.target[faces[i][1] - 1];
        const int c = placement.target[faces[i][2] - 1];
        bool outer = true;
        for (int v = 1; v <= 6 && outer; ++v) {
            if (v == faces[i][0] || v == faces[i][1] || v == faces[i][2]) continue;
            outer = table.strictly_inside(placement.target[v - 1], a, b, c);
        }
        if (outer) continue;
        int inside = 0;
        for (int p = 0; p < table.size(); ++p)
            if (p != a && p != b && p != c && table.strictly_inside(p, a, b, c)) ++inside;
        counts[i] = inside;
    }
    return counts;
}

ConsistencyReport octahedron_consistency_check(const Composition8& s, const Composition8& s_prime, long n,
                                               const LabelledPointSet& points, std::uint64_t budget) {
    s.validate();
    s_prime.validate();
    if (s == s_prime) throw std::invalid_argument("compositions must differ");
    if (s.n != n || s_prime.n != n) throw std::invalid_argument("composition does not belong to n");
    if (n < 6 || n > 10) throw std::invalid_argument("consistency check supports 6 <= n <= 10");
    if (static_cast<long>(points.size()) != n) throw std::invalid_argument("point set size does not match n");

    const OrientationTable table(points);
    const PlanarGraph octahedron(FacedTriangulation::octahedron());
    const PlanarGraph first(build_T_of(s));
    const PlanarGraph second(build_T_of(s_prime));
    PlacementSearch outer_search(octahedron, table);
    PlacementSearch first_search(first, table);
    PlacementSearch second_search(second, table);

    const std::vector<int> octahedron_order = {0, 1, 2, 3, 4, 5};
    std::vector<int> rest_order;
    for (int v = 6; v < n; ++v) rest_order.push_back(v);

    ConsistencyReport report;
    std::uint64_t spent = 0;
    auto remaining = [&] { return spent >= budget ? 0 : budget - spent; };

    auto extensions = [&](PlacementSearch& search, const Composition8& comp, const std::vector<int>& fixed,
                          bool& exceeded) {
        std::uint64_t found = 0;
        std::vector<int> initial(static_cast<std::size_t>(n), -1);
        std::copy(fixed.begin(), fixed.end(), initial.begin());
        const auto status = search.run(rest_order, initial, remaining(), [&](const std::vector<int>& pos) {
            ++found;
            ++report.embeddings_checked;
            const auto counts = face_interior_counts(table, VertexPlacement{pos});
            for (std::size_t i = 0; i < 8; ++i)
                if (counts[i] && *counts[i] != comp.parts[i]) {
                    ++report.face_count_mismatches;
                    break;
                }
            return true;
        });
        spent += search.nodes();
        exceeded = exceeded || status == SearchStatus::BudgetExceeded;
        return found;
    };

    bool exceeded = false;
    const auto status = outer_search.run(
        octahedron_order, std::vector<int>(6, -1), budget, [&](const std::vector<int>& pos) {
            ++report.octahedron_placements;
            const auto a = extensions(first_search, s, pos, exceeded);
            const auto b = extensions(second_search, s_prime, pos, exceeded);
            if (exceeded) return false;
            if (a) ++report.extend_first;
            if (b) ++report.extend_second;
            if (a && b) {
                report.holds = false;
                report.shared_octahedron = VertexPlacement{pos};
                return false;
            }
            return true;
        });
    spent += outer_search.nodes();
    if (exceeded || status == SearchStatus::BudgetExceeded || spent > budget) report.complete = false;
    return report;
}

}  // namespace ccol
