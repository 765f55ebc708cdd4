#pragma once

// Independent reference implementations for the tests. Nothing here goes
// through OrientationTable or the placement search: crossings come straight
// from segments_properly_intersect on the points, embeddability from trying
// every permutation.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "ccol/construction.hpp"
#include "ccol/embedding.hpp"
#include "ccol/geom.hpp"
#include "ccol/triangulations.hpp"

namespace oracle {

using namespace ccol;

inline long draw(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline LabelledPointSet random_points(int n, std::mt19937_64& rng, long range = 1000) {
    while (true) {
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i) pts.emplace_back(draw(rng, -range, range), draw(rng, -range, range));
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j) ok = !(pts[i] == pts[j]);
        if (ok) return LabelledPointSet(std::move(pts));
    }
}

inline LabelledPointSet random_general_position(int n, std::mt19937_64& rng, long range = 1000) {
    while (true) {
        auto p = random_points(n, rng, range);
        if (is_general_position(p)) return p;
    }
}

/// Determinant sign written out with plain BigInt arithmetic.
inline int orient_ref(const Point& a, const Point& b, const Point& c) {
    const BigInt d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return sgn(d);
}

/// m in the relative interior of segment ab.
inline bool on_open_segment(const Point& a, const Point& m, const Point& b) {
    if (orient_ref(a, b, m) != 0 || m == a || m == b) return false;
    return std::min(a.x, b.x) <= m.x && m.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= m.y &&
           m.y <= std::max(a.y, b.y);
}

inline bool drawing_ok(const PlanarGraph& g, const LabelledPointSet& pts, const std::vector<int>& at) {
    auto P = [&](int v) -> const Point& { return pts[static_cast<std::size_t>(at[v - 1])]; };
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto [a, b] = g.edges[i];
        for (std::size_t j = i + 1; j < g.edges.size(); ++j) {
            const auto [c, d] = g.edges[j];
            if (segments_properly_intersect(P(a), P(b), P(c), P(d))) return false;
        }
        for (std::size_t w = 0; w < pts.size(); ++w)
            if (on_open_segment(P(a), pts[w], P(b))) return false;
    }
    return true;
}

/// Full n!-placement brute force (placements onto all of the points).
inline std::optional<std::vector<int>> brute_force_embedding(const PlanarGraph& g, const LabelledPointSet& pts) {
    std::vector<int> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (drawing_ok(g, pts, perm)) return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

/// Labelled order-type key minimised over every relabelling.
inline SignPattern all_permutation_canonical(const LabelledPointSet& pts) {
    std::vector<int> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<SignPattern> best;
    do {
        auto sp = sign_pattern(pts.relabelled(perm));
        if (!best || sp < *best) best = std::move(sp);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return *best;
}

/// Scales every point by k.
inline std::vector<Point> scaled(const std::vector<Point>& pts, const BigInt& k) {
    std::vector<Point> out;
    for (const auto& p : pts) out.emplace_back(p.x * k, p.y * k);
    return out;
}

/// A point strictly inside triangle abc with random positive weights; all
/// coordinates are multiplied by the weight sum first so the result is integral.
inline Point inside_point(std::vector<Point>& pts, int a, int b, int c, std::mt19937_64& rng) {
    const long w1 = draw(rng, 1, 9), w2 = draw(rng, 1, 9), w3 = draw(rng, 1, 9);
    const long w = w1 + w2 + w3;
    pts = scaled(pts, BigInt(w));
    const Point& A = pts[a];
    const Point& B = pts[b];
    const Point& C = pts[c];
    return Point(BigInt((A.x * w1 + B.x * w2 + C.x * w3) / w), BigInt((A.y * w1 + B.y * w2 + C.y * w3) / w));
}

/// Label-preserving drawing of a member of T_n: K4 with vertex 4 inside
/// triangle 123, each later vertex inside its face, or beyond a corner when
/// the face is the outer one. Retries on accidental collinearities.
inline std::optional<LabelledPointSet> draw_stacked(const StackedTriangulation& t, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<Point> pts = {Point(0, 0), Point(30, 0), Point(draw(rng, 5, 25), draw(rng, 20, 40))};
        pts.push_back(inside_point(pts, 0, 1, 2, rng));
        std::array<int, 3> outer = {1, 2, 3};
        bool fine = true;
        for (const auto& step : t.stacks()) {
            const Face f = step.face;
            std::array<int, 3> sorted_outer = outer;
            std::sort(sorted_outer.begin(), sorted_outer.end());
            if (f != Face{sorted_outer[0], sorted_outer[1], sorted_outer[2]}) {
                pts.push_back(inside_point(pts, f[0] - 1, f[1] - 1, f[2] - 1, rng));
                continue;
            }
            // Beyond corner x of the outer triangle: x ends up inside (p, y, z).
            const int k = static_cast<int>(draw(rng, 0, 2));
            const int x = outer[k], y = outer[(k + 1) % 3], z = outer[(k + 2) % 3];
            pts = scaled(pts, BigInt(2 * 50));
            const Point X = pts[x - 1];
            const Point Y = pts[y - 1];
            const Point Z = pts[z - 1];
            // p = x + s (x - midpoint(y, z)) with s in [1/2, 2], plus a small jitter.
            const long s = draw(rng, 25, 100);
            const BigInt mx = (Y.x + Z.x) / 2, my = (Y.y + Z.y) / 2;
            Point p(BigInt(X.x + (X.x - mx) * s / 50 + draw(rng, -3, 3)),
                    BigInt(X.y + (X.y - my) * s / 50 + draw(rng, -3, 3)));
            if (orient_ref(p, Y, Z) == 0) fine = false;
            pts.push_back(std::move(p));
            outer = {step.vertex, y, z};
        }
        if (!fine) continue;
        bool distinct = true;
        for (std::size_t i = 0; i < pts.size() && distinct; ++i)
            for (std::size_t j = i + 1; j < pts.size() && distinct; ++j) distinct = !(pts[i] == pts[j]);
        if (!distinct) continue;
        LabelledPointSet set(pts);
        if (!is_general_position(set)) continue;
        if (!drawing_ok(PlanarGraph(t), set, [&] {
                std::vector<int> id(pts.size());
                std::iota(id.begin(), id.end(), 0);
                return id;
            }()))
            continue;
        return set;
    }
    return std::nullopt;
}

/// Octahedron drawing: 123 outer, 456 inner triangle.
inline std::vector<Point> octahedron_base() {
    return {Point(0, 0), Point(20, 0), Point(10, 20), Point(10, 4), Point(7, 10), Point(13, 10)};
}

/// An automorphism pi of the octahedron (pi[v-1] is the image of v) that
/// sends face `f` to {1,2,3}.
inline std::array<int, 6> automorphism_to_outer(const Face& f) {
    const auto h = FacedTriangulation::octahedron();
    std::array<int, 6> pi = {1, 2, 3, 4, 5, 6};
    do {
        bool aut = true;
        for (int a = 1; a <= 6 && aut; ++a)
            for (int b = a + 1; b <= 6 && aut; ++b) aut = h.has_edge(a, b) == h.has_edge(pi[a - 1], pi[b - 1]);
        if (!aut) continue;
        if (make_face(pi[f[0] - 1], pi[f[1] - 1], pi[f[2] - 1]) == Face{1, 2, 3}) return pi;
    } while (std::next_permutation(pi.begin(), pi.end()));
    throw std::logic_error("no automorphism found");
}

/// Label-preserving drawing of T_n(s): the octahedron drawn with a face
/// whose part is zero on the outside, the stacked vertices inside their faces.
inline std::optional<LabelledPointSet> draw_member(const Composition8& s, std::mt19937_64& rng) {
    int zero = -1;
    for (int i = 0; i < 8 && zero < 0; ++i)
        if (s.parts[i] == 0) zero = i;
    if (zero < 0) return std::nullopt;
    const auto pi = automorphism_to_outer(octahedron_faces()[zero]);
    const auto base = octahedron_base();
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<Point> pts;
        for (int v = 1; v <= 6; ++v) pts.push_back(base[pi[v - 1] - 1]);
        for (const auto& step : construction_steps(s))
            pts.push_back(inside_point(pts, step.face[0] - 1, step.face[1] - 1, step.face[2] - 1, rng));
        LabelledPointSet set(pts);
        if (!is_general_position(set)) continue;
        std::vector<int> id(pts.size());
        std::iota(id.begin(), id.end(), 0);
        if (!drawing_ok(PlanarGraph(build_T_of(s)), set, id)) continue;
        return set;
    }
    return std::nullopt;
}

inline Composition8 random_composition(long n, std::mt19937_64& rng) {
    Composition8 s;
    s.n = n;
    for (long k = 0; k < n - 6; ++k) ++s.parts[uniform_below(rng, 8)];
    return s;
}

}  // namespace oracle
