// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "ccol/bounds.hpp"
#include "oracles.hpp"

using namespace ccol;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

std::vector<int> identity(std::size_t n) {
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    return id;
}

/// General-position points inside a large triangle, so the hull is a triangle
/// and stacked triangulations have a chance to embed.
LabelledPointSet points_in_triangle(int n, std::mt19937_64& rng) {
    while (true) {
        std::vector<Point> pts{Point(0, 0), Point(100000, 0), Point(0, 100000)};
        while (static_cast<int>(pts.size()) < n) {
            const long x = oracle::draw(rng, 1, 99998), y = oracle::draw(rng, 1, 99998);
            if (x + y < 100000) pts.emplace_back(x, y);
        }
        std::vector<int> perm = identity(pts.size());
        std::shuffle(perm.begin(), perm.end(), rng);
        bool distinct = true;
        for (std::size_t i = 0; i < pts.size() && distinct; ++i)
            for (std::size_t j = i + 1; j < pts.size() && distinct; ++j) distinct = !(pts[i] == pts[j]);
        if (!distinct) continue;
        const auto set = LabelledPointSet(pts).relabelled(perm);
        if (is_general_position(set)) return set;
    }
}

Outcome criterion_1() {
    Outcome o;
    const auto range = verify_sigma_range(107, 193, 30);
    o.require(range.ok, "verify_sigma_range(107, 193, 30)");
    for (const auto& row : range.rows) o.require(row.certified, "n = " + std::to_string(row.n) + " uncertified");
    long outside = 0;
    for (long n = 100; n <= 200; ++n) {
        if (n >= 107 && n <= 193) continue;
        const auto r = sigma_bound_for(n);
        o.require(r.certified && r.sigma_bound > 30, "n = " + std::to_string(n) + " not above 30");
        ++outside;
    }
    o.detail << range.rows.size() << " values certified at 30, " << outside << " outside values above 30";
    return o;
}

Outcome criterion_2() {
    Outcome o;
    for (int n = 4; n <= 9; ++n) {
        std::set<std::uint64_t> masks;
        std::uint64_t seen = 0;
        for_each_Tn(n, [&](const StackedTriangulation&, const FacedTriangulation& t) {
            ++seen;
            masks.insert(edge_mask(t.edges(), n));
        });
        BigInt formula = pow2(static_cast<unsigned long>(n - 4)) * factorial(n - 3);
        o.require(BigInt(std::to_string(seen)) == formula && count_Tn(n) == formula,
                  "count at n = " + std::to_string(n));
        o.require(masks.size() == seen, "duplicate graph at n = " + std::to_string(n));
        o.detail << "|T_" << n << "|=" << seen << " ";
    }
    return o;
}

Outcome criterion_3() {
    Outcome o;
    const auto all = enumerate_Tn(7);
    const std::vector<PlanarGraph> graphs(all.begin(), all.end());
    std::mt19937_64 rng(1003);
    int with_member = 0;
    const int trials = 1200;
    for (int trial = 0; trial < trials; ++trial) {
        const auto p = trial % 2 ? points_in_triangle(7, rng) : oracle::random_general_position(7, rng, 1000);
        std::vector<std::size_t> hits;
        for (std::size_t i = 0; i < graphs.size(); ++i)
            if (oracle::drawing_ok(graphs[i], p, identity(7))) hits.push_back(i);
        o.require(hits.size() <= 1, "two members drawn on one set");
        const auto r = reconstruct_stacked(p);
        o.require(r.has_value() == (hits.size() == 1), "reconstruction disagrees on existence");
        if (r && hits.size() == 1) {
            o.require(*r == all[hits[0]], "reconstruction returned the wrong member");
            ++with_member;
        }
    }
    o.require(with_member > 0, "no set admitted a member");
    o.detail << trials << " sets, " << with_member << " with exactly one member, none with more";
    return o;
}

Outcome criterion_4() {
    Outcome o;
    std::mt19937_64 rng(1004);
    int pairs[2] = {0, 0}, embeds = 0;
    for (int n : {5, 6}) {
        for (int trial = 0; trial < 220; ++trial) {
            const auto t = sample_uniform_Tn(n, rng());
            const auto p = trial % 2 ? points_in_triangle(n, rng) : oracle::random_points(n, rng, trial % 4 ? 1000 : 3);
            const PlanarGraph g(t);
            const auto v = embeds_on(g, p);
            const auto brute = oracle::brute_force_embedding(g, p);
            o.require(v.outcome != Verdict::Unknown, "search hit its budget");
            o.require(v.embeds() == brute.has_value(), "verdict differs from brute force");
            if (v.embeds()) {
                o.require(v.witness && oracle::drawing_ok(g, p, v.witness->target), "bad witness");
                ++embeds;
            }
            ++pairs[n - 5];
        }
    }
    int recon = 0;
    for (int n = 4; n <= 7; ++n) {
        const auto all = enumerate_Tn(n);
        for (int trial = 0; trial < 100; ++trial) {
            const auto p = trial % 2 ? points_in_triangle(n, rng) : oracle::random_general_position(n, rng, 50);
            std::optional<StackedTriangulation> truth;
            int hits = 0;
            for (const auto& t : all)
                if (oracle::drawing_ok(PlanarGraph(t), p, identity(static_cast<std::size_t>(n)))) truth = t, ++hits;
            o.require(hits <= 1 && reconstruct_stacked(p) == truth, "reconstruction at n = " + std::to_string(n));
            ++recon;
        }
    }
    o.detail << pairs[0] << " pairs at n=5, " << pairs[1] << " at n=6 (" << embeds << " embed); " << recon
             << " reconstructions at n=4..7";
    return o;
}

Outcome criterion_5() {
    Outcome o;
    // (a)
    const BigInt ff = BigInt(5040) * 5039 * 5038 * 5037 * 5036 * 5035;
    o.require(collection_size(5040) == ff + 1, "collection_size(5040)");
    o.require(count_S_n(5040) > collection_size(5040), "count_S_n(5040) too small");
    // (b)
    std::mt19937_64 rng(1005);
    double slowest = 0;
    for (int i = 0; i < 100; ++i) {
        BigInt idx = 0;
        for (int w = 0; w < 2; ++w) idx = idx * pow2(64) + BigInt(std::to_string(rng()));
        idx %= collection_size(5040);
        const auto start = std::chrono::steady_clock::now();
        const auto t = conflict_collection_member(5040, {idx});
        const bool valid = !member_violation(composition_at(5040, {idx}), t);
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        slowest = std::max(slowest, s);
        o.require(valid && s < 1.0, "member " + idx.get_str());
    }
    // (c) and (d)
    long checks = 0, embeddings = 0, drawn_sets = 0, extensions = 0;
    std::uint64_t mismatches = 0;
    for (long n : {8L, 9L, 10L}) {
        int pairs = 0;
        while (pairs < 10) {
            const auto s = oracle::random_composition(n, rng), t = oracle::random_composition(n, rng);
            if (s == t) continue;
            ++pairs;
            for (int k = 0; k < 20; ++k) {
                std::optional<LabelledPointSet> p;
                if (k % 4 == 1) p = oracle::draw_member(s, rng);
                if (k % 4 == 3) p = oracle::draw_member(t, rng);
                if (p) ++drawn_sets;
                else p = k % 2 ? points_in_triangle(static_cast<int>(n), rng)
                               : oracle::random_general_position(static_cast<int>(n), rng);
                const auto r = octahedron_consistency_check(s, t, n, *p);
                o.require(r.complete, "consistency search incomplete");
                o.require(r.holds, "one octahedron placement extends to " + to_string(s) + " and " + to_string(t));
                mismatches += r.face_count_mismatches;
                embeddings += static_cast<long>(r.embeddings_checked);
                extensions += static_cast<long>(r.extend_first + r.extend_second);
                ++checks;
            }
        }
    }
    o.require(mismatches == 0, "face-interior count mismatch");
    o.require(embeddings > 0 && drawn_sets > 0, "no embedding was ever found");
    o.detail << "size and 100 members at n=5040 ok (slowest " << slowest << " s); " << checks
             << " consistency checks at n=8..10 (" << drawn_sets << " on drawn members), " << embeddings
             << " embeddings face-count checked, 0 mismatches";
    return o;
}

Outcome criterion_6() {
    Outcome o;
    std::mt19937_64 rng(1006);
    const double total7 = 192;
    int max_lp = 0;
    double max_fraction[2] = {0, 0};
    for (int n : {7, 8}) {
        const int trials = n == 7 ? 200 : 50;
        const double bound = 16.0 * n * (n - 1) * (n - 2) / std::pow(2.0, n);
        for (int trial = 0; trial < trials; ++trial) {
            const auto p = trial % 2 ? points_in_triangle(n, rng) : oracle::random_general_position(n, rng);
            const auto c = exact_embedding_counts(n, p);
            const double fraction = static_cast<double>(c.embeddable_count) / c.total.get_d();
            max_fraction[n - 7] = std::max(max_fraction[n - 7], fraction);
            o.require(fraction <= std::min(1.0, bound), "embeddable fraction above the bound");
            if (n == 7) {
                max_lp = std::max(max_lp, static_cast<int>(c.label_preserving_count));
                o.require(c.label_preserving_count <= 1 && c.total == 192, "label-preserving count above 1 of 192");
            }
        }
        o.detail << "n=" << n << ": bound 16n(n-1)(n-2)/2^n = " << bound << (bound >= 1 ? " (vacuous)" : "")
                 << ", max embeddable fraction " << max_fraction[n - 7] << "; ";
    }
    o.detail << "max label-preserving count at n=7 is " << max_lp << " (bound 1/" << total7 << ")";
    return o;
}

Outcome criterion_7() {
    Outcome o;
    const std::vector<long> ns{1L << 10, 1L << 12, 1L << 14};
    const auto rows = asymptotic_trend(ns);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        o.require(rows[i].certified, "uncertified at n = " + std::to_string(rows[i].n));
        o.require(rows[i].ratio > 3.0 && rows[i].ratio < 4.5, "ratio out of (3, 4.5)");
        if (i) o.require(rows[i].ratio < rows[i - 1].ratio, "ratios not decreasing");
        o.detail << "n=" << rows[i].n << " sigma=" << rows[i].sigma_bound << " ratio=" << rows[i].ratio << "; ";
    }
    return o;
}

Outcome criterion_8() {
    Outcome o;
    std::mt19937_64 rng(1008);
    const int cases = 10000;
    for (int trial = 0; trial < cases; ++trial) {
        const long r = trial % 3 == 0 ? 4 : (trial % 3 == 1 ? 1000 : 1L << 62);
        std::array<Point, 3> p;
        for (auto& q : p) q = Point(BigInt(oracle::draw(rng, -r, r)), BigInt(oracle::draw(rng, -r, r)));
        const int o0 = orientation(p[0], p[1], p[2]);
        o.require(o0 == oracle::orient_ref(p[0], p[1], p[2]), "orientation differs from the determinant");
        o.require(o0 == -orientation(p[1], p[0], p[2]), "antisymmetry");
        o.require(o0 == orientation(p[1], p[2], p[0]), "cyclic invariance");
        // Orientation-preserving affine map with integer entries.
        long a, b, c, d;
        do {
            a = oracle::draw(rng, -9, 9), b = oracle::draw(rng, -9, 9), c = oracle::draw(rng, -9, 9),
            d = oracle::draw(rng, -9, 9);
        } while (a * d - b * c == 0);
        const long tx = oracle::draw(rng, -1000, 1000), ty = oracle::draw(rng, -1000, 1000);
        auto f = [&](const Point& q) { return Point(BigInt(a * q.x + b * q.y + tx), BigInt(c * q.x + d * q.y + ty)); };
        const int sign = a * d - b * c > 0 ? 1 : -1;
        o.require(orientation(f(p[0]), f(p[1]), f(p[2])) == sign * o0, "affine invariance");
    }
    // Isomorphy as an equivalence relation, and equivalence witnesses.
    for (int trial = 0; trial < cases; ++trial) {
        const int n = 4 + trial % 4;
        const auto x = oracle::random_general_position(n, rng, 8);
        std::vector<int> perm = identity(static_cast<std::size_t>(n));
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto y = x.relabelled(perm);
        const auto z = oracle::random_general_position(n, rng, 8);
        o.require(are_isomorphic(x, x), "reflexivity");
        o.require(are_isomorphic(x, z) == are_isomorphic(z, x), "symmetry");
        if (are_isomorphic(x, z) && are_isomorphic(z, y)) o.require(are_isomorphic(x, y), "transitivity");
        const auto w = are_combinatorially_equivalent(x, y);
        o.require(w.has_value() && are_isomorphic(x, y.relabelled(*w)), "witness round trip");
        const auto v = are_combinatorially_equivalent(x, z);
        if (v) o.require(are_isomorphic(x, z.relabelled(*v)), "witness round trip on independent sets");
    }
    o.detail << cases << " predicate cases and " << cases << " equivalence cases";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"sigma bound certified at 30 on 107..193 and above 30 just outside", criterion_1},
        {"|T_n| = 2^(n-4)(n-3)! with distinct graphs for n = 4..9", criterion_2},
        {"at most one label-preserving member of T_7, found by reconstruction", criterion_3},
        {"placement search and reconstruction agree with exhaustive oracles", criterion_4},
        {"octahedron collection: size, members, consistency and face counts", criterion_5},
        {"embedding probabilities respect the counting bounds", criterion_6},
        {"sigma_bound / log2(n) decreasing within (3, 4.5)", criterion_7},
        {"geometry kernel invariants", criterion_8},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && o.pass;
        std::printf("criterion %zu: %s  %s [%.1f s] %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, s,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
