#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ccol/triangulations.hpp"

using namespace ccol;

namespace {

void check_triangulation(const FacedTriangulation& t) {
    const int n = t.n();
    CHECK(t.edges().size() == static_cast<std::size_t>(3 * n - 6));
    CHECK(t.faces().size() == static_cast<std::size_t>(2 * n - 4));
    std::map<Edge, int> incidence;
    for (const auto& f : t.faces()) {
        CHECK(t.has_edge(f[0], f[1]));
        CHECK(t.has_edge(f[0], f[2]));
        CHECK(t.has_edge(f[1], f[2]));
        ++incidence[{f[0], f[1]}];
        ++incidence[{f[0], f[2]}];
        ++incidence[{f[1], f[2]}];
    }
    for (const auto& e : t.edges()) CHECK(incidence[e] == 2);
    CHECK_FALSE(t.invariant_violation());
}

}  // namespace

TEST_CASE("K4") {
    const auto t = k4();
    CHECK(t.n() == 4);
    CHECK(t.stacks().empty());
    const auto e = t.expand();
    CHECK(e.edges() == std::set<Edge>{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    CHECK(e.faces() == std::set<Face>{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
    check_triangulation(e);
}

TEST_CASE("stacking") {
    const auto t5 = stack_child(k4(), {1, 2, 3});
    CHECK(t5.n() == 5);
    const auto e = t5.expand();
    for (const Edge& x : {Edge{1, 5}, Edge{2, 5}, Edge{3, 5}}) CHECK(e.edges().count(x));
    CHECK(e.edges().size() == 9);
    CHECK_FALSE(e.has_face({1, 2, 3}));
    check_triangulation(e);
    CHECK_THROWS_AS(stack_child(k4(), {1, 2, 6}), std::invalid_argument);
    CHECK_THROWS_AS(stack_child(t5, {1, 2, 3}), std::invalid_argument);
    CHECK_NOTHROW(stack_child(t5, {3, 2, 5}));  // corner order does not matter

    // Repeated stacking keeps the Euler counts and never drops an edge.
    auto t = k4();
    for (int i = 0; i < 20; ++i) {
        const auto before = t.expand();
        const Face f = *std::next(before.faces().begin(), i % static_cast<int>(before.faces().size()));
        t = stack_child(t, f);
        const auto after = t.expand();
        for (const auto& edge : before.edges()) CHECK(after.edges().count(edge));
        check_triangulation(after);
    }
    CHECK(t.expand().edges().size() == 3 * 24 - 6);
}

TEST_CASE("from_steps validates histories") {
    CHECK_NOTHROW(StackedTriangulation::from_steps({{5, {1, 2, 3}}, {6, {1, 2, 5}}}));
    CHECK_THROWS_AS(StackedTriangulation::from_steps({{6, {1, 2, 3}}}), std::invalid_argument);
    CHECK_THROWS_AS(StackedTriangulation::from_steps({{5, {1, 2, 3}}, {6, {1, 2, 3}}}), std::invalid_argument);
}

TEST_CASE("counting T_n") {
    CHECK(count_Tn(4) == 1);
    CHECK(count_Tn(5) == 4);
    CHECK(count_Tn(10) == 322560);
    CHECK(count_Tn(20) == BigInt("23310331287699456000"));
    // Number of face-choice sequences: prod over i = 5..n of (2i - 6).
    for (int n = 4; n <= 40; ++n) {
        BigInt sequences = 1;
        for (int i = 5; i <= n; ++i) sequences *= 2 * i - 6;
        CHECK(count_Tn(n) == sequences);
    }
    CHECK_THROWS_AS(count_Tn(3), std::invalid_argument);
}

TEST_CASE("enumeration matches the count and yields distinct graphs") {
    for (int n = 4; n <= 9; ++n) {
        std::set<std::uint64_t> masks;
        std::uint64_t seen = 0;
        for_each_Tn(n, [&](const StackedTriangulation& s, const FacedTriangulation& t) {
            ++seen;
            masks.insert(edge_mask(t.edges(), n));
            if (seen % 97 == 1) {
                CHECK(s.expand() == t);
                check_triangulation(t);
            }
        });
        INFO("n = " << n);
        CHECK(BigInt(std::to_string(seen)) == count_Tn(n));
        CHECK(masks.size() == seen);
    }
    CHECK(enumerate_Tn(5).size() == 4);
    CHECK(enumerate_Tn(4).front() == k4());
    CHECK_THROWS_AS(enumerate_Tn(11), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_Tn(3), std::invalid_argument);
}

TEST_CASE("enumeration order is lexicographic in the stacking faces") {
    const auto all = enumerate_Tn(6);
    for (std::size_t i = 1; i < all.size(); ++i) {
        std::vector<Face> a, b;
        for (const auto& s : all[i - 1].stacks()) a.push_back(s.face);
        for (const auto& s : all[i].stacks()) b.push_back(s.face);
        CHECK(a < b);
    }
}

TEST_CASE("uniform sampling") {
    CHECK(sample_uniform_Tn(4, 99) == k4());
    CHECK(sample_uniform_Tn(30, 7) == sample_uniform_Tn(30, 7));
    check_triangulation(sample_uniform_Tn(40, 1).expand());

    // 24 members of T_6, 10000 seeds: chi-square against the uniform law and
    // every cell within 3 sigma of its multinomial expectation.
    std::map<std::uint64_t, int> index;
    for (const auto& t : enumerate_Tn(6)) index.emplace(edge_mask(t.expand().edges(), 6), 0);
    REQUIRE(index.size() == 24);
    const int trials = 10000;
    for (int seed = 0; seed < trials; ++seed) {
        const auto mask = edge_mask(sample_uniform_Tn(6, static_cast<std::uint64_t>(seed)).expand().edges(), 6);
        REQUIRE(index.count(mask));
        ++index[mask];
    }
    const double expected = trials / 24.0;
    const double sigma = std::sqrt(trials * (1.0 / 24) * (23.0 / 24));
    double chi2 = 0;
    for (const auto& [mask, count] : index) {
        chi2 += (count - expected) * (count - expected) / expected;
        CHECK(std::abs(count - expected) <= 3 * sigma);
    }
    // 23 degrees of freedom; 49.7 is the 0.999 quantile.
    CHECK(chi2 < 49.7);
}

TEST_CASE("octahedron") {
    const auto h = FacedTriangulation::octahedron();
    CHECK(h.n() == 6);
    CHECK(h.edges().size() == 12);
    CHECK(h.faces().size() == 8);
    CHECK_FALSE(h.has_edge(1, 6));
    CHECK_FALSE(h.has_edge(2, 5));
    CHECK_FALSE(h.has_edge(3, 4));
    check_triangulation(h);
    std::map<int, int> degree;
    for (const auto& [a, b] : h.edges()) ++degree[a], ++degree[b];
    for (int v = 1; v <= 6; ++v) CHECK(degree[v] == 4);
    for (const auto& f : octahedron_faces()) {
        CHECK(h.has_face(f));
        for (const auto& [a, b] : octahedron_non_edges()) {
            const bool has_a = std::find(f.begin(), f.end(), a) != f.end();
            const bool has_b = std::find(f.begin(), f.end(), b) != f.end();
            CHECK_FALSE((has_a && has_b));
        }
    }
    CHECK(octahedron_faces()[0] == Face{1, 2, 3});
    CHECK(octahedron_faces()[7] == Face{6, 4, 2});
}
