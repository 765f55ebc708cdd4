#include "ccol/triangulations.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace ccol {

namespace {

std::string face_str(const Face& f) {
    return "(" + std::to_string(f[0]) + "," + std::to_string(f[1]) + "," + std::to_string(f[2]) + ")";
}

}  // namespace

Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

Face make_face(int a, int b, int c) {
    Face f{a, b, c};
    std::sort(f.begin(), f.end());
    return f;
}

FacedTriangulation FacedTriangulation::k4() {
    FacedTriangulation t;
    t.n_ = 4;
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b) t.edges_.insert({a, b});
    t.faces_ = {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}};
    return t;
}

const std::array<Face, 8>& octahedron_faces() {
    static const std::array<Face, 8> faces = {{{1, 2, 3}, {1, 3, 5}, {1, 5, 4}, {1, 4, 2},
                                               {6, 2, 3}, {6, 3, 5}, {6, 5, 4}, {6, 4, 2}}};
    return faces;
}

const std::array<Edge, 3>& octahedron_non_edges() {
    static const std::array<Edge, 3> pairs = {{{1, 6}, {2, 5}, {3, 4}}};
    return pairs;
}

FacedTriangulation FacedTriangulation::octahedron() {
    FacedTriangulation t;
    t.n_ = 6;
    for (const auto& f : octahedron_faces()) {
        t.faces_.insert(make_face(f));
        t.edges_.insert(make_edge(f[0], f[1]));
        t.edges_.insert(make_edge(f[1], f[2]));
        t.edges_.insert(make_edge(f[0], f[2]));
    }
    return t;
}

void FacedTriangulation::stack_in_place(const Face& face) {
    const Face f = make_face(face);
    auto it = faces_.find(f);
    if (it == faces_.end()) throw std::invalid_argument("face " + face_str(f) + " is not a face");
    faces_.erase(it);
    const int v = ++n_;
    for (int c : f) edges_.insert({c, v});
    faces_.insert({f[0], f[1], v});
    faces_.insert({f[0], f[2], v});
    faces_.insert({f[1], f[2], v});
}

FacedTriangulation FacedTriangulation::with_stacked(const Face& face) const& {
    FacedTriangulation copy = *this;
    copy.stack_in_place(face);
    return copy;
}

FacedTriangulation FacedTriangulation::with_stacked(const Face& face) && {
    stack_in_place(face);
    return std::move(*this);
}

std::optional<std::string> FacedTriangulation::invariant_violation() const {
    if (n_ < 3) return "fewer than 3 vertices";
    const std::size_t n = static_cast<std::size_t>(n_);
    if (edges_.size() != 3 * n - 6)
        return "edge count " + std::to_string(edges_.size()) + " != 3n-6 = " + std::to_string(3 * n - 6);
    if (faces_.size() != 2 * n - 4)
        return "face count " + std::to_string(faces_.size()) + " != 2n-4 = " + std::to_string(2 * n - 4);
    std::map<Edge, int> incidence;
    for (const auto& f : faces_) {
        if (!(f[0] < f[1] && f[1] < f[2]) || f[0] < 1 || f[2] > n_) return "malformed face " + face_str(f);
        for (const Edge& e : {Edge{f[0], f[1]}, Edge{f[0], f[2]}, Edge{f[1], f[2]}}) {
            if (!edges_.count(e)) return "face " + face_str(f) + " uses a non-edge";
            ++incidence[e];
        }
    }
    for (const auto& e : edges_) {
        if (e.first < 1 || e.second > n_ || e.first >= e.second) return "malformed edge";
        const int k = incidence.count(e) ? incidence.at(e) : 0;
        if (k != 2)
            return "edge {" + std::to_string(e.first) + "," + std::to_string(e.second) + "} lies in " +
                   std::to_string(k) + " faces";
    }
    return std::nullopt;
}

StackedTriangulation StackedTriangulation::k4() { return StackedTriangulation(); }

StackedTriangulation StackedTriangulation::from_steps(std::vector<StackStep> steps) {
    FacedTriangulation t = FacedTriangulation::k4();
    for (std::size_t i = 0; i < steps.size(); ++i) {
        auto& s = steps[i];
        if (s.vertex != static_cast<int>(i) + 5)
            throw std::invalid_argument("stack step " + std::to_string(i) + " must add vertex " +
                                        std::to_string(i + 5));
        s.face = make_face(s.face);
        t = std::move(t).with_stacked(s.face);
    }
    StackedTriangulation st;
    st.stacks_ = std::move(steps);
    return st;
}

FacedTriangulation StackedTriangulation::expand() const {
    FacedTriangulation t = FacedTriangulation::k4();
    for (const auto& s : stacks_) t = std::move(t).with_stacked(s.face);
    return t;
}

StackedTriangulation k4() { return StackedTriangulation::k4(); }

StackedTriangulation stack_child(const StackedTriangulation& t, const Face& face) {
    const Face f = make_face(face);
    if (!t.expand().has_face(f)) throw std::invalid_argument("face " + face_str(f) + " is not a face");
    auto steps = t.stacks();
    steps.push_back({t.n() + 1, f});
    return StackedTriangulation::from_steps(std::move(steps));
}

void for_each_Tn(int n,
                 const std::function<void(const StackedTriangulation&, const FacedTriangulation&)>& visit,
                 bool override_guard) {
    if (n < 4) throw std::invalid_argument("T_n needs n >= 4");
    if (n > kEnumerateGuard && !override_guard)
        throw std::invalid_argument("enumerating T_" + std::to_string(n) + " exceeds the n <= " +
                                    std::to_string(kEnumerateGuard) + " guard");
    std::vector<StackStep> steps;
    auto descend = [&](auto&& self, const FacedTriangulation& t) -> void {
        if (t.n() == n) {
            visit(StackedTriangulation::from_steps(steps), t);
            return;
        }
        for (const auto& f : t.faces()) {
            steps.push_back({t.n() + 1, f});
            self(self, t.with_stacked(f));
            steps.pop_back();
        }
    };
    descend(descend, FacedTriangulation::k4());
}

std::vector<StackedTriangulation> enumerate_Tn(int n, bool override_guard) {
    std::vector<StackedTriangulation> out;
    for_each_Tn(
        n, [&](const StackedTriangulation& s, const FacedTriangulation&) { out.push_back(s); },
        override_guard);
    return out;
}

BigInt count_Tn(int n) {
    if (n < 4) throw std::invalid_argument("count_Tn needs n >= 4");
    return pow2(static_cast<std::uint64_t>(n - 4)) * factorial(static_cast<std::uint64_t>(n - 3));
}

StackedTriangulation sample_uniform_Tn(int n, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("sample_uniform_Tn needs n >= 4");
    std::mt19937_64 rng(seed);
    FacedTriangulation t = FacedTriangulation::k4();
    std::vector<StackStep> steps;
    while (t.n() < n) {
        const auto pick = uniform_below(rng, t.faces().size());
        const Face f = *std::next(t.faces().begin(), static_cast<long>(pick));
        steps.push_back({t.n() + 1, f});
        t = std::move(t).with_stacked(f);
    }
    return StackedTriangulation::from_steps(std::move(steps));
}

std::uint64_t edge_mask(const std::set<Edge>& edges, int n) {
    if (n > 11) throw std::invalid_argument("edge_mask supports n <= 11");
    std::uint64_t mask = 0;
    for (const auto& [a, b] : edges) mask |= std::uint64_t{1} << ((b - 1) * (b - 2) / 2 + (a - 1));
    return mask;
}

}  // namespace ccol
