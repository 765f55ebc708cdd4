#include "ccol/construction.hpp"

#include <numeric>
#include <stdexcept>

namespace ccol {

namespace {

// Compositions of r into p non-negative parts.
BigInt compositions(long r, long p) {
    if (r < 0) return 0;
    return binomial(static_cast<std::uint64_t>(r + p - 1), static_cast<std::uint64_t>(p - 1));
}

// Compositions of r into p parts whose first part is < v.
BigInt first_part_below(long r, long p, long v) { return compositions(r, p) - compositions(r - v, p); }

void require_n(long n, SizeGuard guard) {
    if (n < 6) throw std::invalid_argument("construction needs n >= 6");
    if (n < kConstructionMinN && guard == SizeGuard::Enforce)
        throw std::invalid_argument("n = " + std::to_string(n) +
                                    " is below 7! = 5040; pass the small-n override for desk-scale runs");
}

}  // namespace

void Composition8::validate() const {
    if (n < 6) throw std::invalid_argument("composition needs n >= 6");
    long sum = 0;
    for (long p : parts) {
        if (p < 0) throw std::invalid_argument("composition has a negative part");
        sum += p;
    }
    if (sum != n - 6)
        throw std::invalid_argument("composition parts sum to " + std::to_string(sum) + ", expected n-6 = " +
                                    std::to_string(n - 6));
}

std::string to_string(const Composition8& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.parts.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s.parts[i]);
    }
    return out + ")";
}

BigInt count_S_n(long n) {
    if (n < 6) throw std::invalid_argument("count_S_n needs n >= 6");
    return binomial(static_cast<std::uint64_t>(n + 1), 7);
}

BigInt collection_size(long n, SizeGuard guard) {
    require_n(n, guard);
    return falling_factorial(BigInt(n), 6) + 1;
}

BigInt index_limit(long n, SizeGuard guard) {
    BigInt size = collection_size(n, guard);
    BigInt all = count_S_n(n);
    return size < all ? size : all;
}

Composition8 composition_at(long n, const CollectionIndex& idx, SizeGuard guard) {
    if (idx.value < 0 || idx.value >= index_limit(n, guard))
        throw std::out_of_range("collection index " + idx.value.get_str() + " out of range for n = " +
                                std::to_string(n));
    Composition8 s;
    s.n = n;
    BigInt rest = idx.value;
    long r = n - 6;
    for (int j = 0; j < 7; ++j) {
        const long p = 8 - j;
        // Largest v with first_part_below(r, p, v) <= rest.
        long lo = 0, hi = r;
        while (lo < hi) {
            const long mid = lo + (hi - lo + 1) / 2;
            if (first_part_below(r, p, mid) <= rest) lo = mid;
            else hi = mid - 1;
        }
        rest -= first_part_below(r, p, lo);
        s.parts[j] = lo;
        r -= lo;
    }
    s.parts[7] = r;
    return s;
}

BigInt rank_composition(const Composition8& s) {
    s.validate();
    BigInt rank = 0;
    long r = s.n - 6;
    for (int j = 0; j < 7; ++j) {
        rank += first_part_below(r, 8 - j, s.parts[j]);
        r -= s.parts[j];
    }
    return rank;
}

std::vector<StackStep> construction_steps(const Composition8& s) {
    s.validate();
    std::vector<StackStep> steps;
    steps.reserve(static_cast<std::size_t>(s.n - 6));
    int next = 7;
    const auto& faces = octahedron_faces();
    for (std::size_t i = 0; i < faces.size(); ++i) {
        Face face = make_face(faces[i]);
        for (long k = 0; k < s.parts[i]; ++k) {
            const int q = next++;
            steps.push_back({q, face});
            // Next vertex goes into (q, two lowest corners of the face q used).
            face = make_face(q, face[0], face[1]);
        }
    }
    return steps;
}

FacedTriangulation build_T_of(const Composition8& s) {
    FacedTriangulation t = FacedTriangulation::octahedron();
    for (const auto& step : construction_steps(s)) t = std::move(t).with_stacked(step.face);
    return t;
}

FacedTriangulation conflict_collection_member(long n, const CollectionIndex& idx, SizeGuard guard) {
    return build_T_of(composition_at(n, idx, guard));
}

std::optional<std::string> member_violation(const Composition8& s, const FacedTriangulation& t) {
    if (t.n() != s.n) return "vertex count " + std::to_string(t.n()) + " != " + std::to_string(s.n);
    if (auto bad = t.invariant_violation()) return bad;
    const auto h = FacedTriangulation::octahedron();
    for (int a = 1; a <= 6; ++a)
        for (int b = a + 1; b <= 6; ++b)
            if (t.has_edge(a, b) != h.has_edge(a, b))
                return "induced subgraph on 1..6 differs from the octahedron at {" + std::to_string(a) + "," +
                       std::to_string(b) + "}";
    return std::nullopt;
}

}  // namespace ccol
