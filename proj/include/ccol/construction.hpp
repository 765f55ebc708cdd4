#pragma once

// The explicit octahedron-based conflict collection: compositions of n-6 into
// eight parts, the selected first n(n-1)...(n-5)+1 of them in lexicographic
// order, and the triangulation built from each.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ccol/bigint.hpp"
#include "ccol/triangulations.hpp"

namespace ccol {

/// 7! -- the smallest n for which the collection is a conflict collection.
constexpr long kConstructionMinN = 5040;

enum class SizeGuard { Enforce, OverrideSmall };

struct Composition8 {
    long n = 0;
    std::array<long, 8> parts{};

    /// Throws std::invalid_argument unless parts are >= 0 and sum to n-6.
    void validate() const;
    friend bool operator==(const Composition8&, const Composition8&) = default;
    friend auto operator<=>(const Composition8&, const Composition8&) = default;
};

std::string to_string(const Composition8& s);

struct CollectionIndex {
    BigInt value;
};

/// C(n+1, 7), the number of compositions of n-6 into 8 parts.
BigInt count_S_n(long n);

/// n(n-1)(n-2)(n-3)(n-4)(n-5) + 1. Below n = 5040 requires OverrideSmall.
BigInt collection_size(long n, SizeGuard guard = SizeGuard::Enforce);

/// Number of valid indices: collection_size(n), additionally capped by
/// count_S_n(n) in override mode where the collection would outgrow S_n.
BigInt index_limit(long n, SizeGuard guard = SizeGuard::Enforce);

/// idx-th composition of n-6 into 8 parts in lexicographic order.
Composition8 composition_at(long n, const CollectionIndex& idx, SizeGuard guard = SizeGuard::Enforce);
/// Inverse of composition_at (no range guard; any valid composition ranks).
BigInt rank_composition(const Composition8& s);

/// Stacking sequence used by build_T_of: (new vertex, face) pairs on top of
/// the octahedron, face f1 first.
std::vector<StackStep> construction_steps(const Composition8& s);
FacedTriangulation build_T_of(const Composition8& s);
FacedTriangulation conflict_collection_member(long n, const CollectionIndex& idx,
                                              SizeGuard guard = SizeGuard::Enforce);

/// Empty when `t` is a valid triangulation on s.n vertices whose induced
/// subgraph on 1..6 is exactly the octahedron.
std::optional<std::string> member_violation(const Composition8& s, const FacedTriangulation& t);

}  // namespace ccol
