#pragma once

// Exact planar predicates over integer coordinates and order-type tests.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ccol/bigint.hpp"

namespace ccol {

struct Point {
    BigInt x;
    BigInt y;

    Point() = default;
    Point(BigInt x_, BigInt y_) : x(std::move(x_)), y(std::move(y_)) {}
    Point(long x_, long y_) : x(x_), y(y_) {}

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
};

/// Points labelled 1..n by position. Point with label k is stored at index k-1.
class LabelledPointSet {
public:
    LabelledPointSet() = default;
    /// Throws std::invalid_argument when empty or when two points coincide.
    explicit LabelledPointSet(std::vector<Point> points);

    std::size_t size() const { return points_.size(); }
    const Point& operator[](std::size_t index) const { return points_[index]; }
    std::span<const Point> points() const { return points_; }

    friend bool operator==(const LabelledPointSet&, const LabelledPointSet&) = default;

    /// Point set whose label i+1 carries this set's point order[i].
    LabelledPointSet relabelled(std::span<const int> order) const;

private:
    std::vector<Point> points_;
};

/// Orientations of all lexicographic triples i<j<k (labels 1-based).
struct SignPattern {
    int n = 0;
    std::vector<std::int8_t> entries;

    friend bool operator==(const SignPattern&, const SignPattern&) = default;
    friend auto operator<=>(const SignPattern&, const SignPattern&) = default;
};

/// Position of triple (i,j,k), 0-based i<j<k, inside a SignPattern of size n.
std::size_t triple_index(int n, int i, int j, int k);

/// +1 counterclockwise, 0 collinear, -1 clockwise.
int orientation(const Point& a, const Point& b, const Point& c);

SignPattern sign_pattern(const LabelledPointSet& points);
bool is_general_position(const LabelledPointSet& points);
bool are_isomorphic(const LabelledPointSet& p, const LabelledPointSet& q);

/// Searches a permutation tau (0-based) with orientation(p_i,p_j,p_k) equal to
/// orientation(q_tau[i], q_tau[j], q_tau[k]) for every triple.
std::optional<std::vector<int>> are_combinatorially_equivalent(const LabelledPointSet& p,
                                                               const LabelledPointSet& q);

/// True iff the closed segments ab and cd share a point that is not a shared
/// endpoint. Collinear overlaps count.
bool segments_properly_intersect(const Point& a, const Point& b, const Point& c, const Point& d);

/// Dense table of orientations and collinear betweenness for one point set,
/// addressed by 0-based point index. Everything downstream of geometry runs on
/// this table, so each determinant is evaluated once.
class OrientationTable {
public:
    explicit OrientationTable(const LabelledPointSet& points);

    int size() const { return n_; }
    int orient(int i, int j, int k) const { return orient_[index(i, j, k)]; }
    /// m lies in the relative interior of segment ab.
    bool strictly_between(int a, int m, int b) const { return between_[index(a, m, b)] != 0; }
    bool general_position() const { return general_position_; }

    /// Closed segments ab and cd share a point other than a shared endpoint.
    bool segments_cross(int a, int b, int c, int d) const;
    /// p strictly inside triangle abc (either orientation).
    bool strictly_inside(int p, int a, int b, int c) const;

private:
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
    }

    int n_ = 0;
    bool general_position_ = true;
    std::vector<std::int8_t> orient_;
    std::vector<std::uint8_t> between_;
};

/// Point-set text format: first line n, then n lines "x y".
LabelledPointSet read_point_set(std::istream& in);
void write_point_set(std::ostream& out, const LabelledPointSet& points);

}  // namespace ccol
