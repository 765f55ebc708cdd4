#include "ccol/geom.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ccol {

namespace {

constexpr long kFastLimit = 1L << 61;

bool small(const BigInt& v, long& out) {
    if (!mpz_fits_slong_p(v.get_mpz_t())) return false;
    out = v.get_si();
    return out > -kFastLimit && out < kFastLimit;
}

int sign_of(const BigInt& v) { return sgn(v); }

}  // namespace

LabelledPointSet::LabelledPointSet(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("point set must contain at least one point");
    std::vector<std::size_t> idx(points_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (points_[a].x != points_[b].x) return points_[a].x < points_[b].x;
        return points_[a].y < points_[b].y;
    });
    for (std::size_t i = 1; i < idx.size(); ++i) {
        if (points_[idx[i]] == points_[idx[i - 1]])
            throw std::invalid_argument("points " + std::to_string(idx[i - 1] + 1) + " and " +
                                        std::to_string(idx[i] + 1) + " coincide");
    }
}

LabelledPointSet LabelledPointSet::relabelled(std::span<const int> order) const {
    if (order.size() != points_.size()) throw std::invalid_argument("relabelling has wrong size");
    std::vector<Point> out;
    out.reserve(order.size());
    for (int i : order) out.push_back(points_.at(static_cast<std::size_t>(i)));
    return LabelledPointSet(std::move(out));
}

std::size_t triple_index(int n, int i, int j, int k) {
    // Triples before first element i, then pairs (j,k) with i<j<k.
    auto c3 = [](long m) { return m < 3 ? 0L : m * (m - 1) * (m - 2) / 6; };
    auto c2 = [](long m) { return m < 2 ? 0L : m * (m - 1) / 2; };
    long before_i = c3(n) - c3(n - i);
    long rest = n - i - 1;  // elements after i
    long jj = j - i - 1;
    long before_j = c2(rest) - c2(rest - jj);
    long kk = k - j - 1;
    return static_cast<std::size_t>(before_i + before_j + kk);
}

int orientation(const Point& a, const Point& b, const Point& c) {
    long ax, ay, bx, by, cx, cy;
    if (small(a.x, ax) && small(a.y, ay) && small(b.x, bx) && small(b.y, by) && small(c.x, cx) &&
        small(c.y, cy)) {
        __int128 det = static_cast<__int128>(bx - ax) * (cy - ay) -
                       static_cast<__int128>(by - ay) * (cx - ax);
        return (det > 0) - (det < 0);
    }
    BigInt det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return sign_of(det);
}

SignPattern sign_pattern(const LabelledPointSet& points) {
    const int n = static_cast<int>(points.size());
    if (n < 3) throw std::invalid_argument("sign pattern needs at least 3 points");
    SignPattern sp;
    sp.n = n;
    sp.entries.reserve(static_cast<std::size_t>(n) * (n - 1) * (n - 2) / 6);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                sp.entries.push_back(static_cast<std::int8_t>(orientation(points[i], points[j], points[k])));
    return sp;
}

bool is_general_position(const LabelledPointSet& points) {
    const auto sp = sign_pattern(points);
    return std::find(sp.entries.begin(), sp.entries.end(), 0) == sp.entries.end();
}

bool are_isomorphic(const LabelledPointSet& p, const LabelledPointSet& q) {
    if (p.size() != q.size()) throw std::invalid_argument("are_isomorphic: size mismatch");
    if (p.size() < 3) return true;
    return sign_pattern(p) == sign_pattern(q);
}

std::optional<std::vector<int>> are_combinatorially_equivalent(const LabelledPointSet& p,
                                                               const LabelledPointSet& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("are_combinatorially_equivalent: size mismatch");
    const int n = static_cast<int>(p.size());
    if (n < 3) {
        std::vector<int> id(static_cast<std::size_t>(n));
        std::iota(id.begin(), id.end(), 0);
        return id;
    }
    const OrientationTable tp(p);
    const OrientationTable tq(q);

    // Points taking part in more non-degenerate triples go first.
    std::vector<int> weight(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (i != j && i != k && tp.orient(i, j, k) != 0) ++weight[i];
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return weight[a] > weight[b]; });

    std::vector<int> tau(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);

    auto consistent = [&](int depth, int target) {
        const int i = order[depth];
        for (int a = 0; a < depth; ++a)
            for (int b = a + 1; b < depth; ++b) {
                const int j = order[a], k = order[b];
                if (tp.orient(i, j, k) != tq.orient(target, tau[j], tau[k])) return false;
            }
        return true;
    };

    auto search = [&](auto&& self, int depth) -> bool {
        if (depth == n) return true;
        const int i = order[depth];
        for (int t = 0; t < n; ++t) {
            if (used[t] || !consistent(depth, t)) continue;
            used[t] = true;
            tau[i] = t;
            if (self(self, depth + 1)) return true;
            used[t] = false;
            tau[i] = -1;
        }
        return false;
    };

    if (!search(search, 0)) return std::nullopt;
    return tau;
}

bool segments_properly_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
    if (a == b || c == d) throw std::invalid_argument("degenerate segment");
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a);
    const int o4 = orientation(c, d, b);

    if (o1 == 0 && o2 == 0) {
        // Same supporting line: compare projections on a non-degenerate axis.
        const bool use_x = a.x != b.x;
        auto key = [&](const Point& p) -> const BigInt& { return use_x ? p.x : p.y; };
        const BigInt& lo1 = std::min(key(a), key(b));
        const BigInt& hi1 = std::max(key(a), key(b));
        const BigInt& lo2 = std::min(key(c), key(d));
        const BigInt& hi2 = std::max(key(c), key(d));
        // A single common point is necessarily a shared endpoint.
        return std::min(hi1, hi2) > std::max(lo1, lo2);
    }

    auto on_segment = [](const Point& s, const Point& t, const Point& m) {
        return std::min(s.x, t.x) <= m.x && m.x <= std::max(s.x, t.x) && std::min(s.y, t.y) <= m.y &&
               m.y <= std::max(s.y, t.y);
    };
    bool meet = false;
    if (o1 * o2 < 0 && o3 * o4 < 0) meet = true;
    else if (o1 == 0 && on_segment(a, b, c)) meet = true;
    else if (o2 == 0 && on_segment(a, b, d)) meet = true;
    else if (o3 == 0 && on_segment(c, d, a)) meet = true;
    else if (o4 == 0 && on_segment(c, d, b)) meet = true;
    if (!meet) return false;
    // Lines are distinct, so the common point is unique; it only counts when
    // it is not an endpoint shared by both segments.
    const bool shared = a == c || a == d || b == c || b == d;
    return !shared;
}

OrientationTable::OrientationTable(const LabelledPointSet& points)
    : n_(static_cast<int>(points.size())) {
    const std::size_t cells = static_cast<std::size_t>(n_) * n_ * n_;
    orient_.assign(cells, 0);
    between_.assign(cells, 0);
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            for (int k = j + 1; k < n_; ++k) {
                const auto o = static_cast<std::int8_t>(orientation(points[i], points[j], points[k]));
                orient_[index(i, j, k)] = o;
                orient_[index(j, k, i)] = o;
                orient_[index(k, i, j)] = o;
                orient_[index(j, i, k)] = static_cast<std::int8_t>(-o);
                orient_[index(i, k, j)] = static_cast<std::int8_t>(-o);
                orient_[index(k, j, i)] = static_cast<std::int8_t>(-o);
                if (o != 0) continue;
                general_position_ = false;
                const int tri[3] = {i, j, k};
                for (int mid = 0; mid < 3; ++mid) {
                    const Point& m = points[tri[mid]];
                    const Point& s = points[tri[(mid + 1) % 3]];
                    const Point& t = points[tri[(mid + 2) % 3]];
                    BigInt dot = (m.x - s.x) * (t.x - m.x) + (m.y - s.y) * (t.y - m.y);
                    if (dot > 0) {
                        between_[index(tri[(mid + 1) % 3], tri[mid], tri[(mid + 2) % 3])] = 1;
                        between_[index(tri[(mid + 2) % 3], tri[mid], tri[(mid + 1) % 3])] = 1;
                    }
                }
            }
}

bool OrientationTable::segments_cross(int a, int b, int c, int d) const {
    if ((a == c && b == d) || (a == d && b == c)) return true;
    int shared = -1, u = -1, w = -1;
    if (a == c) shared = a, u = b, w = d;
    else if (a == d) shared = a, u = b, w = c;
    else if (b == c) shared = b, u = a, w = d;
    else if (b == d) shared = b, u = a, w = c;
    if (shared >= 0) {
        if (general_position_) return false;
        return strictly_between(shared, w, u) || strictly_between(shared, u, w);
    }
    const int o1 = orient(a, b, c);
    const int o2 = orient(a, b, d);
    const int o3 = orient(c, d, a);
    const int o4 = orient(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (general_position_) return false;
    return (o1 == 0 && strictly_between(a, c, b)) || (o2 == 0 && strictly_between(a, d, b)) ||
           (o3 == 0 && strictly_between(c, a, d)) || (o4 == 0 && strictly_between(c, b, d));
}

bool OrientationTable::strictly_inside(int p, int a, int b, int c) const {
    const int o1 = orient(a, b, p);
    return o1 != 0 && orient(b, c, p) == o1 && orient(c, a, p) == o1;
}

LabelledPointSet read_point_set(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("point set: missing count line");
    long n = 0;
    try {
        std::size_t used = 0;
        n = std::stol(line, &used);
        if (used != line.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw std::runtime_error("point set: bad count line '" + line + "'");
    }
    if (n < 1) throw std::runtime_error("point set: n must be positive");
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("point set: expected " + std::to_string(n) + " points, got " +
                                     std::to_string(i));
        const auto space = line.find(' ');
        if (space == std::string::npos || line.find(' ', space + 1) != std::string::npos)
            throw std::runtime_error("point set: line " + std::to_string(i + 2) + " is not 'x y'");
        try {
            pts.emplace_back(parse_bigint(line.substr(0, space)), parse_bigint(line.substr(space + 1)));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("point set: line " + std::to_string(i + 2) + ": " + e.what());
        }
    }
    return LabelledPointSet(std::move(pts));
}

void write_point_set(std::ostream& out, const LabelledPointSet& points) {
    out << points.size() << '\n';
    for (const auto& p : points.points()) out << p.x.get_str() << ' ' << p.y.get_str() << '\n';
}

}  // namespace ccol
