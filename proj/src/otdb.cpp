#include "ccol/otdb.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>

namespace ccol {

namespace {

constexpr long kGrid = 1L << 16;

int bytes_per_coord(CoordWidth w) { return static_cast<int>(w) / 8; }

void check_n(int n) {
    if (n < 3) throw std::invalid_argument("order-type records need n >= 3");
}

LabelledPointSet decode(const unsigned char* data, int n, CoordWidth width) {
    const int b = bytes_per_coord(width);
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        long c[2];
        for (int j = 0; j < 2; ++j) {
            const unsigned char* p = data + (2 * i + j) * b;
            c[j] = b == 1 ? p[0] : p[0] | (p[1] << 8);
        }
        pts.emplace_back(c[0], c[1]);
    }
    return LabelledPointSet(std::move(pts));
}

// Labelling from hull vertex h, the rest in counterclockwise order around h;
// `s` = -1 evaluates the mirror image.
SignPattern pattern_from(const OrientationTable& t, int h, int s) {
    const int n = t.size();
    std::vector<int> order;
    for (int i = 0; i < n; ++i)
        if (i != h) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return s * t.orient(h, a, b) > 0; });
    order.insert(order.begin(), h);
    SignPattern sp;
    sp.n = n;
    sp.entries.reserve(static_cast<std::size_t>(n) * (n - 1) * (n - 2) / 6);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                sp.entries.push_back(static_cast<std::int8_t>(s * t.orient(order[i], order[j], order[k])));
    return sp;
}

std::vector<int> hull_vertices(const OrientationTable& t) {
    const int n = t.size();
    std::vector<int> hull;
    for (int p = 0; p < n; ++p) {
        bool inside = false;
        for (int a = 0; a < n && !inside; ++a)
            for (int b = a + 1; b < n && !inside; ++b)
                for (int c = b + 1; c < n && !inside; ++c)
                    if (p != a && p != b && p != c && t.strictly_inside(p, a, b, c)) inside = true;
        if (!inside) hull.push_back(p);
    }
    return hull;
}

long draw(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

std::vector<Point> sample_points(int n, std::mt19937_64& rng) {
    std::vector<Point> pts;
    const auto mode = uniform_below(rng, 3);
    for (int i = 0; i < n; ++i) {
        long x = 0, y = 0;
        if (mode == 0 || i == 0) {
            x = draw(rng, 0, kGrid - 1);
            y = draw(rng, 0, kGrid - 1);
        } else if (mode == 1) {
            // Cluster around an earlier point at a random scale.
            const auto& anchor = pts[uniform_below(rng, static_cast<std::uint64_t>(i))];
            const long r = 1L << draw(rng, 3, 15);
            x = std::clamp(anchor.x.get_si() + draw(rng, -r, r), 0L, kGrid - 1);
            y = std::clamp(anchor.y.get_si() + draw(rng, -r, r), 0L, kGrid - 1);
        } else {
            // Near a parabola: convex position with occasional dents.
            x = draw(rng, 0, kGrid - 1);
            const long jitter = 1L << draw(rng, 0, 13);
            y = std::clamp(x * x / kGrid + draw(rng, -jitter, jitter), 0L, kGrid - 1);
        }
        pts.emplace_back(x, y);
    }
    return pts;
}

bool distinct(const std::vector<Point>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j]) return false;
    return true;
}

}  // namespace

const char* to_string(RecordSource s) { return s == RecordSource::Database ? "database" : "sampled"; }

CoordWidth parse_coord_width(const std::string& s) {
    if (s == "8") return CoordWidth::Bits8;
    if (s == "16") return CoordWidth::Bits16;
    throw std::invalid_argument("coordinate width must be 8 or 16, got '" + s + "'");
}

std::size_t record_bytes(int n, CoordWidth width) {
    check_n(n);
    return static_cast<std::size_t>(n) * 2 * bytes_per_coord(width);
}

OrderTypeFileReader::OrderTypeFileReader(const std::filesystem::path& path, int n, CoordWidth width)
    : n_(n), width_(width) {
    const std::size_t rec = record_bytes(n, width);
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec) throw std::runtime_error("cannot stat " + path.string() + ": " + ec.message());
    if (size % rec != 0)
        throw std::runtime_error(path.string() + ": size " + std::to_string(size) + " is not a multiple of the " +
                                 std::to_string(rec) + "-byte record size");
    records_ = size / rec;
    in_.open(path, std::ios::binary);
    if (!in_) throw std::runtime_error("cannot open " + path.string());
    buffer_.resize(rec);
}

std::optional<OrderTypeRecord> OrderTypeFileReader::next() {
    if (next_ >= records_) return std::nullopt;
    in_.read(reinterpret_cast<char*>(buffer_.data()), static_cast<std::streamsize>(buffer_.size()));
    if (!in_) throw std::runtime_error("short read at record " + std::to_string(next_));
    const auto index = next_++;
    try {
        auto pts = decode(buffer_.data(), n_, width_);
        if (!is_general_position(pts)) throw std::invalid_argument("not in general position");
        return OrderTypeRecord{n_, std::move(pts), RecordSource::Database};
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("record " + std::to_string(index) + ": " + e.what());
    }
}

std::vector<OrderTypeRecord> read_order_type_file(const std::filesystem::path& path, int n, CoordWidth width) {
    OrderTypeFileReader reader(path, n, width);
    std::vector<OrderTypeRecord> out;
    out.reserve(reader.record_count());
    while (auto r = reader.next()) out.push_back(std::move(*r));
    return out;
}

void write_order_type_file(const std::filesystem::path& path, std::span<const LabelledPointSet> sets,
                           CoordWidth width) {
    const int b = bytes_per_coord(width);
    const long limit = 1L << (8 * b);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& set : sets)
        for (const auto& p : set.points())
            for (const BigInt* c : {&p.x, &p.y}) {
                if (*c < 0 || *c >= limit)
                    throw std::invalid_argument("coordinate " + c->get_str() + " does not fit " +
                                                std::to_string(8 * b) + " unsigned bits");
                const long v = c->get_si();
                out.put(static_cast<char>(v & 0xff));
                if (b == 2) out.put(static_cast<char>((v >> 8) & 0xff));
            }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<ProbeCandidate> probe_order_type_file(const std::filesystem::path& path, int max_n) {
    const auto size = std::filesystem::file_size(path);
    std::vector<ProbeCandidate> out;
    for (int n = 3; n <= max_n; ++n)
        for (CoordWidth w : {CoordWidth::Bits8, CoordWidth::Bits16}) {
            const auto rec = record_bytes(n, w);
            if (size == 0 || size % rec != 0) continue;
            ProbeCandidate c{n, w, size / rec, true};
            try {
                OrderTypeFileReader reader(path, n, w);
                for (int i = 0; i < 8 && reader.next(); ++i) {
                }
            } catch (const std::runtime_error&) {
                c.plausible = false;
            }
            out.push_back(c);
        }
    return out;
}

std::string database_file_name(int n) {
    check_n(n);
    std::string num = std::to_string(n);
    if (num.size() < 2) num.insert(0, "0");
    return "otypes" + num + (database_width(n) == CoordWidth::Bits8 ? ".b08" : ".b16");
}

CoordWidth database_width(int n) { return n <= 8 ? CoordWidth::Bits8 : CoordWidth::Bits16; }

SignPattern canonical_form(const LabelledPointSet& points, bool identify_mirrors) {
    if (points.size() < 3) throw std::invalid_argument("canonical form needs at least 3 points");
    const OrientationTable t(points);
    if (!t.general_position()) throw std::invalid_argument("canonical form needs general position");
    std::optional<SignPattern> best;
    for (int h : hull_vertices(t))
        for (int s : {1, -1}) {
            if (s == -1 && !identify_mirrors) continue;
            auto sp = pattern_from(t, h, s);
            if (!best || sp < *best) best = std::move(sp);
        }
    return *best;
}

GenerationResult generate_representatives(int n, const GeneratorConfig& config) {
    if (n < 3 || n > kGeneratorMaxN)
        throw std::invalid_argument("generator supports 3 <= n <= " + std::to_string(kGeneratorMaxN));
    std::mt19937_64 rng(config.seed);
    std::set<SignPattern> seen;
    GenerationResult res;
    std::uint64_t quiet = 0;
    while (true) {
        if (config.target && seen.size() >= *config.target) {
            res.complete = true;
            break;
        }
        if (quiet >= config.stall_limit) {
            res.stalled = true;
            break;
        }
        auto pts = sample_points(n, rng);
        ++res.samples;
        ++quiet;
        if (!distinct(pts)) continue;
        LabelledPointSet set(std::move(pts));
        if (!is_general_position(set)) continue;
        if (!seen.insert(canonical_form(set, config.identify_mirrors)).second) continue;
        res.records.push_back({n, std::move(set), RecordSource::Sampled});
        quiet = 0;
    }
    return res;
}

RepresentativeSupply representatives(int n, const RepresentativeConfig& config) {
    check_n(n);
    std::optional<std::filesystem::path> file;
    if (config.consult_database) file = config.database_file;
    if (config.consult_database && !file) {
        std::optional<std::filesystem::path> dir = config.database_dir;
        if (!dir)
            if (const char* env = std::getenv("CCOL_OTDB_DIR"); env && *env) dir = env;
        if (dir) {
            auto candidate = *dir / database_file_name(n);
            if (std::filesystem::exists(candidate)) file = candidate;
        }
    }
    RepresentativeSupply supply;
    if (file) {
        auto reader = std::make_shared<OrderTypeFileReader>(*file, n, database_width(n));
        supply.source = RecordSource::Database;
        supply.description = file->string() + " (" + std::to_string(reader->record_count()) + " records)";
        supply.next = [reader]() -> std::optional<LabelledPointSet> {
            if (auto r = reader->next()) return std::move(r->points);
            return std::nullopt;
        };
        return supply;
    }
    if (!config.allow_fallback)
        throw std::runtime_error("no order-type database for n = " + std::to_string(n) + " and fallback disabled");
    auto gen = std::make_shared<GenerationResult>(generate_representatives(n, config.fallback));
    supply.source = RecordSource::Sampled;
    supply.complete = gen->complete;
    supply.description = "sampled, seed " + std::to_string(config.fallback.seed) + ", " +
                         std::to_string(gen->records.size()) + " classes from " + std::to_string(gen->samples) +
                         " samples" + (gen->stalled ? ", stopped on stall" : "");
    auto pos = std::make_shared<std::size_t>(0);
    supply.next = [gen, pos]() -> std::optional<LabelledPointSet> {
        if (*pos >= gen->records.size()) return std::nullopt;
        return gen->records[(*pos)++].points;
    };
    return supply;
}

}  // namespace ccol
