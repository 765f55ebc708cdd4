#include "ccol/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <set>

#include "ccol/bounds.hpp"
#include "ccol/construction.hpp"
#include "ccol/embedding.hpp"
#include "ccol/formats.hpp"
#include "ccol/otdb.hpp"
#include "ccol/triangulations.hpp"

namespace ccol {

namespace {

namespace fs = std::filesystem;

struct Run {
    std::string command;
    Json inputs = Json::object();
    Json outcome = Json::object();
    std::string status = "ok";
    int code = kExitOk;

    void set(std::string s, int c) {
        status = std::move(s);
        code = c;
    }
};

std::string decimal_down(const Rational& q) { return to_decimal(q, 30); }
std::string decimal_up(const Rational& q) {
    std::string s = to_decimal(-q, 30);
    return s[0] == '-' ? s.substr(1) : (s == "0." + std::string(30, '0') ? s : "-" + s);
}

Json interval_json(const RationalInterval& iv) { return Json{{"lo", decimal_down(iv.lo)}, {"hi", decimal_up(iv.hi)}}; }

Json sigma_json(const SigmaBoundReport& r) {
    Json j;
    j["n"] = r.n;
    j["log2_ts_bound_lo"] = decimal_down(r.ts_log2.lo);
    j["log2_ts_bound_hi"] = decimal_up(r.ts_log2.hi);
    j["log2_factorial"] = interval_json(r.factorial_log2);
    j["numerator"] = interval_json(r.numerator);
    j["denominator"] = interval_json(r.denominator);
    j["quotient"] = interval_json(r.quotient);
    j["sigma_bound"] = r.sigma_bound;
    j["certified"] = r.certified;
    j["precision_bits"] = r.precision_bits;
    j["mode"] = to_string(r.mode);
    return j;
}

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto end = s.find(',', start);
        const std::string item = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
        try {
            std::size_t used = 0;
            out.push_back(std::stol(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument("not an integer list: '" + s + "'");
        }
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

VertexPlacement parse_placement(const std::string& s, int n) {
    VertexPlacement p;
    for (long v : parse_long_list(s)) p.target.push_back(static_cast<int>(v) - 1);
    if (static_cast<int>(p.target.size()) != n)
        throw std::invalid_argument("placement lists " + std::to_string(p.target.size()) + " points for " +
                                    std::to_string(n) + " vertices");
    return p;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

BigInt random_below(std::mt19937_64& rng, const BigInt& limit) {
    const std::size_t bits = bit_length(limit);
    while (true) {
        BigInt v = 0;
        for (std::size_t got = 0; got < bits; got += 64) {
            v <<= 64;
            BigInt word;
            const std::uint64_t r = rng();
            mpz_import(word.get_mpz_t(), 1, 1, sizeof r, 0, 0, &r);
            v += word;
        }
        v >>= static_cast<mp_bitcnt_t>((bits + 63) / 64 * 64 - bits);
        if (v < limit) return v;
    }
}

LabelledPointSet random_general_position(int n, std::mt19937_64& rng) {
    while (true) {
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i)
            pts.emplace_back(static_cast<long>(uniform_below(rng, 1u << 16)),
                             static_cast<long>(uniform_below(rng, 1u << 16)));
        bool distinct = true;
        for (int i = 0; i < n && distinct; ++i)
            for (int j = i + 1; j < n && distinct; ++j) distinct = !(pts[i] == pts[j]);
        if (!distinct) continue;
        LabelledPointSet set(std::move(pts));
        if (is_general_position(set)) return set;
    }
}

Json verdict_json(const EmbeddingVerdict& v) {
    Json j;
    j["verdict"] = to_string(v.outcome);
    j["witness"] = v.witness ? placement_to_json(*v.witness) : Json(nullptr);
    j["nodes"] = v.nodes;
    j["crossings_checked"] = v.crossings_checked;
    return j;
}

std::vector<PlanarGraph> read_graph_dir(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && (e.path().extension() == ".json" || e.path().extension() == ".jsonl"))
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<PlanarGraph> graphs;
    for (const auto& f : files) {
        if (f.extension() == ".json") {
            graphs.push_back(read_graph(f.string()).graph);
        } else {
            std::ifstream in(f);
            for (auto& rec : read_graph_lines(in)) graphs.push_back(std::move(rec.graph));
        }
    }
    if (graphs.empty()) throw std::runtime_error("no graph documents in " + dir.string());
    return graphs;
}

// ---- bounds ----

struct BoundsArgs {
    long n = 0, from = 0, to = 0;
    std::optional<long> expect;
    std::string mode = "exact";
    std::string ns;
};

void bounds_sigma(Run& run, const BoundsArgs& a) {
    run.inputs = {{"n", a.n}, {"mode", a.mode}};
    if (a.expect) run.inputs["expect"] = *a.expect;
    EvalMode mode;
    if (a.mode == "exact") mode = EvalMode::Exact;
    else if (a.mode == "stirling") mode = EvalMode::Stirling;
    else if (a.mode == "auto") mode = a.n <= kExactModeLimit ? EvalMode::Exact : EvalMode::Stirling;
    else throw std::invalid_argument("mode must be exact, stirling or auto");
    const auto rep = sigma_bound_for(a.n, mode);
    run.outcome = sigma_json(rep);
    if (!rep.certified) run.set("uncertified", kExitInconclusive);
    else if (a.expect && rep.sigma_bound != *a.expect) run.set("mismatch", kExitRefuted);
}

void bounds_range(Run& run, const BoundsArgs& a) {
    run.inputs = {{"from", a.from}, {"to", a.to}, {"expect", *a.expect}};
    const auto rep = verify_sigma_range(a.from, a.to, *a.expect);
    Json rows = Json::array();
    for (const auto& r : rep.rows) rows.push_back(sigma_json(r));
    run.outcome = {{"ok", rep.ok}, {"mismatched", rep.mismatched}, {"uncertified", rep.uncertified}, {"rows", rows}};
    if (!rep.mismatched.empty()) run.set("mismatch", kExitRefuted);
    else if (!rep.uncertified.empty()) run.set("uncertified", kExitInconclusive);
}

void bounds_trend(Run& run, const BoundsArgs& a) {
    const auto ns = parse_long_list(a.ns);
    run.inputs = {{"ns", ns}};
    Json rows = Json::array();
    bool all = true;
    for (const auto& r : asymptotic_trend(ns)) {
        rows.push_back({{"n", r.n}, {"sigma_bound", r.sigma_bound}, {"ratio", r.ratio}, {"certified", r.certified},
                        {"mode", to_string(r.mode)}});
        all = all && r.certified;
    }
    run.outcome = {{"rows", rows}};
    if (!all) run.set("uncertified", kExitInconclusive);
}

void bounds_alon(Run& run, const BoundsArgs& a) {
    run.inputs = {{"n", a.n}};
    const auto alon = alon_ts_bound_log2(a.n);
    const auto warren = log2_certified(ts_upper_bound(a.n));
    run.outcome = {{"n", a.n},
                   {"alon_log2", interval_json(alon)},
                   {"warren_log2", interval_json(warren)},
                   {"alon_exceeds_warren", alon.lo > warren.hi}};
}

// ---- tn ----

struct TnArgs {
    int n = 0;
    std::uint64_t seed = 0;
    std::string out;
    bool override_guard = false;
    bool faces = false;
};

void tn_count(Run& run, const TnArgs& a) {
    run.inputs = {{"n", a.n}};
    run.outcome = {{"count", count_Tn(a.n).get_str()}};
}

void tn_enumerate(Run& run, const TnArgs& a) {
    run.inputs = {{"n", a.n}, {"out", a.out}, {"override", a.override_guard}};
    std::ofstream file;
    if (!a.out.empty()) {
        file.open(a.out);
        if (!file) throw std::runtime_error("cannot write " + a.out);
    }
    Json inline_graphs = Json::array();
    std::set<std::set<Edge>> distinct;
    std::uint64_t count = 0;
    for_each_Tn(
        a.n,
        [&](const StackedTriangulation& s, const FacedTriangulation& t) {
            ++count;
            distinct.insert(t.edges());
            Json doc = graph_to_json(t, StackBase::K4, s.stacks(), a.faces);
            if (file.is_open()) file << doc.dump() << '\n';
            else inline_graphs.push_back(std::move(doc));
        },
        a.override_guard);
    run.outcome = {{"records", count},
                   {"distinct_edge_sets", distinct.size()},
                   {"expected", count_Tn(a.n).get_str()}};
    if (!file.is_open()) run.outcome["graphs"] = inline_graphs;
    if (BigInt(std::to_string(count)) != count_Tn(a.n) || distinct.size() != count) run.set("mismatch", kExitRefuted);
}

void tn_sample(Run& run, const TnArgs& a) {
    run.inputs = {{"n", a.n}, {"seed", a.seed}};
    const auto t = sample_uniform_Tn(a.n, a.seed);
    const Json doc = graph_to_json(t, a.faces);
    if (!a.out.empty()) write_text(a.out, doc.dump() + "\n");
    run.outcome = {{"graph", doc}};
}

// ---- embed ----

struct EmbedArgs {
    std::string graph, points, placement, svg, method = "backtrack", out, expect;
    bool label_preserving = false;
    std::uint64_t budget = kDefaultSearchBudget;
};

void check_expect(Run& run, const std::string& expect, const std::string& actual) {
    if (!expect.empty() && expect != actual) run.set("mismatch", kExitRefuted);
}

void embed_check(Run& run, const EmbedArgs& a) {
    run.inputs = {{"graph", a.graph}, {"points", a.points}, {"placement", a.placement}};
    const auto g = read_graph(a.graph).graph;
    const auto pts = read_point_set_file(a.points);
    const auto placement = a.placement.empty() ? VertexPlacement::identity(g.n) : parse_placement(a.placement, g.n);
    const bool ok = is_straight_line_embedding(g, pts, placement);
    run.outcome = {{"embeds", ok}, {"placement", placement_to_json(placement)}};
    if (ok && !a.svg.empty()) write_text(a.svg, placement_svg(g, pts, placement));
    check_expect(run, a.expect, ok ? "embeds" : "does-not-embed");
}

void embed_search(Run& run, const EmbedArgs& a) {
    run.inputs = {{"graph", a.graph},
                  {"points", a.points},
                  {"label_preserving", a.label_preserving},
                  {"method", a.method},
                  {"budget", a.budget}};
    const auto rec = read_graph(a.graph);
    const auto pts = read_point_set_file(a.points);
    EmbeddingVerdict v;
    if (a.label_preserving) {
        const bool ok = has_label_preserving_embedding(rec.graph, pts);
        v.outcome = ok ? Verdict::Embeds : Verdict::DoesNotEmbed;
        if (ok) v.witness = VertexPlacement::identity(rec.graph.n);
    } else if (a.method == "reconstruct") {
        if (!rec.stacked) throw std::invalid_argument("the reconstruction method needs a stacked graph on K4");
        v = embeds_on_by_reconstruction(*rec.stacked, pts);
    } else if (a.method == "backtrack") {
        v = embeds_on(rec.graph, pts, a.budget);
    } else {
        throw std::invalid_argument("method must be backtrack or reconstruct");
    }
    run.outcome = verdict_json(v);
    if (v.witness && !a.svg.empty()) write_text(a.svg, placement_svg(rec.graph, pts, *v.witness));
    if (v.outcome == Verdict::Unknown) run.set("inconclusive", kExitInconclusive);
    else check_expect(run, a.expect, to_string(v.outcome));
}

void embed_reconstruct(Run& run, const EmbedArgs& a) {
    run.inputs = {{"points", a.points}};
    const auto pts = read_point_set_file(a.points);
    const auto t = reconstruct_stacked(pts);
    run.outcome = {{"found", t.has_value()}, {"graph", t ? graph_to_json(*t) : Json(nullptr)}};
    if (t && !a.out.empty()) write_text(a.out, graph_to_json(*t).dump() + "\n");
}

// ---- construct ----

struct ConstructArgs {
    long n = 0;
    std::string index, from, to;
    std::uint64_t sample = 10, seed = 0;
    bool override_small = false;
    bool faces = false;
    std::string out;
};

SizeGuard guard_of(const ConstructArgs& a) { return a.override_small ? SizeGuard::OverrideSmall : SizeGuard::Enforce; }

Json member_json(long n, const BigInt& idx, SizeGuard guard, bool faces) {
    const auto s = composition_at(n, {idx}, guard);
    const auto t = build_T_of(s);
    Json doc = graph_to_json(t, StackBase::Octahedron, construction_steps(s), faces);
    doc["index"] = idx.get_str();
    doc["composition"] = s.parts;
    return doc;
}

void construct_member(Run& run, const ConstructArgs& a) {
    run.inputs = {{"n", a.n}, {"index", a.index}, {"override_small", a.override_small}};
    const Json doc = member_json(a.n, parse_bigint(a.index), guard_of(a), a.faces);
    if (!a.out.empty()) write_text(a.out, doc.dump() + "\n");
    run.outcome = {{"graph", doc}};
}

void construct_range(Run& run, const ConstructArgs& a) {
    run.inputs = {{"n", a.n}, {"from", a.from}, {"to", a.to}, {"override_small", a.override_small}};
    const BigInt from = parse_bigint(a.from), to = parse_bigint(a.to);
    if (from > to) throw std::invalid_argument("--from must not exceed --to");
    std::ofstream file;
    if (!a.out.empty()) {
        file.open(a.out);
        if (!file) throw std::runtime_error("cannot write " + a.out);
    }
    Json graphs = Json::array();
    std::uint64_t count = 0;
    for (BigInt i = from; i <= to; ++i, ++count) {
        Json doc = member_json(a.n, i, guard_of(a), a.faces);
        if (file.is_open()) file << doc.dump() << '\n';
        else graphs.push_back(std::move(doc));
    }
    run.outcome = {{"records", count}};
    if (!file.is_open()) run.outcome["graphs"] = graphs;
}

void construct_size(Run& run, const ConstructArgs& a) {
    run.inputs = {{"n", a.n}, {"override_small", a.override_small}};
    const auto size = collection_size(a.n, guard_of(a));
    const auto all = count_S_n(a.n);
    run.outcome = {{"collection_size", size.get_str()},
                   {"count_S_n", all.get_str()},
                   {"fits_in_S_n", size <= all}};
}

void construct_validate(Run& run, const ConstructArgs& a) {
    run.inputs = {{"n", a.n}, {"sample", a.sample}, {"seed", a.seed}, {"override_small", a.override_small}};
    const BigInt limit = index_limit(a.n, guard_of(a));
    std::mt19937_64 rng(a.seed);
    Json failures = Json::array();
    double worst_ms = 0;
    for (std::uint64_t k = 0; k < a.sample; ++k) {
        const BigInt idx = random_below(rng, limit);
        const auto start = std::chrono::steady_clock::now();
        const auto s = composition_at(a.n, {idx}, guard_of(a));
        const auto bad = member_violation(s, build_T_of(s));
        worst_ms = std::max(
            worst_ms, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
        if (bad) failures.push_back({{"index", idx.get_str()}, {"problem", *bad}});
    }
    run.outcome = {{"checked", a.sample}, {"failures", failures}};
    run.outcome["slowest_member_ms"] = worst_ms;
    if (!failures.empty()) run.set("invalid", kExitRefuted);
}

// ---- verify-conflict ----

struct ConflictArgs {
    std::string graphs, source;
    int n = 0;
    std::uint64_t budget = kDefaultSearchBudget;
    std::optional<std::size_t> target;
    std::uint64_t stall = GeneratorConfig{}.stall_limit;
};

void verify_conflict(Run& run, const ConflictArgs& a) {
    run.inputs = {{"graphs", a.graphs}, {"n", a.n}, {"source", a.source}, {"budget", a.budget}};
    const auto graphs = read_graph_dir(a.graphs);
    RepresentativeConfig cfg;
    if (a.source.rfind("otdb:", 0) == 0) {
        const fs::path p = a.source.substr(5);
        if (fs::is_directory(p)) cfg.database_dir = p;
        else cfg.database_file = p;
        cfg.allow_fallback = false;
        if (!fs::exists(p)) throw std::runtime_error("order-type source not found: " + p.string());
    } else if (a.source.rfind("fallback:", 0) == 0) {
        cfg.consult_database = false;
        cfg.fallback.seed = std::stoull(a.source.substr(9));
        cfg.fallback.target = a.target;
        cfg.fallback.stall_limit = a.stall;
    } else {
        throw std::invalid_argument("source must be otdb:PATH or fallback:SEED");
    }
    auto supply = representatives(a.n, cfg);
    const auto verdict = verify_conflict_collection(graphs, a.n, supply.next, a.budget);
    run.outcome = {{"verdict", to_string(verdict.outcome)},
                   {"graphs", graphs.size()},
                   {"source", to_string(supply.source)},
                   {"source_description", supply.description},
                   {"source_complete", supply.complete},
                   {"representatives_checked", verdict.representatives_checked},
                   {"representatives_unknown", verdict.representatives_unknown}};
    if (verdict.counterexample) {
        run.outcome["counterexample"] = points_to_json(*verdict.counterexample);
        Json w = Json::array();
        for (const auto& p : verdict.witnesses) w.push_back(placement_to_json(p));
        run.outcome["witnesses"] = w;
    }
    switch (verdict.outcome) {
        case ConflictOutcome::NotConflict: run.set("refuted", kExitRefuted); break;
        case ConflictOutcome::Inconclusive: run.set("inconclusive", kExitInconclusive); break;
        case ConflictOutcome::Conflict:
            if (!supply.complete) run.set("conflict-on-sampled-classes-only", kExitInconclusive);
            break;
    }
}

// ---- experiment ----

struct ExperimentArgs {
    int n = 0;
    int trials = 100;
    std::uint64_t seed = 0;
};

void experiment_embed_prob(Run& run, const ExperimentArgs& a) {
    run.inputs = {{"n", a.n}, {"trials", a.trials}, {"seed", a.seed}};
    if (a.n < 4 || a.n > 8) throw std::invalid_argument("embed-prob supports 4 <= n <= 8");
    if (a.trials < 1) throw std::invalid_argument("trials must be positive");
    std::mt19937_64 rng(a.seed);
    const BigInt total = count_Tn(a.n);
    const double total_d = total.get_d();
    const Rational bound(BigInt(16) * a.n * (a.n - 1) * (a.n - 2), pow2(static_cast<std::uint64_t>(a.n)));
    const Rational effective = bound < 1 ? bound : Rational(1);
    long max_lp = 0;
    double sum_fraction = 0;
    bool within = true;
    Json raw = Json::array();
    for (int t = 0; t < a.trials; ++t) {
        const auto pts = random_general_position(a.n, rng);
        const auto c = exact_embedding_counts(a.n, pts);
        max_lp = std::max(max_lp, c.label_preserving_count);
        sum_fraction += c.embeddable_count / total_d;
        within = within && Rational(c.embeddable_count, total) <= effective;
        raw.push_back({c.label_preserving_count, c.embeddable_count});
    }
    run.outcome = {{"total", total.get_str()},
                   {"max_label_preserving_count", max_lp},
                   {"label_preserving_bound", "1/" + total.get_str()},
                   {"mean_embeddable_fraction", sum_fraction / a.trials},
                   {"embeddable_bound", bound.get_d()},
                   {"embeddable_bound_vacuous", bound >= 1},
                   {"all_fractions_within_bound", within},
                   {"counts", raw}};
    if (max_lp > 1 || !within) run.set("bound-violated", kExitRefuted);
}

// ---- otdb ----

struct OtdbArgs {
    std::string file, out, out_dir, width = "8";
    int n = 0;
    std::uint64_t index = 0, limit = 0, seed = 0, stall = GeneratorConfig{}.stall_limit;
    std::optional<std::size_t> target;
    bool mirrors = false;
};

void otdb_probe(Run& run, const OtdbArgs& a) {
    run.inputs = {{"file", a.file}};
    Json rows = Json::array();
    for (const auto& c : probe_order_type_file(a.file))
        rows.push_back({{"n", c.n}, {"width", static_cast<int>(c.width)}, {"records", c.records},
                        {"plausible", c.plausible}});
    run.outcome = {{"size", fs::file_size(a.file)}, {"candidates", rows}};
}

void otdb_convert(Run& run, const OtdbArgs& a) {
    run.inputs = {{"file", a.file}, {"n", a.n}, {"width", a.width}, {"index", a.index}};
    OrderTypeFileReader reader(a.file, a.n, parse_coord_width(a.width));
    if (!a.out_dir.empty()) {
        fs::create_directories(a.out_dir);
        std::uint64_t written = 0;
        while (auto r = reader.next()) {
            if (a.limit && written >= a.limit) break;
            char name[32];
            std::snprintf(name, sizeof name, "rec%08llu.txt", static_cast<unsigned long long>(reader.position() - 1));
            write_point_set_file(fs::path(a.out_dir) / name, r->points);
            ++written;
        }
        run.outcome = {{"written", written}, {"records", reader.record_count()}};
        return;
    }
    if (a.index >= reader.record_count()) throw std::out_of_range("record index out of range");
    std::optional<OrderTypeRecord> r;
    for (std::uint64_t i = 0; i <= a.index; ++i) r = reader.next();
    if (!a.out.empty()) write_point_set_file(a.out, r->points);
    run.outcome = {{"records", reader.record_count()}, {"points", points_to_json(r->points)}};
}

void otdb_generate(Run& run, const OtdbArgs& a) {
    run.inputs = {{"n", a.n}, {"seed", a.seed}, {"stall", a.stall}, {"mirrors", a.mirrors}};
    if (a.target) run.inputs["target"] = *a.target;
    GeneratorConfig cfg;
    cfg.seed = a.seed;
    cfg.target = a.target;
    cfg.stall_limit = a.stall;
    cfg.identify_mirrors = a.mirrors;
    const auto res = generate_representatives(a.n, cfg);
    if (!a.out.empty()) {
        std::vector<LabelledPointSet> sets;
        for (const auto& r : res.records) sets.push_back(r.points);
        write_order_type_file(a.out, sets, CoordWidth::Bits16);
    }
    run.outcome = {{"classes", res.records.size()}, {"samples", res.samples}, {"stalled", res.stalled},
                   {"complete", res.complete}};
    if (a.target && !res.complete) run.set("incomplete", kExitInconclusive);
}

void emit(std::ostream& out, const Run& run, double elapsed_ms, bool timing) {
    Json report;
    report["schema"] = "ccol.run-report/1";
    report["command"] = run.command;
    report["inputs"] = run.inputs;
    report["outcome"] = run.outcome;
    report["status"] = run.status;
    report["exit_code"] = run.code;
    if (timing) report["elapsed_ms"] = elapsed_ms;
    out << report.dump(2) << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Conflict collections of planar graphs: bounds, stacked triangulations, embeddings", "ccol"};
    app.require_subcommand(1);
    bool no_timing = false;
    app.add_flag("--no-timing", no_timing, "Omit elapsed_ms so reports are byte-identical across runs");

    BoundsArgs ba;
    auto* bounds = app.add_subcommand("bounds", "Certified sigma(n) bounds")->require_subcommand(1);
    auto* b_sigma = bounds->add_subcommand("sigma", "Bound for one n");
    b_sigma->add_option("--n", ba.n, "n >= 16")->required();
    b_sigma->add_option("--mode", ba.mode, "exact | stirling | auto");
    b_sigma->add_option("--expect", ba.expect, "Expected bound");
    auto* b_range = bounds->add_subcommand("verify-range", "Check that every n in a range certifies to a value");
    b_range->add_option("--from", ba.from)->required();
    b_range->add_option("--to", ba.to)->required();
    b_range->add_option("--expect", ba.expect)->required();
    auto* b_trend = bounds->add_subcommand("trend", "sigma_bound / log2(n) over a list of n");
    b_trend->add_option("--ns", ba.ns, "Comma-separated list")->required();
    auto* b_alon = bounds->add_subcommand("alon", "Compare the explicit bound with the sign-pattern bound");
    b_alon->add_option("--n", ba.n)->required();

    TnArgs ta;
    auto* tn = app.add_subcommand("tn", "The stacked family T_n")->require_subcommand(1);
    auto* t_count = tn->add_subcommand("count", "|T_n|");
    t_count->add_option("--n", ta.n)->required();
    auto* t_enum = tn->add_subcommand("enumerate", "All members, one graph document per line");
    t_enum->add_option("--n", ta.n)->required();
    t_enum->add_option("--out", ta.out, "JSON Lines file (default: inline in the report)");
    t_enum->add_flag("--override", ta.override_guard, "Allow n above the enumeration guard");
    t_enum->add_flag("--faces", ta.faces, "Include face lists");
    auto* t_sample = tn->add_subcommand("sample", "Uniform random member");
    t_sample->add_option("--n", ta.n)->required();
    t_sample->add_option("--seed", ta.seed)->required();
    t_sample->add_option("--out", ta.out);
    t_sample->add_flag("--faces", ta.faces);

    EmbedArgs ea;
    auto* embed = app.add_subcommand("embed", "Straight-line embeddings")->require_subcommand(1);
    auto* e_check = embed->add_subcommand("check", "Check one placement (identity by default)");
    e_check->add_option("--graph", ea.graph, "Graph file, or k4 / octahedron")->required();
    e_check->add_option("--points", ea.points)->required();
    e_check->add_option("--placement", ea.placement, "Comma-separated point labels for vertices 1..n");
    e_check->add_option("--svg", ea.svg, "Write a drawing when the placement is an embedding");
    e_check->add_option("--expect", ea.expect, "embeds | does-not-embed");
    auto* e_search = embed->add_subcommand("search", "Search for an embedding");
    e_search->add_option("--graph", ea.graph)->required();
    e_search->add_option("--points", ea.points)->required();
    e_search->add_flag("--label-preserving", ea.label_preserving);
    e_search->add_option("--method", ea.method, "backtrack | reconstruct");
    e_search->add_option("--budget", ea.budget, "Search node budget");
    e_search->add_option("--svg", ea.svg);
    e_search->add_option("--expect", ea.expect, "embeds | does-not-embed");
    auto* e_rec = embed->add_subcommand("reconstruct", "The member of T_n drawn label-preserving on the points");
    e_rec->add_option("--points", ea.points)->required();
    e_rec->add_option("--out", ea.out);

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "The octahedron-based conflict collection")->require_subcommand(1);
    auto add_guard = [&](CLI::App* c) {
        c->add_option("--n", ca.n)->required();
        c->add_flag("--override-small", ca.override_small, "Allow n < 5040 for desk-scale experiments");
    };
    auto* c_member = construct->add_subcommand("member", "One member by index");
    add_guard(c_member);
    c_member->add_option("--index", ca.index)->required();
    c_member->add_option("--out", ca.out);
    c_member->add_flag("--faces", ca.faces);
    auto* c_range = construct->add_subcommand("range", "Members with index in [from, to]");
    add_guard(c_range);
    c_range->add_option("--from", ca.from)->required();
    c_range->add_option("--to", ca.to)->required();
    c_range->add_option("--out", ca.out);
    c_range->add_flag("--faces", ca.faces);
    auto* c_size = construct->add_subcommand("size", "Collection size");
    add_guard(c_size);
    auto* c_validate = construct->add_subcommand("validate", "Validate random members");
    add_guard(c_validate);
    c_validate->add_option("--sample", ca.sample);
    c_validate->add_option("--seed", ca.seed);

    ConflictArgs fa;
    auto* conflict = app.add_subcommand("verify-conflict", "Check a collection against order-type representatives");
    conflict->add_option("--graphs", fa.graphs, "Directory of .json / .jsonl graph documents")->required();
    conflict->add_option("--n", fa.n)->required();
    conflict->add_option("--source", fa.source, "otdb:PATH or fallback:SEED")->required();
    conflict->add_option("--budget", fa.budget);
    conflict->add_option("--target", fa.target, "Fallback: number of classes that counts as complete");
    conflict->add_option("--stall", fa.stall, "Fallback: samples without a new class before stopping");

    ExperimentArgs xa;
    auto* experiment = app.add_subcommand("experiment", "Exact experiments")->require_subcommand(1);
    auto* x_prob = experiment->add_subcommand("embed-prob", "Embedding counts over T_n on random point sets");
    x_prob->add_option("--n", xa.n)->required();
    x_prob->add_option("--trials", xa.trials);
    x_prob->add_option("--seed", xa.seed);

    OtdbArgs oa;
    auto* otdb = app.add_subcommand("otdb", "Order-type representatives")->require_subcommand(1);
    auto* o_probe = otdb->add_subcommand("probe", "Infer record layouts of a database file");
    o_probe->add_option("--file", oa.file)->required();
    auto* o_convert = otdb->add_subcommand("convert", "Decode records to the point-set text format");
    o_convert->add_option("--file", oa.file)->required();
    o_convert->add_option("--n", oa.n)->required();
    o_convert->add_option("--width", oa.width, "8 or 16");
    o_convert->add_option("--index", oa.index);
    o_convert->add_option("--out", oa.out);
    o_convert->add_option("--out-dir", oa.out_dir, "Write every record to its own file");
    o_convert->add_option("--limit", oa.limit);
    auto* o_gen = otdb->add_subcommand("generate", "Sample representatives");
    o_gen->add_option("--n", oa.n)->required();
    o_gen->add_option("--seed", oa.seed);
    o_gen->add_option("--target", oa.target);
    o_gen->add_option("--stall", oa.stall);
    o_gen->add_flag("--mirrors", oa.mirrors, "Identify mirror images");
    o_gen->add_option("--out", oa.out, "16-bit database file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    Run run;
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        run.command = "usage";
        run.outcome = {{"error", e.what()}};
        run.set("usage-error", kExitUsage);
        emit(out, run, 0, false);
        return run.code;
    }

    std::vector<std::string> path;
    for (CLI::App* level = &app;;) {
        auto subs = level->get_subcommands();
        if (subs.empty()) break;
        level = subs.front();
        path.push_back(level->get_name());
    }
    run.command = path.empty() ? "" : path.front();
    for (std::size_t i = 1; i < path.size(); ++i) run.command += " " + path[i];

    const auto start = std::chrono::steady_clock::now();
    try {
        if (b_sigma->parsed()) bounds_sigma(run, ba);
        else if (b_range->parsed()) bounds_range(run, ba);
        else if (b_trend->parsed()) bounds_trend(run, ba);
        else if (b_alon->parsed()) bounds_alon(run, ba);
        else if (t_count->parsed()) tn_count(run, ta);
        else if (t_enum->parsed()) tn_enumerate(run, ta);
        else if (t_sample->parsed()) tn_sample(run, ta);
        else if (e_check->parsed()) embed_check(run, ea);
        else if (e_search->parsed()) embed_search(run, ea);
        else if (e_rec->parsed()) embed_reconstruct(run, ea);
        else if (c_member->parsed()) construct_member(run, ca);
        else if (c_range->parsed()) construct_range(run, ca);
        else if (c_size->parsed()) construct_size(run, ca);
        else if (c_validate->parsed()) construct_validate(run, ca);
        else if (conflict->parsed()) verify_conflict(run, fa);
        else if (x_prob->parsed()) experiment_embed_prob(run, xa);
        else if (o_probe->parsed()) otdb_probe(run, oa);
        else if (o_convert->parsed()) otdb_convert(run, oa);
        else if (o_gen->parsed()) otdb_generate(run, oa);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        run.outcome = {{"error", e.what()}};
        run.set("error", kExitUsage);
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(out, run, ms, !no_timing);
    return run.code;
}

}  // namespace ccol
