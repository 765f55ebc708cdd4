#include "ccol/formats.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ccol {

namespace {

Json face_json(const Face& f) { return Json::array({f[0], f[1], f[2]}); }

Json edges_json(const std::vector<Edge>& edges) {
    Json out = Json::array();
    for (const auto& [a, b] : edges) out.push_back(Json::array({a, b}));
    return out;
}

Json stacks_json(const std::vector<StackStep>& steps) {
    Json out = Json::array();
    for (const auto& s : steps) out.push_back(Json{{"vertex", s.vertex}, {"face", face_json(s.face)}});
    return out;
}

Json faces_json(const FacedTriangulation& t) {
    Json out = Json::array();
    for (const auto& f : t.faces()) out.push_back(face_json(f));
    return out;
}

int label_at(const Json& v, const char* what) {
    if (!v.is_number_integer()) throw std::invalid_argument(std::string(what) + " must be an integer");
    return v.get<int>();
}

Face face_from(const Json& v) {
    if (!v.is_array() || v.size() != 3) throw std::invalid_argument("face must be an array of three labels");
    return make_face(label_at(v[0], "face label"), label_at(v[1], "face label"), label_at(v[2], "face label"));
}

Json integer_json(const BigInt& v) {
    if (mpz_fits_slong_p(v.get_mpz_t())) return v.get_si();
    return v.get_str();
}

}  // namespace

Json graph_to_json(const StackedTriangulation& t, bool with_faces) {
    return graph_to_json(t.expand(), StackBase::K4, t.stacks(), with_faces);
}

Json graph_to_json(const FacedTriangulation& t, StackBase base, const std::vector<StackStep>& steps,
                   bool with_faces) {
    Json doc;
    doc["n"] = t.n();
    doc["edges"] = edges_json(t.edge_list());
    doc["base"] = base == StackBase::K4 ? "k4" : "octahedron";
    doc["stacks"] = stacks_json(steps);
    if (with_faces) doc["faces"] = faces_json(t);
    return doc;
}

Json graph_to_json(const PlanarGraph& g) {
    Json doc;
    doc["n"] = g.n;
    doc["edges"] = edges_json(g.edges);
    return doc;
}

GraphRecord graph_from_json(const Json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("graph document must be an object");
    if (!doc.contains("n")) throw std::invalid_argument("graph document lacks n");
    const int n = label_at(doc["n"], "n");
    if (n < 1) throw std::invalid_argument("n must be positive");

    std::optional<std::vector<Edge>> edges;
    if (doc.contains("edges")) {
        const auto& list = doc["edges"];
        if (!list.is_array()) throw std::invalid_argument("edges must be an array");
        edges.emplace();
        for (const auto& e : list) {
            if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be a pair of labels");
            const int a = label_at(e[0], "edge label"), b = label_at(e[1], "edge label");
            if (a >= b) throw std::invalid_argument("edge labels must satisfy i < j");
            edges->emplace_back(a, b);
        }
    }

    GraphRecord rec;
    if (doc.contains("stacks")) {
        const std::string base = doc.value("base", std::string("k4"));
        std::vector<StackStep> steps;
        for (const auto& s : doc["stacks"]) {
            if (!s.is_object() || !s.contains("vertex") || !s.contains("face"))
                throw std::invalid_argument("stack entry needs vertex and face");
            steps.push_back({label_at(s["vertex"], "stack vertex"), face_from(s["face"])});
        }
        FacedTriangulation t = FacedTriangulation::k4();
        if (base == "k4") {
            rec.stacked = StackedTriangulation::from_steps(steps);
            t = rec.stacked->expand();
        } else if (base == "octahedron") {
            t = FacedTriangulation::octahedron();
            for (const auto& s : steps) {
                if (s.vertex != t.n() + 1)
                    throw std::invalid_argument("stack vertices must be numbered consecutively");
                t = std::move(t).with_stacked(s.face);
            }
        } else {
            throw std::invalid_argument("unknown base '" + base + "'");
        }
        if (t.n() != n) throw std::invalid_argument("stacks produce " + std::to_string(t.n()) + " vertices, n is " +
                                                    std::to_string(n));
        if (edges) {
            std::vector<Edge> sorted = *edges;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != t.edge_list()) throw std::invalid_argument("edges disagree with the stacking history");
        }
        if (doc.contains("faces")) {
            std::vector<Face> faces;
            for (const auto& f : doc["faces"]) faces.push_back(face_from(f));
            std::sort(faces.begin(), faces.end());
            if (faces != std::vector<Face>(t.faces().begin(), t.faces().end()))
                throw std::invalid_argument("faces disagree with the stacking history");
        }
        rec.graph = PlanarGraph(t);
        rec.faced = std::move(t);
        return rec;
    }
    if (!edges) throw std::invalid_argument("graph document needs edges or stacks");
    rec.graph = PlanarGraph(n, *edges);
    return rec;
}

GraphRecord read_graph(const std::string& path_or_name) {
    if (path_or_name == "k4") {
        GraphRecord rec;
        rec.stacked = StackedTriangulation::k4();
        rec.faced = FacedTriangulation::k4();
        rec.graph = PlanarGraph(*rec.faced);
        return rec;
    }
    if (path_or_name == "octahedron") {
        GraphRecord rec;
        rec.faced = FacedTriangulation::octahedron();
        rec.graph = PlanarGraph(*rec.faced);
        return rec;
    }
    std::ifstream in(path_or_name);
    if (!in) throw std::runtime_error("cannot open graph file " + path_or_name);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(path_or_name + ": " + e.what());
    }
    return graph_from_json(doc);
}

std::vector<GraphRecord> read_graph_lines(std::istream& in) {
    std::vector<GraphRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(graph_from_json(Json::parse(line)));
        } catch (const std::exception& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

LabelledPointSet read_point_set_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open point file " + path.string());
    try {
        return read_point_set(in);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

void write_point_set_file(const std::filesystem::path& path, const LabelledPointSet& points) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_point_set(out, points);
}

Json points_to_json(const LabelledPointSet& points) {
    Json out = Json::array();
    for (const auto& p : points.points()) out.push_back(Json::array({integer_json(p.x), integer_json(p.y)}));
    return out;
}

Json placement_to_json(const VertexPlacement& placement) {
    Json out = Json::array();
    for (int t : placement.target) out.push_back(t + 1);
    return out;
}

std::string placement_svg(const PlanarGraph& g, const LabelledPointSet& points, const VertexPlacement& placement) {
    if (!placement.valid(g.n, static_cast<int>(points.size())))
        throw std::invalid_argument("placement does not fit the point set");
    double min_x = std::numeric_limits<double>::max(), min_y = min_x;
    double max_x = std::numeric_limits<double>::lowest(), max_y = max_x;
    for (const auto& p : points.points()) {
        min_x = std::min(min_x, p.x.get_d());
        max_x = std::max(max_x, p.x.get_d());
        min_y = std::min(min_y, p.y.get_d());
        max_y = std::max(max_y, p.y.get_d());
    }
    const double size = 500, margin = 20;
    const double span = std::max({max_x - min_x, max_y - min_y, 1.0});
    auto sx = [&](const Point& p) { return margin + (p.x.get_d() - min_x) / span * size; };
    // SVG y grows downwards.
    auto sy = [&](const Point& p) { return margin + size - (p.y.get_d() - min_y) / span * size; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin << "\" height=\""
        << size + 2 * margin << "\">\n";
    for (const auto& [a, b] : g.edges) {
        const auto& p = points[static_cast<std::size_t>(placement.target[a - 1])];
        const auto& q = points[static_cast<std::size_t>(placement.target[b - 1])];
        svg << "  <line x1=\"" << sx(p) << "\" y1=\"" << sy(p) << "\" x2=\"" << sx(q) << "\" y2=\"" << sy(q)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    for (int v = 1; v <= g.n; ++v) {
        const auto& p = points[static_cast<std::size_t>(placement.target[v - 1])];
        svg << "  <circle cx=\"" << sx(p) << "\" cy=\"" << sy(p) << "\" r=\"4\" fill=\"white\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << sx(p) + 6 << "\" y=\"" << sy(p) - 6 << "\" font-size=\"12\">" << v << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace ccol
