#pragma once

// Graph and report documents (JSON), and SVG drawings of placements.
//
// Graph document: {"n": N, "edges": [[i,j],...], "base": "k4"|"octahedron",
// "stacks": [{"vertex": v, "face": [a,b,c]}, ...], "faces": [[a,b,c],...]}
// with 1-based labels; "base", "stacks" and "faces" are optional.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccol/embedding.hpp"
#include "ccol/geom.hpp"
#include "ccol/triangulations.hpp"

namespace ccol {

using Json = nlohmann::ordered_json;

enum class StackBase { K4, Octahedron };

struct GraphRecord {
    PlanarGraph graph;
    /// Present when the document carries a stacking history.
    std::optional<FacedTriangulation> faced;
    /// Present for stacking histories on top of K4 (members of T_n).
    std::optional<StackedTriangulation> stacked;
};

Json graph_to_json(const StackedTriangulation& t, bool with_faces = false);
/// `steps` is the stacking history on top of `base` that produced `t`.
Json graph_to_json(const FacedTriangulation& t, StackBase base, const std::vector<StackStep>& steps,
                   bool with_faces = false);
Json graph_to_json(const PlanarGraph& g);

/// Validates labels, replays stacks, and checks that listed edges and faces
/// agree with the replay. Throws std::invalid_argument on any mismatch.
GraphRecord graph_from_json(const Json& doc);

/// A JSON document, or the built-in names "k4" and "octahedron".
GraphRecord read_graph(const std::string& path_or_name);
/// One graph document per line (blank lines skipped).
std::vector<GraphRecord> read_graph_lines(std::istream& in);

LabelledPointSet read_point_set_file(const std::filesystem::path& path);
void write_point_set_file(const std::filesystem::path& path, const LabelledPointSet& points);

/// Coordinates as JSON numbers when they fit 64 bits, decimal strings otherwise.
Json points_to_json(const LabelledPointSet& points);
/// 1-based point labels, one per vertex.
Json placement_to_json(const VertexPlacement& placement);

/// Straight-line drawing of g with vertex v at point placement.target[v-1].
std::string placement_svg(const PlanarGraph& g, const LabelledPointSet& points, const VertexPlacement& placement);

}  // namespace ccol
