#pragma once

#include "semiplanar/graph.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace semiplanar {

/// Contents of a graph file:
///
///     { "vertices": N,
///       "rotation": [[neighbour ids, counter-clockwise, -1 for an open sector], ...],
///       "boundary": [ids],
///       "center": id,          (optional, default 0)
///       "config": {...} }      (optional, echoed run configuration)
///
/// Faces are always recomputed from the rotation system.
struct GraphFile {
    SemiplanarGraph graph;
    VertexId center = 0;
};

/// Throws ErrorKind::Parse with a line/field diagnostic on malformed text and
/// ErrorKind::Validation when the parsed rotation system is invalid.
GraphFile parse_graph(std::string_view text);
GraphFile load_graph(const std::filesystem::path& path);

/// `config_json`, when non-empty, must be a serialized JSON object; it is
/// embedded under "config".
std::string serialize_graph(const SemiplanarGraph& g, VertexId center = 0,
                            std::string_view config_json = {});
void save_graph(const std::filesystem::path& path, const SemiplanarGraph& g, VertexId center = 0,
                std::string_view config_json = {});

} // namespace semiplanar
