#include "semiplanar/graph_io.hpp"

#include "semiplanar/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace semiplanar {

namespace {

using nlohmann::json;

std::string line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw Error(ErrorKind::Parse, field + ": " + what);
}

VertexId as_id(const json& value, const std::string& field) {
    if (!value.is_number_integer()) field_error(field, "expected an integer vertex id");
    return value.get<VertexId>();
}

} // namespace

GraphFile parse_graph(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    if (!doc.is_object()) field_error("<root>", "expected a JSON object");

    RawGraph raw;
    if (!doc.contains("vertices") || !doc["vertices"].is_number_unsigned()) {
        field_error("vertices", "expected a non-negative integer");
    }
    raw.vertex_count = doc["vertices"].get<std::size_t>();

    if (!doc.contains("rotation") || !doc["rotation"].is_array()) {
        field_error("rotation", "expected an array of per-vertex neighbour lists");
    }
    const auto& rotation = doc["rotation"];
    for (std::size_t v = 0; v < rotation.size(); ++v) {
        const std::string where = "rotation[" + std::to_string(v) + "] (vertex " + std::to_string(v) + ")";
        if (!rotation[v].is_array()) field_error(where, "expected an array of neighbour ids");
        std::vector<VertexId> list;
        for (std::size_t k = 0; k < rotation[v].size(); ++k) {
            list.push_back(as_id(rotation[v][k], where + "[" + std::to_string(k) + "]"));
        }
        raw.rotation.push_back(std::move(list));
    }

    if (doc.contains("boundary")) {
        if (!doc["boundary"].is_array()) field_error("boundary", "expected an array of vertex ids");
        for (std::size_t k = 0; k < doc["boundary"].size(); ++k) {
            raw.boundary.push_back(as_id(doc["boundary"][k], "boundary[" + std::to_string(k) + "]"));
        }
    }

    GraphFile out{build_graph(raw), 0};
    if (doc.contains("center")) {
        out.center = as_id(doc["center"], "center");
        if (out.center < 0 || out.center >= static_cast<VertexId>(raw.vertex_count)) {
            field_error("center", "vertex id out of range");
        }
    }
    return out;
}

GraphFile load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open graph file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_graph(buffer.str());
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

std::string serialize_graph(const SemiplanarGraph& g, VertexId center, std::string_view config_json) {
    // Written by hand so that each rotation list sits on its own line.
    std::ostringstream os;
    os << "{\n";
    if (!config_json.empty()) {
        os << "  \"config\": " << json::parse(config_json).dump() << ",\n";
    }
    os << "  \"vertices\": " << g.vertex_count() << ",\n";
    os << "  \"center\": " << center << ",\n";
    os << "  \"boundary\": [";
    const auto boundary = g.boundary_vertices();
    for (std::size_t i = 0; i < boundary.size(); ++i) os << (i ? ", " : "") << boundary[i];
    os << "],\n  \"rotation\": [\n";
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
        os << "    [";
        const auto& rot = g.rotation(v);
        for (std::size_t k = 0; k < rot.size(); ++k) os << (k ? ", " : "") << rot[k];
        os << "]" << (v + 1 < static_cast<VertexId>(g.vertex_count()) ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
    return os.str();
}

void save_graph(const std::filesystem::path& path, const SemiplanarGraph& g, VertexId center,
                std::string_view config_json) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write graph file " + path.string());
    out << serialize_graph(g, center, config_json);
}

} // namespace semiplanar
