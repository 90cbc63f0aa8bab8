#pragma once

#include <semiplanar/error.hpp>
#include <semiplanar/graph.hpp>
#include <semiplanar/graph_io.hpp>
#include <semiplanar/surface.hpp>
#include <semiplanar/tiling.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace test_support {

inline std::string data_path(const std::string& name) { return std::string(SEMIPLANAR_TEST_DATA) + "/" + name; }

inline semiplanar::GraphFile fixture(const std::string& name) { return semiplanar::load_graph(data_path(name)); }

inline semiplanar::GeneratedTiling tiling(const char* kind, int radius) {
    return semiplanar::generate({semiplanar::parse_tiling_kind(kind), radius});
}

/// Vertex at planar position (x, y) of a layout.
inline semiplanar::VertexId vertex_at(const semiplanar::PlanarLayout& layout, double x, double y) {
    for (std::size_t v = 0; v < layout.position.size(); ++v) {
        if (std::abs(layout.position[v] - semiplanar::Point2(x, y)) < 1e-9) return static_cast<semiplanar::VertexId>(v);
    }
    throw std::runtime_error("no vertex at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
}

template <typename F>
semiplanar::ErrorKind error_kind(F&& f) {
    try {
        f();
    } catch (const semiplanar::Error& e) {
        return e.kind();
    }
    throw std::runtime_error("expected semiplanar::Error");
}

} // namespace test_support
