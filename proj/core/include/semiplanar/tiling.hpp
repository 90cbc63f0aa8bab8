#pragma once

#include "semiplanar/graph.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace semiplanar {

/// Edge-to-edge tilings of the plane by unit-side regular polygons that the
/// generator knows how to build. All of them have zero curvature everywhere.
enum class TilingKind {
    Triangular,             // 3^6
    Square,                 // 4^4
    Hexagonal,              // 6^3
    Trihexagonal,           // 3.6.3.6
    SnubSquare,             // 3.3.4.3.4
    TruncatedSquare,        // 4.8.8
    TruncatedHexagonal,     // 3.12.12
    TruncatedTrihexagonal,  // 4.6.12
};

inline constexpr TilingKind kAllTilings[] = {
    TilingKind::Triangular,      TilingKind::Square,           TilingKind::Hexagonal,
    TilingKind::Trihexagonal,    TilingKind::SnubSquare,       TilingKind::TruncatedSquare,
    TilingKind::TruncatedHexagonal, TilingKind::TruncatedTrihexagonal,
};

/// Accepts "3^6", "3.3.3.3.3.3", "3.6" (read as 3^6) and the analogous forms
/// for the regular tilings, plus the five Archimedean patterns.
/// Throws ErrorKind::InvalidArgument for anything else.
TilingKind parse_tiling_kind(std::string_view text);

/// Canonical name, e.g. "4^4" or "4.8.8".
std::string tiling_name(TilingKind kind);

/// Cyclic vertex configuration, e.g. {4, 8, 8}.
std::vector<int> vertex_configuration(TilingKind kind);

struct TilingSpec {
    TilingKind kind = TilingKind::Square;
    int radius = 1; // hop radius of the ball whose face fans are complete
};

struct GeneratedTiling {
    SemiplanarGraph graph;
    VertexId center = 0;
    TilingSpec spec;
};

/// Builds the union of all faces meeting B_radius(center). Every vertex of
/// that ball is interior; the remaining vertices are boundary vertices with
/// gap markers. The center is vertex 0 and vertices are ordered by hop
/// distance from it. Throws ErrorKind::InvalidArgument for radius < 1.
GeneratedTiling generate(const TilingSpec& spec);

/// True when `pattern` equals `config` up to cyclic rotation and reflection.
bool same_configuration(const std::vector<int>& pattern, const std::vector<int>& config);

} // namespace semiplanar
