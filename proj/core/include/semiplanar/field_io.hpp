#pragma once

#include "semiplanar/laplace.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace semiplanar {

/// Field file: { "values": [real or null per vertex],
///               "domain": { "kind": "full" } | { "kind": "ball", "center": p, "radius": R },
///               "config": {...} (optional) }
/// null marks a vertex outside the field's support.
ScalarField parse_field(std::string_view text);
ScalarField load_field(const std::filesystem::path& path);

std::string serialize_field(const ScalarField& f, std::string_view config_json = {});
void save_field(const std::filesystem::path& path, const ScalarField& f, std::string_view config_json = {});

} // namespace semiplanar
