#pragma once

#include "semiplanar_cli/cli.hpp"

#include <semiplanar/analysis.hpp>

#include <optional>
#include <string>
#include <vector>

namespace semiplanar::cli {

struct SuiteContext {
    const SemiplanarGraph& graph;
    VertexId center;
    std::string name;
    const RunConfig& config;
};

/// Reports of the selected suite ("all", "rvc", "poincare", "mvi" or "gram"),
/// in a fixed order.
std::vector<InequalityReport> run_suites(const SuiteContext& context);

} // namespace semiplanar::cli
