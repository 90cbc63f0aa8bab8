#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace semiplanar::cli {

struct RunConfig {
    std::string command;

    // Graph source: a file, or a generated tiling when no file is given.
    std::string graph;
    std::string kind;
    int radius = 0;
    std::optional<int> center; // overrides the file's center

    // gen / solve / extend / surface
    std::string ball;     // "p,R"
    std::string boundary; // expression or field file
    std::string field;
    std::string ball_volume; // "p,R"

    // numeric parameters
    int K = 64;
    int M = 4096;
    double h = 0.05;
    int order = 3;
    double tau = 1e-8;
    double eps = 0.25;
    double beta = 1.5;
    double delta = 0.1;
    double d = 1.0;
    std::vector<int> radii;
    double tolerance = 1e-12;
    int fields = 6;  // random harmonic fields per suite
    int sources = 6; // bi-Lipschitz sample: sources x targets vertex pairs
    int targets = 8;
    std::string candidates; // comma-separated field files for dim

    std::string suite = "all";
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitBoundFailure = 1;
inline constexpr int kExitInputError = 2;

/// Parses argv (without the program name). Returns nullopt after printing
/// help, or throws Error(ErrorKind::InvalidArgument) on bad flags.
std::optional<RunConfig> parse_arguments(const std::vector<std::string>& args, std::ostream& out);

/// The resolved configuration as a compact JSON object with a fixed key order.
std::string config_json(const RunConfig& config);

/// Executes one command. Artifacts go to config.out when set, otherwise to
/// `out`; diagnostics go to `err`. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_arguments followed by run, mapping every error to an exit status.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace semiplanar::cli
