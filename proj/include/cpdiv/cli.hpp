#pragma once

#include "cpdiv/candidates.hpp"
#include "cpdiv/segmentation.hpp"
#include "cpdiv/statistics.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cpdiv {

enum class Subcommand { Detect, Segment, Simulate, Quantiles };
enum class OutputFormat { Json, Csv };

inline constexpr std::uint64_t kDefaultSeed = 20240601;

// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitDomainError = 3;
inline constexpr int kExitInternalError = 4;

struct RunConfig {
    Subcommand subcommand = Subcommand::Detect;

    // detect / segment input: exactly one of these
    std::optional<std::string> input_path;
    std::optional<std::string> dataset;

    std::string statistic = "power";
    double lambda = 2.0;
    DarlingErdosForm darling_erdos_form = DarlingErdosForm::LogLog;
    double epsilon = 0.05;
    double p_threshold = 0.1;
    TrimmingRule trimming = TrimmingRule::Round;
    std::optional<bool> boundary_clamp;
    PValueMethod pvalue_method = PValueMethod::Estrella;
    std::size_t mc_paths = 20000;
    std::size_t mc_grid = 2000;

    // simulate
    std::size_t sections = 64;
    std::int64_t trials_per_section = 1;
    double theta0 = 0.5;
    std::size_t replications = 5000;
    std::vector<double> lambdas{0.0, 1.0, 2.0};

    // quantiles: gumbel | bridge | bessel | estrella
    std::string law = "gumbel";
    int m = 1;

    std::vector<double> levels{0.90, 0.95, 0.99};
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
    OutputFormat format = OutputFormat::Json;
    std::optional<std::string> output_path;
    int precision = 6;
};

Subcommand parse_subcommand(const std::string& text);

// Seed precedence: explicit flag, then CPDIV_SEED, then kDefaultSeed.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

// Executes one command. Artifacts go to config.output_path when set, else to
// `out`; diagnostics go to `err`. Returns one of the kExit* codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace cpdiv
