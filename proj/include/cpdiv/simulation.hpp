#pragma once

#include "cpdiv/asymptotics.hpp"
#include "cpdiv/candidates.hpp"
#include "cpdiv/statistics.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cpdiv {

struct SimulationParams {
    std::size_t sections = 64;               // K
    std::int64_t trials_per_section = 1;     // used when `trials` is empty
    std::vector<std::int64_t> trials;        // optional per-section n_i (size K)
    double theta0 = 0.5;
    std::size_t replications = 5000;
    double epsilon = 0.05;
    std::vector<double> lambdas{0.0, 1.0, 2.0};
    bool include_modified_lrt = true;
    bool include_darling_erdos = true;
    bool include_wald = true;
    std::vector<double> levels{0.90, 0.95, 0.99}; // 1 - alpha
    std::uint64_t seed = 20240601;
    TrimmingRule trimming = TrimmingRule::Strict;
    DarlingErdosForm darling_erdos_form = DarlingErdosForm::LogLog;
    StatisticOptions options{};
    // Used for the T_lambda and Q critical values unless (m, eps) = (1, 0.05).
    BridgeSimConfig critical_value_sim{};
    unsigned threads = 0;
};

// Validated null-hypothesis design. Throws DomainError for zero replications,
// theta0 outside (0, 1), fewer than 2 sections, a trial vector of the wrong
// size or levels outside [0, 1].
class SimulationDesign {
public:
    explicit SimulationDesign(SimulationParams params);

    const SimulationParams& params() const noexcept { return params_; }
    std::vector<std::int64_t> section_trials() const;
    // S~, G, then T_lambda for each lambda, then Q (as enabled).
    std::vector<StatisticKind> kinds() const;

private:
    SimulationParams params_;
};

struct SizeRow {
    StatisticKind kind = StatisticKind::power(0.0);
    double level = 0.0;          // 1 - alpha
    double quantile = 0.0;       // empirical x_{1-alpha}
    double critical_value = 0.0; // asymptotic x_{1-alpha}
    double size = 0.0;           // fraction of replications above the critical value
    double standard_error = 0.0; // sqrt(size (1 - size) / R)
};

struct SizeTable {
    std::vector<SizeRow> rows;
    std::size_t replications = 0;
    std::uint64_t seed = 0;
    std::size_t sections = 0;
    // Replications whose maximum was +infinity, per kind (same order as kinds()).
    std::vector<std::pair<StatisticKind, std::size_t>> degenerate_replications;

    const SizeRow* find(const StatisticKind& kind, double level) const;
};

// Asymptotic critical value of the maximum of `kind` at `level`.
double asymptotic_critical_value(const StatisticKind& kind, double level, double epsilon,
                                 const BridgeSimConfig& sim);

// Maximum statistic of every kind for replication `index`; depends only on (seed, index).
std::vector<double> simulate_replication(const SimulationDesign& design, std::uint64_t index);

// Replication-major samples: result[kind][replication].
std::vector<std::vector<double>> simulate_maxima(const SimulationDesign& design);

SizeTable simulate_null(const SimulationDesign& design);

struct LevelQuantile {
    double level = 0.0;
    double value = 0.0;
};

std::vector<LevelQuantile> empirical_quantiles(const SimulationDesign& design, const StatisticKind& kind);

// statistic,level,quantile,critical_value,size,std_error,replications,seed
void write_size_table_csv(const SizeTable& table, std::ostream& out, int precision = 6);

} // namespace cpdiv
