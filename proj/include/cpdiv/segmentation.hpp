#pragma once

#include "cpdiv/asymptotics.hpp"
#include "cpdiv/candidates.hpp"
#include "cpdiv/series_model.hpp"
#include "cpdiv/statistics.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cpdiv {

enum class PValueMethod {
    Estrella,   // closed-form tail approximation
    MonteCarlo, // simulated tied-down Bessel suprema
};

std::string_view to_string(PValueMethod method) noexcept;
PValueMethod parse_pvalue_method(std::string_view text);

struct SegmentationConfig {
    StatisticKind kind = StatisticKind::power(2.0);
    double epsilon = 0.05;
    double p_threshold = 0.1;
    TrimmingRule trimming = TrimmingRule::Round;
    std::size_t min_sections = 2;
    PValueMethod pvalue_method = PValueMethod::Estrella;
    // Paths, grid and seed for the MonteCarlo method; m and epsilon come from this config.
    BridgeSimConfig monte_carlo{};
    int m = 1;
    StatisticOptions options{};
};

// Throws DomainError for thresholds outside (0, 1), eps outside (0, 0.5) or min_sections < 2.
void validate(const SegmentationConfig& cfg);

// Asymptotic upper-tail probability of a maximum statistic. Which law applies
// depends on the kind: the trimmed tied-down Bessel supremum (power, Wald, LRT),
// the squared bridge supremum (modified LRT) or the Gumbel law (Darling-Erdos).
// Holds the simulated sample when the Monte Carlo method is selected.
class PValueCalculator {
public:
    explicit PValueCalculator(const SegmentationConfig& cfg);

    // p-value of `statistic` for a profile trimmed at `epsilon`.
    TailProbability operator()(const StatisticKind& kind, double statistic, double epsilon) const;

private:
    const std::vector<double>& sorted_sample(double epsilon) const;

    SegmentationConfig cfg_;
    mutable std::vector<std::pair<double, std::vector<double>>> samples_;
};

struct TestDecision {
    StatisticKind kind = StatisticKind::power(2.0);
    std::size_t first = 0; // tested segment, global 1-based section indices
    std::size_t last = 0;
    bool testable = false;
    std::string reason; // why the segment was not tested
    std::size_t candidate_first = 0; // global indices of the candidate range
    std::size_t candidate_last = 0;
    std::size_t k_hat = 0; // global index; the segment splits into [first, k_hat] and [k_hat + 1, last]
    std::size_t k_hat_local = 0;
    double max_value = 0.0;  // maximum of the profile
    double statistic = 0.0;  // value the p-value is computed at (normalized for Darling-Erdos)
    std::size_t ties = 0;
    double p_value = 1.0;
    double threshold = 0.0;
    bool reject = false;
    bool degenerate = false;
    bool out_of_regime = false;
    CandidateProfile profile; // local indices k = 1..(last - first)
};

// Single-change test on sections [first, last] of `series`.
TestDecision test_segment(const ObservedSeries& series, std::size_t first, std::size_t last,
                          const SegmentationConfig& cfg);
TestDecision test_segment(const ObservedSeries& series, std::size_t first, std::size_t last,
                          const SegmentationConfig& cfg, const PValueCalculator& pvalues);

struct SegmentationResult {
    std::vector<std::pair<std::size_t, std::size_t>> segments;
    std::vector<std::size_t> change_points;
    std::vector<TestDecision> trace; // depth-first, left child first
    std::size_t tests_performed = 0;
    double bonferroni_bound = 0.0; // tests_performed * p_threshold
};

SegmentationResult binary_segmentation(const ObservedSeries& series, const SegmentationConfig& cfg);

} // namespace cpdiv
