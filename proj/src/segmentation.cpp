#include "cpdiv/segmentation.hpp"

#include "cpdiv/error.hpp"

#include <algorithm>
#include <cmath>

namespace cpdiv {

std::string_view to_string(PValueMethod method) noexcept {
    return method == PValueMethod::Estrella ? "estrella" : "monte-carlo";
}

PValueMethod parse_pvalue_method(std::string_view text) {
    if (text == "estrella") return PValueMethod::Estrella;
    if (text == "monte-carlo" || text == "mc") return PValueMethod::MonteCarlo;
    throw ParseError("unknown p-value method '" + std::string(text) + "' (expected estrella or monte-carlo)");
}

void validate(const SegmentationConfig& cfg) {
    if (!(cfg.p_threshold > 0.0 && cfg.p_threshold < 1.0)) {
        throw DomainError("p-value threshold must lie in (0, 1)");
    }
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 0.5)) {
        throw DomainError("trimming level must lie in (0, 0.5)");
    }
    if (cfg.min_sections < 2) {
        throw DomainError("min_sections must be at least 2");
    }
    if (cfg.m < 1) {
        throw DomainError("parameter dimension m must be at least 1");
    }
}

PValueCalculator::PValueCalculator(const SegmentationConfig& cfg) : cfg_(cfg) {}

const std::vector<double>& PValueCalculator::sorted_sample(double epsilon) const {
    for (const auto& [eps, sample] : samples_) {
        if (eps == epsilon) {
            return sample;
        }
    }
    auto sim = cfg_.monte_carlo;
    sim.epsilon = epsilon;
    sim.m = cfg_.m;
    auto sample = simulate_bessel_sups(sim);
    std::sort(sample.begin(), sample.end());
    samples_.emplace_back(epsilon, std::move(sample));
    return samples_.back().second;
}

TailProbability PValueCalculator::operator()(const StatisticKind& kind, double statistic, double epsilon) const {
    if (std::isinf(statistic)) {
        return {0.0, false};
    }
    switch (kind.family()) {
    case StatisticFamily::DarlingErdos:
        return {gumbel_survival(statistic), false};
    case StatisticFamily::ModifiedLikelihoodRatio:
        return {sup_bridge_squared_survival(statistic), false};
    case StatisticFamily::PowerDivergence:
    case StatisticFamily::Wald:
    case StatisticFamily::LikelihoodRatio:
        break;
    }
    if (!(epsilon > 0.0)) {
        throw DomainError("the trimmed supremum law needs epsilon > 0");
    }
    if (statistic <= 0.0) {
        return {1.0, false};
    }
    if (cfg_.pvalue_method == PValueMethod::Estrella) {
        return estrella_pvalue({statistic, cfg_.m, epsilon});
    }
    const auto& sample = sorted_sample(epsilon);
    const auto above = sample.end() - std::upper_bound(sample.begin(), sample.end(), statistic);
    return {static_cast<double>(above) / static_cast<double>(sample.size()), false};
}

TestDecision test_segment(const ObservedSeries& series, std::size_t first, std::size_t last,
                          const SegmentationConfig& cfg) {
    return test_segment(series, first, last, cfg, PValueCalculator(cfg));
}

TestDecision test_segment(const ObservedSeries& series, std::size_t first, std::size_t last,
                          const SegmentationConfig& cfg, const PValueCalculator& pvalues) {
    validate(cfg);
    TestDecision d;
    d.kind = cfg.kind;
    d.first = first;
    d.last = last;
    d.threshold = cfg.p_threshold;

    const auto slice = series.slice(first, last);
    if (slice.size() < cfg.min_sections) {
        d.reason = "untestable: segment shorter than " + std::to_string(cfg.min_sections) + " sections";
        return d;
    }
    const CumulativeCounts counts(slice);
    const double epsilon = cfg.kind.family() == StatisticFamily::DarlingErdos ? 0.0 : cfg.epsilon;
    if (candidate_set(counts, epsilon, cfg.trimming).empty()) {
        d.reason = "untestable: no candidates survive trimming";
        return d;
    }

    d.testable = true;
    d.profile = build_profile(counts, cfg.kind, cfg.epsilon, cfg.trimming, cfg.options);
    const auto offset = first - 1;
    d.candidate_first = d.profile.entries.front().k + offset;
    d.candidate_last = d.profile.entries.back().k + offset;

    const auto best = max_statistic(d.profile);
    d.k_hat_local = best.k_hat;
    d.k_hat = best.k_hat + offset;
    d.max_value = best.value;
    d.ties = best.ties;
    d.degenerate = best.degenerate;
    d.statistic = best.value;
    if (cfg.kind.family() == StatisticFamily::DarlingErdos && !best.degenerate) {
        try {
            d.statistic = darling_erdos_normalize(best.value, counts.total_trials(), cfg.kind.darling_erdos_form());
        } catch (const DomainError& e) {
            d.testable = false;
            d.reason = std::string("untestable: ") + e.what();
            return d;
        }
    }

    if (d.degenerate) {
        d.p_value = 0.0;
    } else {
        const auto tail = pvalues(cfg.kind, d.statistic, d.profile.epsilon);
        d.p_value = tail.pvalue;
        d.out_of_regime = tail.out_of_regime;
    }
    d.reject = d.p_value < cfg.p_threshold;
    return d;
}

namespace {

void segment_recursive(const ObservedSeries& series, std::size_t first, std::size_t last,
                       const SegmentationConfig& cfg, const PValueCalculator& pvalues, SegmentationResult& out) {
    auto decision = test_segment(series, first, last, cfg, pvalues);
    if (!decision.testable) {
        out.segments.emplace_back(first, last);
        return;
    }
    const bool reject = decision.reject;
    const auto split = decision.k_hat;
    out.trace.push_back(std::move(decision));
    ++out.tests_performed;
    if (!reject) {
        out.segments.emplace_back(first, last);
        return;
    }
    out.change_points.push_back(split);
    segment_recursive(series, first, split, cfg, pvalues, out);
    segment_recursive(series, split + 1, last, cfg, pvalues, out);
}

} // namespace

SegmentationResult binary_segmentation(const ObservedSeries& series, const SegmentationConfig& cfg) {
    validate(cfg);
    SegmentationResult result;
    const PValueCalculator pvalues(cfg);
    segment_recursive(series, 1, series.size(), cfg, pvalues, result);
    std::sort(result.change_points.begin(), result.change_points.end());
    result.bonferroni_bound = static_cast<double>(result.tests_performed) * cfg.p_threshold;
    return result;
}

} // namespace cpdiv
