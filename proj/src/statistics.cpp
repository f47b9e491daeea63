#include "cpdiv/statistics.hpp"

#include "cpdiv/divergence.hpp"
#include "cpdiv/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace cpdiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_lambda(double lambda) {
    std::ostringstream os;
    os << lambda;
    return os.str();
}

// Returns estimates with the optional continuity correction applied.
SegmentEstimates estimates(const CumulativeCounts& counts, std::size_t k, bool boundary_clamp) {
    auto e = segment_mles(counts, k);
    if (boundary_clamp) {
        e.theta0 = clamp_estimate(e.theta0, e.trials_before);
        e.theta1 = clamp_estimate(e.theta1, e.trials_after());
    }
    return e;
}

} // namespace

std::string StatisticKind::label() const {
    switch (family_) {
    case StatisticFamily::PowerDivergence: return "T_" + format_lambda(lambda_);
    case StatisticFamily::Wald: return "Q";
    case StatisticFamily::LikelihoodRatio: return "S";
    case StatisticFamily::ModifiedLikelihoodRatio: return "S~";
    case StatisticFamily::DarlingErdos: return "G";
    }
    return "?";
}

std::string StatisticKind::name() const {
    switch (family_) {
    case StatisticFamily::PowerDivergence: return "power";
    case StatisticFamily::Wald: return "wald";
    case StatisticFamily::LikelihoodRatio: return "lrt";
    case StatisticFamily::ModifiedLikelihoodRatio: return "lrt-modified";
    case StatisticFamily::DarlingErdos: return "darling-erdos";
    }
    return "?";
}

StatisticKind parse_statistic_kind(const std::string& name, double lambda, DarlingErdosForm form) {
    if (name == "power") return StatisticKind::power(lambda);
    if (name == "wald") return StatisticKind::wald();
    if (name == "lrt") return StatisticKind::likelihood_ratio();
    if (name == "lrt-modified") return StatisticKind::modified_likelihood_ratio();
    if (name == "darling-erdos") return StatisticKind::darling_erdos(form);
    throw ParseError("unknown statistic '" + name + "' (expected power, wald, lrt, lrt-modified or darling-erdos)");
}

double power_statistic(const CumulativeCounts& counts, std::size_t k, double lambda, bool boundary_clamp) {
    const auto raw = segment_mles(counts, k);
    if (raw.theta0 == raw.theta1) {
        return 0.0;
    }
    const auto e = boundary_clamp ? estimates(counts, k, true) : raw;
    const double d = power_divergence_bernoulli(e.theta0, e.theta1, lambda);
    if (std::isinf(d)) {
        return kInf;
    }
    return e.scale() * 2.0 * d;
}

double wald_statistic(const CumulativeCounts& counts, std::size_t k, bool boundary_clamp) {
    const auto raw = segment_mles(counts, k);
    if (raw.theta0 == raw.theta1) {
        return 0.0;
    }
    const auto e = boundary_clamp ? estimates(counts, k, true) : raw;
    auto interior = [](double t) { return t > 0.0 && t < 1.0; };
    if (!interior(e.theta0) || !interior(e.theta1)) {
        return kInf;
    }
    const double total = static_cast<double>(e.total_trials);
    const double info = static_cast<double>(e.trials_before) / total * fisher_information_bernoulli(e.theta0) +
                        static_cast<double>(e.trials_after()) / total * fisher_information_bernoulli(e.theta1);
    const double diff = e.theta0 - e.theta1;
    return e.scale() * diff * diff * info;
}

double lrt_statistic(const CumulativeCounts& counts, std::size_t k) {
    const auto e = segment_mles(counts, k);
    const double pooled = counts.pooled_estimate();
    const double before = static_cast<double>(e.trials_before) * kullback_bernoulli(e.theta0, pooled);
    const double after = static_cast<double>(e.trials_after()) * kullback_bernoulli(e.theta1, pooled);
    return std::max(0.0, 2.0 * (before + after));
}

double modified_lrt_statistic(const CumulativeCounts& counts, std::size_t k) {
    const auto e = segment_mles(counts, k);
    const double total = static_cast<double>(e.total_trials);
    const double weight = static_cast<double>(e.trials_before) * static_cast<double>(e.trials_after()) / (total * total);
    return weight * lrt_statistic(counts, k);
}

double darling_erdos_normalize(double s_max, std::int64_t total_trials, DarlingErdosForm form) {
    if (!(s_max >= 0.0)) {
        throw DomainError("Darling-Erdos normalization needs a non-negative maximum");
    }
    const double half_log_pi = 0.5 * std::log(std::numbers::pi);
    if (form == DarlingErdosForm::Printed) {
        if (total_trials < 3) {
            throw DomainError("Darling-Erdos normalization needs N_K >= 3");
        }
        const double l = std::log(static_cast<double>(total_trials));
        return std::sqrt(2.0 * l * s_max) - 2.0 * l - 0.5 * std::log(l) + half_log_pi;
    }
    // log log log N_K must exist: N_K > e^e.
    if (total_trials < 16) {
        throw DomainError("log-log Darling-Erdos normalization needs N_K >= 16");
    }
    const double ll = std::log(std::log(static_cast<double>(total_trials)));
    return std::sqrt(2.0 * ll * s_max) - 2.0 * ll - 0.5 * std::log(ll) + half_log_pi;
}

double pointwise_statistic(const CumulativeCounts& counts, std::size_t k, const StatisticKind& kind,
                           const StatisticOptions& options) {
    const bool clamp = options.boundary_clamp.value_or(kind.default_boundary_clamp());
    switch (kind.family()) {
    case StatisticFamily::PowerDivergence: return power_statistic(counts, k, kind.lambda(), clamp);
    case StatisticFamily::Wald: return wald_statistic(counts, k, clamp);
    case StatisticFamily::LikelihoodRatio:
    case StatisticFamily::DarlingErdos: return lrt_statistic(counts, k);
    case StatisticFamily::ModifiedLikelihoodRatio: return modified_lrt_statistic(counts, k);
    }
    return 0.0;
}

CandidateProfile build_profile(const CumulativeCounts& counts, const StatisticKind& kind, double epsilon,
                               TrimmingRule rule, const StatisticOptions& options) {
    CandidateProfile profile;
    profile.kind = kind;
    profile.sections = counts.sections();
    profile.rule = rule;
    profile.epsilon = kind.family() == StatisticFamily::DarlingErdos ? 0.0 : epsilon;
    if (counts.sections() < 2) {
        throw DomainError("segment too short: a profile needs at least 2 sections");
    }
    const auto candidates = candidate_set(counts, profile.epsilon, rule);
    if (candidates.empty()) {
        throw DomainError("segment too short: no candidates survive trimming at epsilon = " + std::to_string(epsilon));
    }
    profile.entries.reserve(candidates.size());
    for (const auto k : candidates) {
        profile.entries.push_back({k, pointwise_statistic(counts, k, kind, options)});
    }
    return profile;
}

MaxResult max_statistic(const CandidateProfile& profile) {
    if (profile.entries.empty()) {
        throw DomainError("cannot maximize an empty profile");
    }
    MaxResult best;
    best.k_hat = profile.entries.front().k;
    best.value = profile.entries.front().value;
    best.ties = 0;
    for (const auto& entry : profile.entries) {
        if (entry.value > best.value) {
            best.k_hat = entry.k;
            best.value = entry.value;
            best.ties = 1;
        } else if (entry.value == best.value) {
            ++best.ties;
        }
    }
    best.degenerate = std::isinf(best.value);
    return best;
}

} // namespace cpdiv
