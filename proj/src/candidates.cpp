#include "cpdiv/candidates.hpp"

#include "cpdiv/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cpdiv {

namespace {

// Absorbs representation error in eps * K (0.05 * 500 and friends).
constexpr double kSlack = 1e-9;

void check_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 0.5)) {
        throw DomainError("trimming level must lie in [0, 0.5), got " + std::to_string(epsilon));
    }
}

} // namespace

std::string_view to_string(TrimmingRule rule) noexcept {
    switch (rule) {
    case TrimmingRule::Round: return "round";
    case TrimmingRule::Strict: return "strict";
    case TrimmingRule::Trials: return "trials";
    }
    return "round";
}

TrimmingRule parse_trimming_rule(std::string_view text) {
    if (text == "round") return TrimmingRule::Round;
    if (text == "strict") return TrimmingRule::Strict;
    if (text == "trials") return TrimmingRule::Trials;
    throw ParseError("unknown trimming rule '" + std::string(text) + "' (expected round, strict or trials)");
}

std::vector<std::size_t> candidate_set(std::size_t sections, double epsilon, TrimmingRule rule) {
    check_epsilon(epsilon);
    if (sections < 2) {
        throw DomainError("candidate set needs a segment of at least 2 sections");
    }
    const auto K = sections;
    std::vector<std::size_t> out;
    switch (rule) {
    case TrimmingRule::Round: {
        const auto r = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(epsilon * static_cast<double>(K))));
        for (std::size_t k = r; k + r <= K; ++k) {
            out.push_back(k);
        }
        break;
    }
    case TrimmingRule::Strict: {
        const double lo = epsilon * static_cast<double>(K) - kSlack;
        const double hi = (1.0 - epsilon) * static_cast<double>(K) + kSlack;
        for (std::size_t k = 1; k < K; ++k) {
            const auto kd = static_cast<double>(k);
            if (kd >= lo && kd <= hi) {
                out.push_back(k);
            }
        }
        break;
    }
    case TrimmingRule::Trials:
        throw DomainError("trials trimming needs cumulative counts");
    }
    return out;
}

std::vector<std::size_t> candidate_set(const CumulativeCounts& counts, double epsilon, TrimmingRule rule) {
    if (rule != TrimmingRule::Trials) {
        return candidate_set(counts.sections(), epsilon, rule);
    }
    check_epsilon(epsilon);
    const auto K = counts.sections();
    if (K < 2) {
        throw DomainError("candidate set needs a segment of at least 2 sections");
    }
    const auto total = static_cast<double>(counts.total_trials());
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k < K; ++k) {
        const auto nk = static_cast<double>(counts.trials(k));
        if (nk >= epsilon * total - kSlack && nk <= (1.0 - epsilon) * total + kSlack) {
            out.push_back(k);
        }
    }
    return out;
}

} // namespace cpdiv
