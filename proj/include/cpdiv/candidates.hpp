#pragma once

#include "cpdiv/series_model.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace cpdiv {

// How the trimmed candidate set N(eps) is derived from a segment of K sections.
enum class TrimmingRule {
    Round,  // {r, ..., K - r}, r = max(1, round(eps K))
    Strict, // {k : eps <= k/K <= 1 - eps}
    Trials, // {k : eps <= N_k/N_K <= 1 - eps}, trimming on cumulative trial counts
};

std::string_view to_string(TrimmingRule rule) noexcept;
TrimmingRule parse_trimming_rule(std::string_view text);

// Candidate change points for a segment of `sections` sections. Trials needs
// the counts, so this overload throws DomainError for that rule.
std::vector<std::size_t> candidate_set(std::size_t sections, double epsilon, TrimmingRule rule);

std::vector<std::size_t> candidate_set(const CumulativeCounts& counts, double epsilon, TrimmingRule rule);

} // namespace cpdiv
