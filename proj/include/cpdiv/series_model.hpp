#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cpdiv {

// One binomial observation: `successes` out of `trials`.
struct Section {
    std::int64_t successes = 0;
    std::int64_t trials = 0;

    friend bool operator==(const Section&, const Section&) = default;
};

// Ordered sequence of binomial sections, indexed 1..K.
class ObservedSeries {
public:
    // Throws DomainError unless K >= 2 and 0 <= x_i <= n_i, n_i >= 1 for every section.
    explicit ObservedSeries(std::vector<Section> sections);

    std::size_t size() const noexcept { return sections_.size(); }

    // 1-based access, matching the section numbering of the data.
    const Section& section(std::size_t i) const;

    std::span<const Section> sections() const noexcept { return sections_; }

    // Sections first..last (1-based, inclusive) as a plain span.
    std::span<const Section> slice(std::size_t first, std::size_t last) const;

    // Same series with every count multiplied by `factor`.
    ObservedSeries scaled(std::int64_t factor) const;

private:
    std::vector<Section> sections_;
};

// Validates one section; throws DomainError naming `index` on failure.
void validate_section(const Section& s, std::size_t index);

// Prefix sums N_0..N_K (trials) and Y_0..Y_K (successes).
class CumulativeCounts {
public:
    explicit CumulativeCounts(std::span<const Section> sections);

    std::size_t sections() const noexcept { return trials_.size() - 1; }

    std::int64_t trials(std::size_t k) const { return trials_.at(k); }
    std::int64_t successes(std::size_t k) const { return successes_.at(k); }

    std::int64_t total_trials() const noexcept { return trials_.back(); }
    std::int64_t total_successes() const noexcept { return successes_.back(); }

    double pooled_estimate() const noexcept {
        return static_cast<double>(total_successes()) / static_cast<double>(total_trials());
    }

    const std::vector<std::int64_t>& trial_prefix() const noexcept { return trials_; }
    const std::vector<std::int64_t>& success_prefix() const noexcept { return successes_; }

    // Differences of the prefix sums; recovers the original sections.
    std::vector<Section> differences() const;

private:
    std::vector<std::int64_t> trials_;
    std::vector<std::int64_t> successes_;
};

inline CumulativeCounts cumulative_counts(const ObservedSeries& series) {
    return CumulativeCounts(series.sections());
}

// MLEs of the success probability before and after a change at section k.
struct SegmentEstimates {
    double theta0 = 0.0;
    double theta1 = 0.0;
    std::size_t k = 0;
    std::int64_t trials_before = 0; // N_k
    std::int64_t total_trials = 0;  // N_K

    std::int64_t trials_after() const noexcept { return total_trials - trials_before; }

    // N_k (N_K - N_k) / N_K
    double scale() const noexcept {
        return static_cast<double>(trials_before) * static_cast<double>(trials_after()) /
               static_cast<double>(total_trials);
    }
};

// Requires 1 <= k <= K-1; throws DomainError otherwise.
SegmentEstimates segment_mles(const CumulativeCounts& counts, std::size_t k);

// 1 / (theta (1 - theta)); throws DomainError for theta outside (0, 1).
double fisher_information_bernoulli(double theta);

// Continuity correction for boundary estimates: clamps theta into
// [delta, 1 - delta] with delta = 1 / (2 * trials).
double clamp_estimate(double theta, std::int64_t trials) noexcept;

} // namespace cpdiv
