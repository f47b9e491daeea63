#include "cpdiv/series_model.hpp"

#include "cpdiv/error.hpp"

#include <algorithm>
#include <string>

namespace cpdiv {

void validate_section(const Section& s, std::size_t index) {
    const auto where = " at section " + std::to_string(index);
    if (s.trials < 1) {
        throw DomainError("trial count must be at least 1" + where);
    }
    if (s.successes < 0) {
        throw DomainError("success count must be non-negative" + where);
    }
    if (s.successes > s.trials) {
        throw DomainError("x exceeds n" + where);
    }
}

ObservedSeries::ObservedSeries(std::vector<Section> sections) : sections_(std::move(sections)) {
    if (sections_.size() < 2) {
        throw DomainError("a series needs at least 2 sections, got " + std::to_string(sections_.size()));
    }
    for (std::size_t i = 0; i < sections_.size(); ++i) {
        validate_section(sections_[i], i + 1);
    }
}

const Section& ObservedSeries::section(std::size_t i) const {
    if (i < 1 || i > sections_.size()) {
        throw DomainError("section index " + std::to_string(i) + " outside 1.." + std::to_string(sections_.size()));
    }
    return sections_[i - 1];
}

std::span<const Section> ObservedSeries::slice(std::size_t first, std::size_t last) const {
    if (first < 1 || last > sections_.size() || first > last) {
        throw DomainError("invalid section range [" + std::to_string(first) + "," + std::to_string(last) + "]");
    }
    return std::span<const Section>(sections_).subspan(first - 1, last - first + 1);
}

ObservedSeries ObservedSeries::scaled(std::int64_t factor) const {
    if (factor < 1) {
        throw DomainError("scale factor must be a positive integer");
    }
    std::vector<Section> out(sections_);
    for (auto& s : out) {
        s.successes *= factor;
        s.trials *= factor;
    }
    return ObservedSeries(std::move(out));
}

CumulativeCounts::CumulativeCounts(std::span<const Section> sections) {
    trials_.reserve(sections.size() + 1);
    successes_.reserve(sections.size() + 1);
    trials_.push_back(0);
    successes_.push_back(0);
    std::size_t index = 1;
    for (const auto& s : sections) {
        validate_section(s, index++);
        trials_.push_back(trials_.back() + s.trials);
        successes_.push_back(successes_.back() + s.successes);
    }
}

std::vector<Section> CumulativeCounts::differences() const {
    std::vector<Section> out;
    out.reserve(sections());
    for (std::size_t k = 1; k < trials_.size(); ++k) {
        out.push_back({successes_[k] - successes_[k - 1], trials_[k] - trials_[k - 1]});
    }
    return out;
}

SegmentEstimates segment_mles(const CumulativeCounts& counts, std::size_t k) {
    const auto K = counts.sections();
    if (k < 1 || k + 1 > K) {
        throw DomainError("candidate index " + std::to_string(k) + " outside 1.." + std::to_string(K == 0 ? 0 : K - 1));
    }
    SegmentEstimates e;
    e.k = k;
    e.trials_before = counts.trials(k);
    e.total_trials = counts.total_trials();
    const auto y_k = counts.successes(k);
    e.theta0 = static_cast<double>(y_k) / static_cast<double>(e.trials_before);
    e.theta1 = static_cast<double>(counts.total_successes() - y_k) / static_cast<double>(e.trials_after());
    return e;
}

double fisher_information_bernoulli(double theta) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw DomainError("Fisher information is unbounded at theta = " + std::to_string(theta));
    }
    return 1.0 / (theta * (1.0 - theta));
}

double clamp_estimate(double theta, std::int64_t trials) noexcept {
    const double delta = 1.0 / (2.0 * static_cast<double>(trials));
    return std::clamp(theta, delta, 1.0 - delta);
}

} // namespace cpdiv
