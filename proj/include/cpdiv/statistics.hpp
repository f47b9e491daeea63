#pragma once

#include "cpdiv/candidates.hpp"
#include "cpdiv/series_model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cpdiv {

// Which radical the Darling-Erdos normalization uses.
//   Printed: sqrt(2 log N_K S) - 2 log N_K - 1/2 log log N_K + 1/2 log pi
//   LogLog:  sqrt(2 log log N_K S) - 2 log log N_K - 1/2 log log log N_K + 1/2 log pi
// Only LogLog converges to the Gumbel(log 2, 1) law.
enum class DarlingErdosForm { Printed, LogLog };

enum class StatisticFamily {
    PowerDivergence, // T_lambda
    Wald,            // Q
    LikelihoodRatio, // S
    ModifiedLikelihoodRatio, // S~ = N_k (N_K - N_k) / N_K^2 * S
    DarlingErdos,    // G, a normalization of max_k S_k
};

class StatisticKind {
public:
    static StatisticKind power(double lambda) { return {StatisticFamily::PowerDivergence, lambda, {}}; }
    static StatisticKind wald() { return {StatisticFamily::Wald, 0.0, {}}; }
    static StatisticKind likelihood_ratio() { return {StatisticFamily::LikelihoodRatio, 0.0, {}}; }
    static StatisticKind modified_likelihood_ratio() { return {StatisticFamily::ModifiedLikelihoodRatio, 0.0, {}}; }
    static StatisticKind darling_erdos(DarlingErdosForm form = DarlingErdosForm::LogLog) {
        return {StatisticFamily::DarlingErdos, 0.0, form};
    }

    StatisticFamily family() const noexcept { return family_; }
    double lambda() const noexcept { return lambda_; }
    DarlingErdosForm darling_erdos_form() const noexcept { return form_; }

    // Wald and power divergences with lambda < 0 clamp boundary estimates by default.
    bool default_boundary_clamp() const noexcept {
        return family_ == StatisticFamily::Wald || (family_ == StatisticFamily::PowerDivergence && lambda_ < 0.0);
    }

    // "T_2", "Q", "S", "S~", "G" style labels.
    std::string label() const;
    // Machine name used on the command line and in serialized output.
    std::string name() const;

    friend bool operator==(const StatisticKind&, const StatisticKind&) = default;

private:
    StatisticKind(StatisticFamily family, double lambda, DarlingErdosForm form)
        : family_(family), lambda_(lambda), form_(form) {}

    StatisticFamily family_;
    double lambda_;
    DarlingErdosForm form_;
};

// "power", "wald", "lrt", "lrt-modified", "darling-erdos"; lambda only used by "power".
StatisticKind parse_statistic_kind(const std::string& name, double lambda = 0.0,
                                   DarlingErdosForm form = DarlingErdosForm::LogLog);

// Per-evaluation switches; an unset boundary_clamp falls back to the kind's default.
struct StatisticOptions {
    std::optional<bool> boundary_clamp;
};

// T_lambda(k) = N_k (N_K - N_k) / N_K * 2 D_lambda(theta0_hat, theta1_hat).
double power_statistic(const CumulativeCounts& counts, std::size_t k, double lambda, bool boundary_clamp = false);

// Q_k = N_k (N_K - N_k) / N_K (theta0_hat - theta1_hat)^2 I_hat with the
// trial-weighted Fisher information estimate. Boundary estimates without the
// clamp give +infinity unless both estimates coincide.
double wald_statistic(const CumulativeCounts& counts, std::size_t k, bool boundary_clamp = true);

// Binomial likelihood-ratio statistic S_k against the pooled estimate Y_K / N_K.
double lrt_statistic(const CumulativeCounts& counts, std::size_t k);

// S~_k = N_k (N_K - N_k) / N_K^2 * S_k.
double modified_lrt_statistic(const CumulativeCounts& counts, std::size_t k);

// Darling-Erdos normalization of the LRT maximum; requires N_K >= 3 and s_max >= 0.
double darling_erdos_normalize(double s_max, std::int64_t total_trials,
                               DarlingErdosForm form = DarlingErdosForm::Printed);

// Pointwise statistic of the given kind. For DarlingErdos this is S_k.
double pointwise_statistic(const CumulativeCounts& counts, std::size_t k, const StatisticKind& kind,
                           const StatisticOptions& options = {});

struct ProfileEntry {
    std::size_t k = 0;
    double value = 0.0;
};

struct CandidateProfile {
    std::vector<ProfileEntry> entries;
    double epsilon = 0.0;
    std::size_t sections = 0;
    TrimmingRule rule = TrimmingRule::Round;
    StatisticKind kind = StatisticKind::power(0.0);

    bool empty() const noexcept { return entries.empty(); }
};

// Evaluates the statistic at every k of the trimmed candidate set. DarlingErdos
// profiles are untrimmed S profiles (epsilon forced to 0). Throws DomainError
// when the candidate set is empty.
CandidateProfile build_profile(const CumulativeCounts& counts, const StatisticKind& kind, double epsilon,
                               TrimmingRule rule = TrimmingRule::Round, const StatisticOptions& options = {});

struct MaxResult {
    std::size_t k_hat = 0;
    double value = 0.0;
    std::size_t ties = 0;
    bool degenerate = false; // the maximum is +infinity
};

// Smallest arg max; +infinity entries win. Throws DomainError on an empty profile.
MaxResult max_statistic(const CandidateProfile& profile);

} // namespace cpdiv
