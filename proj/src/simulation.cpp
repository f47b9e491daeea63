#include "cpdiv/simulation.hpp"

#include "cpdiv/error.hpp"
#include "cpdiv/rng.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace cpdiv {

namespace {

bool is_tabulated(double level) {
    return level == 0.90 || level == 0.95 || level == 0.99;
}

// Exact quantiles of the trimmed univariate supremum at eps = 0.05.
double tabulated_bessel_quantile(double level) {
    if (level == 0.90) return 8.31;
    if (level == 0.95) return 9.90;
    return 13.45;
}

std::string format_double(double v, int precision) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::ostringstream os;
    os.precision(precision);
    os << v;
    return os.str();
}

} // namespace

SimulationDesign::SimulationDesign(SimulationParams params) : params_(std::move(params)) {
    const auto& p = params_;
    if (p.replications < 1) {
        throw DomainError("a simulation design needs at least 1 replication");
    }
    if (!(p.theta0 > 0.0 && p.theta0 < 1.0)) {
        throw DomainError("null parameter theta0 must lie in (0, 1)");
    }
    if (p.sections < 2) {
        throw DomainError("a simulation design needs at least 2 sections");
    }
    if (!(p.epsilon >= 0.0 && p.epsilon < 0.5)) {
        throw DomainError("trimming level must lie in [0, 0.5)");
    }
    if (!p.trials.empty() && p.trials.size() != p.sections) {
        throw DomainError("per-section trial vector must have one entry per section");
    }
    for (const auto n : section_trials()) {
        if (n < 1) {
            throw DomainError("trial counts must be at least 1");
        }
    }
    for (const double level : p.levels) {
        if (!(level >= 0.0 && level <= 1.0)) {
            throw DomainError("quantile levels must lie in [0, 1]");
        }
    }
    if (p.include_darling_erdos) {
        std::int64_t total = 0;
        for (const auto n : section_trials()) {
            total += n;
        }
        const std::int64_t needed = p.darling_erdos_form == DarlingErdosForm::LogLog ? 16 : 3;
        if (total < needed) {
            throw DomainError("too few trials for the Darling-Erdos normalization");
        }
    }
}

std::vector<std::int64_t> SimulationDesign::section_trials() const {
    if (!params_.trials.empty()) {
        return params_.trials;
    }
    return std::vector<std::int64_t>(params_.sections, params_.trials_per_section);
}

std::vector<StatisticKind> SimulationDesign::kinds() const {
    std::vector<StatisticKind> out;
    if (params_.include_modified_lrt) {
        out.push_back(StatisticKind::modified_likelihood_ratio());
    }
    if (params_.include_darling_erdos) {
        out.push_back(StatisticKind::darling_erdos(params_.darling_erdos_form));
    }
    for (const double lambda : params_.lambdas) {
        out.push_back(StatisticKind::power(lambda));
    }
    if (params_.include_wald) {
        out.push_back(StatisticKind::wald());
    }
    return out;
}

const SizeRow* SizeTable::find(const StatisticKind& kind, double level) const {
    for (const auto& row : rows) {
        if (row.kind == kind && std::abs(row.level - level) < 1e-12) {
            return &row;
        }
    }
    return nullptr;
}

double asymptotic_critical_value(const StatisticKind& kind, double level, double epsilon, const BridgeSimConfig& sim) {
    switch (kind.family()) {
    case StatisticFamily::DarlingErdos:
        return gumbel_quantile(level);
    case StatisticFamily::ModifiedLikelihoodRatio:
        return sup_bridge_squared_quantile(level);
    case StatisticFamily::PowerDivergence:
    case StatisticFamily::Wald:
    case StatisticFamily::LikelihoodRatio:
        break;
    }
    if (sim.m == 1 && epsilon == 0.05 && is_tabulated(level)) {
        return tabulated_bessel_quantile(level);
    }
    auto cfg = sim;
    cfg.epsilon = epsilon;
    return mc_bessel_sup_quantile(cfg, level).value;
}

std::vector<double> simulate_replication(const SimulationDesign& design, std::uint64_t index) {
    const auto& p = design.params();
    auto engine = stream_engine(p.seed, index);
    const auto trials = design.section_trials();
    std::vector<Section> sections;
    sections.reserve(trials.size());
    for (const auto n : trials) {
        std::binomial_distribution<std::int64_t> draw(n, p.theta0);
        sections.push_back({draw(engine), n});
    }
    const CumulativeCounts counts(sections);
    const auto K = counts.sections();

    // Untrimmed LRT profile feeds both S~ and G.
    double s_max = 0.0;
    double s_tilde_max = 0.0;
    const double total = static_cast<double>(counts.total_trials());
    for (std::size_t k = 1; k < K; ++k) {
        const double s = lrt_statistic(counts, k);
        const double nk = static_cast<double>(counts.trials(k));
        s_max = std::max(s_max, s);
        s_tilde_max = std::max(s_tilde_max, nk * (total - nk) / (total * total) * s);
    }

    const auto candidates = candidate_set(counts, p.epsilon, p.trimming);
    std::vector<double> out;
    for (const auto& kind : design.kinds()) {
        switch (kind.family()) {
        case StatisticFamily::ModifiedLikelihoodRatio:
            out.push_back(s_tilde_max);
            break;
        case StatisticFamily::DarlingErdos:
            out.push_back(darling_erdos_normalize(s_max, counts.total_trials(), kind.darling_erdos_form()));
            break;
        default: {
            double best = 0.0;
            for (const auto k : candidates) {
                best = std::max(best, pointwise_statistic(counts, k, kind, p.options));
            }
            out.push_back(best);
        }
        }
    }
    return out;
}

std::vector<std::vector<double>> simulate_maxima(const SimulationDesign& design) {
    const auto& p = design.params();
    const auto kinds = design.kinds();
    std::vector<std::vector<double>> samples(kinds.size(), std::vector<double>(p.replications));
    parallel_for(p.replications, p.threads, [&](std::size_t r) {
        const auto maxima = simulate_replication(design, r);
        for (std::size_t j = 0; j < maxima.size(); ++j) {
            samples[j][r] = maxima[j];
        }
    });
    return samples;
}

SizeTable simulate_null(const SimulationDesign& design) {
    const auto& p = design.params();
    const auto kinds = design.kinds();
    auto samples = simulate_maxima(design);

    SizeTable table;
    table.replications = p.replications;
    table.seed = p.seed;
    table.sections = p.sections;
    const auto reps = static_cast<double>(p.replications);

    // Critical values of the trimmed supremum law, simulated at most once per table.
    std::vector<double> bessel_values;
    auto bessel_critical_value = [&](std::size_t level_index) {
        const double level = p.levels[level_index];
        if (p.critical_value_sim.m == 1 && p.epsilon == 0.05 && is_tabulated(level)) {
            return tabulated_bessel_quantile(level);
        }
        if (bessel_values.empty()) {
            auto cfg = p.critical_value_sim;
            cfg.epsilon = p.epsilon;
            for (const auto& q : mc_bessel_sup_quantiles(cfg, p.levels)) {
                bessel_values.push_back(q.value);
            }
        }
        return bessel_values[level_index];
    };

    for (std::size_t j = 0; j < kinds.size(); ++j) {
        auto& sample = samples[j];
        std::sort(sample.begin(), sample.end());
        const auto degenerate = static_cast<std::size_t>(
            std::count_if(sample.begin(), sample.end(), [](double v) { return std::isinf(v); }));
        table.degenerate_replications.emplace_back(kinds[j], degenerate);
        for (std::size_t li = 0; li < p.levels.size(); ++li) {
            const double level = p.levels[li];
            SizeRow row;
            row.kind = kinds[j];
            row.level = level;
            row.quantile = empirical_quantile_sorted(sample, level);
            if (level > 0.0 && level < 1.0) {
                const auto family = kinds[j].family();
                row.critical_value = family == StatisticFamily::DarlingErdos || family == StatisticFamily::ModifiedLikelihoodRatio
                                         ? asymptotic_critical_value(kinds[j], level, p.epsilon, p.critical_value_sim)
                                         : bessel_critical_value(li);
                const auto above = sample.end() - std::upper_bound(sample.begin(), sample.end(), row.critical_value);
                row.size = static_cast<double>(above) / reps;
                row.standard_error = std::sqrt(row.size * (1.0 - row.size) / reps);
            } else {
                row.critical_value = std::nan("");
                row.size = std::nan("");
                row.standard_error = std::nan("");
            }
            table.rows.push_back(row);
        }
    }
    return table;
}

std::vector<LevelQuantile> empirical_quantiles(const SimulationDesign& design, const StatisticKind& kind) {
    auto params = design.params();
    const auto is = [&](StatisticFamily f) { return kind.family() == f; };
    params.include_modified_lrt = is(StatisticFamily::ModifiedLikelihoodRatio);
    params.include_darling_erdos = is(StatisticFamily::DarlingErdos);
    params.include_wald = is(StatisticFamily::Wald);
    params.lambdas.clear();
    if (is(StatisticFamily::PowerDivergence)) {
        params.lambdas.push_back(kind.lambda());
    }
    if (is(StatisticFamily::DarlingErdos)) {
        params.darling_erdos_form = kind.darling_erdos_form();
    }
    if (is(StatisticFamily::LikelihoodRatio)) {
        throw DomainError("the size study does not simulate the raw LRT maximum");
    }
    const SimulationDesign single(std::move(params));
    auto samples = simulate_maxima(single);
    auto& sample = samples.front();
    std::sort(sample.begin(), sample.end());
    std::vector<LevelQuantile> out;
    for (const double level : single.params().levels) {
        out.push_back({level, empirical_quantile_sorted(sample, level)});
    }
    return out;
}

void write_size_table_csv(const SizeTable& table, std::ostream& out, int precision) {
    out << "statistic,level,quantile,critical_value,size,std_error,replications,seed\n";
    for (const auto& row : table.rows) {
        out << row.kind.label() << ',' << format_double(row.level, precision) << ','
            << format_double(row.quantile, precision) << ',' << format_double(row.critical_value, precision) << ','
            << format_double(row.size, precision) << ',' << format_double(row.standard_error, precision) << ','
            << table.replications << ',' << table.seed << '\n';
    }
}

} // namespace cpdiv
