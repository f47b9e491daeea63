#include "cpdiv/cli.hpp"

#include "cpdiv/asymptotics.hpp"
#include "cpdiv/error.hpp"
#include "cpdiv/io.hpp"
#include "cpdiv/simulation.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cpdiv {

namespace {

std::string format_number(double v, int precision) {
    const auto j = json_number(v, precision);
    return j.is_null() ? (std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf")) : j.dump();
}

ObservedSeries load_input(const RunConfig& cfg) {
    if (cfg.input_path.has_value() == cfg.dataset.has_value()) {
        throw ParseError("exactly one of --input or --dataset is required");
    }
    return cfg.dataset ? builtin_dataset(*cfg.dataset) : load_series_csv(*cfg.input_path);
}

SegmentationConfig segmentation_config(const RunConfig& cfg) {
    SegmentationConfig s;
    s.kind = parse_statistic_kind(cfg.statistic, cfg.lambda, cfg.darling_erdos_form);
    s.epsilon = cfg.epsilon;
    s.p_threshold = cfg.p_threshold;
    s.trimming = cfg.trimming;
    s.pvalue_method = cfg.pvalue_method;
    s.monte_carlo.paths = cfg.mc_paths;
    s.monte_carlo.grid_points = cfg.mc_grid;
    s.monte_carlo.seed = cfg.seed;
    s.monte_carlo.threads = cfg.threads;
    s.m = cfg.m;
    s.options.boundary_clamp = cfg.boundary_clamp;
    validate(s);
    return s;
}

std::string run_detect(const RunConfig& cfg) {
    const auto series = load_input(cfg);
    const auto seg = segmentation_config(cfg);
    const auto d = test_segment(series, 1, series.size(), seg);
    if (!d.testable) {
        throw DomainError(d.reason);
    }
    std::ostringstream os;
    if (cfg.format == OutputFormat::Csv) {
        os << "k,value\n";
        for (const auto& e : d.profile.entries) {
            os << e.k << ',' << format_number(e.value, cfg.precision) << '\n';
        }
        return os.str();
    }
    nlohmann::json j;
    j["decision"] = to_json(d, cfg.precision);
    j["profile"] = to_json(d.profile, 0, cfg.precision);
    j["pvalue"] = json_number(d.p_value, cfg.precision);
    return j.dump(2) + "\n";
}

std::string run_segment(const RunConfig& cfg) {
    const auto series = load_input(cfg);
    const auto seg = segmentation_config(cfg);
    const auto result = binary_segmentation(series, seg);
    std::ostringstream os;
    if (cfg.format == OutputFormat::Csv) {
        os << "step,first,last,candidate_first,candidate_last,k_hat,statistic,p_value,reject\n";
        std::size_t step = 0;
        for (const auto& d : result.trace) {
            os << ++step << ',' << d.first << ',' << d.last << ',' << d.candidate_first << ',' << d.candidate_last
               << ',' << d.k_hat << ',' << format_number(d.statistic, cfg.precision) << ','
               << format_number(d.p_value, cfg.precision) << ',' << (d.reject ? "true" : "false") << '\n';
        }
        return os.str();
    }
    auto j = to_json(result, cfg.precision);
    j["config"] = {{"statistic", seg.kind.name()},
                   {"lambda", json_number(seg.kind.lambda(), cfg.precision)},
                   {"epsilon", json_number(seg.epsilon, cfg.precision)},
                   {"threshold", json_number(seg.p_threshold, cfg.precision)},
                   {"trimming", std::string(to_string(seg.trimming))},
                   {"pvalue_method", std::string(to_string(seg.pvalue_method))}};
    return j.dump(2) + "\n";
}

std::string run_simulate(const RunConfig& cfg) {
    SimulationParams p;
    p.sections = cfg.sections;
    p.trials_per_section = cfg.trials_per_section;
    p.theta0 = cfg.theta0;
    p.replications = cfg.replications;
    p.epsilon = cfg.epsilon;
    p.lambdas = cfg.lambdas;
    p.levels = cfg.levels;
    p.seed = cfg.seed;
    p.darling_erdos_form = cfg.darling_erdos_form;
    p.options.boundary_clamp = cfg.boundary_clamp;
    p.critical_value_sim.paths = cfg.mc_paths;
    p.critical_value_sim.grid_points = cfg.mc_grid;
    p.critical_value_sim.seed = cfg.seed;
    p.critical_value_sim.threads = cfg.threads;
    p.threads = cfg.threads;
    // The size study trims T and Q by k < eps K or k > (1 - eps) K.
    p.trimming = cfg.trimming == TrimmingRule::Round ? TrimmingRule::Strict : cfg.trimming;
    const auto table = simulate_null(SimulationDesign(std::move(p)));
    std::ostringstream os;
    if (cfg.format == OutputFormat::Csv) {
        write_size_table_csv(table, os, cfg.precision);
        return os.str();
    }
    return to_json(table, cfg.precision).dump(2) + "\n";
}

std::string run_quantiles(const RunConfig& cfg) {
    struct Entry {
        double level;
        double value;
        std::optional<double> standard_error;
    };
    std::vector<Entry> entries;
    if (cfg.law == "gumbel") {
        for (const double level : cfg.levels) entries.push_back({level, gumbel_quantile(level), {}});
    } else if (cfg.law == "bridge") {
        for (const double level : cfg.levels) entries.push_back({level, sup_bridge_squared_quantile(level), {}});
    } else if (cfg.law == "estrella") {
        for (const double level : cfg.levels) {
            entries.push_back({level, estrella_quantile(level, cfg.m, cfg.epsilon), {}});
        }
    } else if (cfg.law == "bessel") {
        BridgeSimConfig sim;
        sim.m = cfg.m;
        sim.epsilon = cfg.epsilon;
        sim.paths = cfg.mc_paths;
        sim.grid_points = cfg.mc_grid;
        sim.seed = cfg.seed;
        sim.threads = cfg.threads;
        const auto qs = mc_bessel_sup_quantiles(sim, cfg.levels);
        for (std::size_t i = 0; i < qs.size(); ++i) {
            entries.push_back({cfg.levels[i], qs[i].value, qs[i].standard_error});
        }
    } else {
        throw ParseError("unknown law '" + cfg.law + "' (expected gumbel, bridge, bessel or estrella)");
    }
    std::ostringstream os;
    if (cfg.format == OutputFormat::Csv) {
        os << "level,value\n";
        for (const auto& e : entries) {
            os << format_number(e.level, cfg.precision) << ',' << format_number(e.value, cfg.precision) << '\n';
        }
        return os.str();
    }
    nlohmann::json j;
    j["law"] = cfg.law;
    auto rows = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json row{{"level", json_number(e.level, cfg.precision)}, {"value", json_number(e.value, cfg.precision)}};
        if (e.standard_error) {
            row["std_error"] = json_number(*e.standard_error, cfg.precision);
        }
        rows.push_back(std::move(row));
    }
    j["quantiles"] = std::move(rows);
    return j.dump(2) + "\n";
}

} // namespace

Subcommand parse_subcommand(const std::string& text) {
    if (text == "detect") return Subcommand::Detect;
    if (text == "segment") return Subcommand::Segment;
    if (text == "simulate") return Subcommand::Simulate;
    if (text == "quantiles") return Subcommand::Quantiles;
    throw ParseError("unknown subcommand '" + text + "'");
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
    if (flag) {
        return *flag;
    }
    if (const char* env = std::getenv("CPDIV_SEED"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const auto value = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
            throw ParseError("CPDIV_SEED must be an unsigned integer, got '" + std::string(env) + "'");
        }
        return value;
    }
    return kDefaultSeed;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.precision < 1 || config.precision > 15) {
            throw ParseError("--precision must lie in 1..15");
        }
        std::string artifact;
        switch (config.subcommand) {
        case Subcommand::Detect: artifact = run_detect(config); break;
        case Subcommand::Segment: artifact = run_segment(config); break;
        case Subcommand::Simulate: artifact = run_simulate(config); break;
        case Subcommand::Quantiles: artifact = run_quantiles(config); break;
        }
        if (config.output_path) {
            std::ofstream file(*config.output_path, std::ios::binary);
            if (!file) {
                throw std::runtime_error("cannot write '" + *config.output_path + "'");
            }
            file << artifact;
        } else {
            out << artifact;
        }
        return kExitOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParseError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomainError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternalError;
    }
}

} // namespace cpdiv
