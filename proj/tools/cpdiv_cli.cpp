// cpdiv: change-point detection for binomial sequences with power-divergence tests.

#include "cpdiv/cli.hpp"
#include "cpdiv/error.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

void add_common_output(CLI::App& cmd, cpdiv::RunConfig& cfg, std::optional<std::uint64_t>& seed) {
    cmd.add_option("--seed", seed, "Random seed (default: $CPDIV_SEED, else 20240601)");
    cmd.add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, cpdiv::OutputFormat>{{"json", cpdiv::OutputFormat::Json}, {"csv", cpdiv::OutputFormat::Csv}}));
    cmd.add_option("--output,-o", cfg.output_path, "Write the artifact here instead of stdout");
    cmd.add_option("--precision", cfg.precision, "Significant digits of floating-point output")
        ->check(CLI::Range(1, 15))
        ->capture_default_str();
    cmd.add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

void add_test_options(CLI::App& cmd, cpdiv::RunConfig& cfg, std::string& trimming, std::string& pvalue_method,
                      std::string& de_form) {
    auto* input = cmd.add_option("--input,-i", cfg.input_path, "CSV file with header i,x,n");
    auto* dataset = cmd.add_option("--dataset", cfg.dataset, "Embedded dataset (lindisfarne)");
    input->excludes(dataset);
    cmd.add_option("--statistic", cfg.statistic, "power | wald | lrt | lrt-modified | darling-erdos")
        ->capture_default_str();
    cmd.add_option("--lambda", cfg.lambda, "Power-divergence index")->capture_default_str();
    cmd.add_option("--epsilon", cfg.epsilon, "Trimming level")->capture_default_str();
    cmd.add_option("--threshold", cfg.p_threshold, "Reject when the p-value is below this")->capture_default_str();
    cmd.add_option("--trimming", trimming, "round | strict | trials")->capture_default_str();
    cmd.add_option("--pvalue", pvalue_method, "estrella | monte-carlo")->capture_default_str();
    cmd.add_option("--darling-erdos-form", de_form, "loglog | printed")->capture_default_str();
    cmd.add_option("--clamp", cfg.boundary_clamp, "Clamp boundary estimates (default depends on statistic)");
    cmd.add_option("--mc-paths", cfg.mc_paths, "Paths for Monte Carlo p-values")->capture_default_str();
    cmd.add_option("--mc-grid", cfg.mc_grid, "Grid points for Monte Carlo p-values")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    cpdiv::RunConfig cfg;
    std::optional<std::uint64_t> seed;
    std::string trimming = "round";
    std::string pvalue_method = "estrella";
    std::string de_form = "loglog";

    CLI::App app{"Change-point detection for binomial sequences"};
    app.set_config("--config", "", "INI-style file with one [subcommand] section of key=value options; command-line flags take precedence");
    app.require_subcommand(1);

    auto* detect = app.add_subcommand("detect", "Test a whole series for a single change and emit the candidate profile");
    add_test_options(*detect, cfg, trimming, pvalue_method, de_form);
    add_common_output(*detect, cfg, seed);

    auto* segment = app.add_subcommand("segment", "Binary segmentation into homogeneous segments");
    add_test_options(*segment, cfg, trimming, pvalue_method, de_form);
    add_common_output(*segment, cfg, seed);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo size study under the null");
    simulate->add_option("--sections,-K", cfg.sections, "Sections per replication")->capture_default_str();
    simulate->add_option("--trials", cfg.trials_per_section, "Trials per section")->capture_default_str();
    simulate->add_option("--theta0", cfg.theta0, "Null success probability")->capture_default_str();
    simulate->add_option("--replications,-R", cfg.replications, "Replications")->capture_default_str();
    simulate->add_option("--epsilon", cfg.epsilon, "Trimming level")->capture_default_str();
    simulate->add_option("--lambdas", cfg.lambdas, "Power-divergence indices")->delimiter(',')->capture_default_str();
    simulate->add_option("--levels", cfg.levels, "Quantile levels 1 - alpha")->delimiter(',')->capture_default_str();
    simulate->add_option("--darling-erdos-form", de_form, "loglog | printed")->capture_default_str();
    simulate->add_option("--clamp", cfg.boundary_clamp, "Clamp boundary estimates");
    simulate->add_option("--mc-paths", cfg.mc_paths, "Paths for non-tabulated critical values")->capture_default_str();
    simulate->add_option("--mc-grid", cfg.mc_grid, "Grid points for non-tabulated critical values")->capture_default_str();
    add_common_output(*simulate, cfg, seed);

    auto* quantiles = app.add_subcommand("quantiles", "Asymptotic null distribution quantiles");
    quantiles->add_option("--law", cfg.law, "gumbel | bridge | bessel | estrella")->capture_default_str();
    quantiles->add_option("--levels", cfg.levels, "Levels 1 - alpha")->delimiter(',')->capture_default_str();
    quantiles->add_option("--m", cfg.m, "Parameter dimension")->capture_default_str();
    quantiles->add_option("--epsilon", cfg.epsilon, "Trimming level")->capture_default_str();
    quantiles->add_option("--mc-paths", cfg.mc_paths, "Monte Carlo paths (bessel)")->capture_default_str();
    quantiles->add_option("--mc-grid", cfg.mc_grid, "Monte Carlo grid points (bessel)")->capture_default_str();
    add_common_output(*quantiles, cfg, seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cpdiv::kExitParseError;
    }

    try {
        cfg.subcommand = cpdiv::parse_subcommand(app.get_subcommands().front()->get_name());
        cfg.seed = cpdiv::resolve_seed(seed);
        cfg.trimming = cpdiv::parse_trimming_rule(trimming);
        cfg.pvalue_method = cpdiv::parse_pvalue_method(pvalue_method);
        if (de_form == "loglog") {
            cfg.darling_erdos_form = cpdiv::DarlingErdosForm::LogLog;
        } else if (de_form == "printed") {
            cfg.darling_erdos_form = cpdiv::DarlingErdosForm::Printed;
        } else {
            throw cpdiv::ParseError("unknown Darling-Erdos form '" + de_form + "' (expected loglog or printed)");
        }
    } catch (const cpdiv::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cpdiv::kExitParseError;
    }
    return cpdiv::run(cfg, std::cout, std::cerr);
}
