#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cpdiv {

// Upper-tail query for the supremum of a normalized squared m-dimensional
// Brownian bridge over [eps, 1 - eps].
struct TailQuery {
    double x = 0.0;
    int m = 1;
    double epsilon = 0.05;
};

struct TailProbability {
    double pvalue = 1.0;
    // The large-x expansion fell outside [0, 1] (or x <= m) and was clamped.
    bool out_of_regime = false;
};

// Estrella's closed-form tail approximation
//   (x/2)^(m/2) e^(-x/2) / Gamma(m/2) * (log((1-eps)^2/eps^2) (1 - m/x) + 2/x),
// clamped into [0, 1]; x <= m reports 1.
TailProbability estrella_pvalue(const TailQuery& query);

// Point beyond which the approximation is strictly decreasing: the larger of
// m + 2 and its last turning point (which exceeds m + 2 once m >= 3).
double estrella_decreasing_from(int m, double epsilon);

// Inverts the approximation on its decreasing branch, by bisection to `tol`.
double estrella_quantile(double level, int m, double epsilon, double tol = 1e-10);

// Gumbel law with location log 2 and unit scale, the limit of the log-log
// Darling-Erdos normalized LRT maximum.
double gumbel_cdf(double x);
double gumbel_survival(double x);
// Returns log 2 - log(-log(level)) for a level 1 - alpha in (0, 1).
double gumbel_quantile(double level);

// P(sup_t B(t)^2 <= x) for a standard Brownian bridge B, i.e. the Kolmogorov
// distribution evaluated at sqrt(x). Terms are summed until they drop below tol/10.
double sup_bridge_squared_cdf(double x, double tol = 1e-12);
double sup_bridge_squared_survival(double x, double tol = 1e-12);
// Root of the CDF at `level`, by bisection to `tol`.
double sup_bridge_squared_quantile(double level, double tol = 1e-9);

// The two series representations, exposed separately so they can be checked
// against each other:
//   alternating: 1 - 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 x)
//   theta:       sqrt(2 pi / x) sum_{j>=1} exp(-(2j-1)^2 pi^2 / (8 x))
double kolmogorov_alternating_series(double x, double tol);
double kolmogorov_theta_series(double x, double tol);

struct BridgeSimConfig {
    int m = 1;
    double epsilon = 0.05;
    std::size_t grid_points = 2000;
    std::size_t paths = 20000;
    std::uint64_t seed = 20240601;
    unsigned threads = 0;
};

// Throws DomainError for m < 1, eps outside (0, 0.5), grid_points < 2 or paths < 1.
void validate(const BridgeSimConfig& cfg);

// sup over the grid of ||B(t)||^2 / (t (1 - t)) for path `index`. The grid is
// grid_points equally spaced times spanning [eps, 1 - eps]; `stride` > 1 keeps
// every stride-th grid time and reuses the same Brownian increments.
double bessel_sup_for_path(const BridgeSimConfig& cfg, std::uint64_t index, std::size_t stride = 1);

// One supremum per path, in path order.
std::vector<double> simulate_bessel_sups(const BridgeSimConfig& cfg);

struct MonteCarloQuantile {
    double value = 0.0;
    double standard_error = 0.0; // from batch quantiles
    std::size_t batches = 0;
    std::vector<std::string> warnings;
};

MonteCarloQuantile mc_bessel_sup_quantile(const BridgeSimConfig& cfg, double level);
std::vector<MonteCarloQuantile> mc_bessel_sup_quantiles(const BridgeSimConfig& cfg, const std::vector<double>& levels);

// Order statistic at ceil(n * level) (1-based, at least the first) of a sample.
double empirical_quantile(std::vector<double> sample, double level);
double empirical_quantile_sorted(const std::vector<double>& sorted, double level);

} // namespace cpdiv
