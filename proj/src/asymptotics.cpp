#include "cpdiv/asymptotics.hpp"

#include "cpdiv/error.hpp"
#include "cpdiv/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace cpdiv {

TailProbability estrella_pvalue(const TailQuery& q) {
    if (!(q.x > 0.0) || q.m < 1 || !(q.epsilon > 0.0 && q.epsilon < 0.5)) {
        throw DomainError("tail query needs x > 0, m >= 1 and 0 < eps < 0.5");
    }
    const double m = static_cast<double>(q.m);
    if (q.x <= m) {
        return {1.0, true};
    }
    const double ratio = (1.0 - q.epsilon) / q.epsilon;
    const double bracket = std::log(ratio * ratio) * (1.0 - m / q.x) + 2.0 / q.x;
    const double raw = std::pow(q.x / 2.0, m / 2.0) * std::exp(-q.x / 2.0) * bracket / std::tgamma(m / 2.0);
    if (raw < 0.0) {
        return {0.0, true};
    }
    if (raw > 1.0) {
        return {1.0, true};
    }
    return {raw, false};
}

double estrella_decreasing_from(int m, double epsilon) {
    if (m < 1 || !(epsilon > 0.0 && epsilon < 0.5)) {
        throw DomainError("need m >= 1 and 0 < eps < 0.5");
    }
    const double md = static_cast<double>(m);
    const double ratio = (1.0 - epsilon) / epsilon;
    const double a = std::log(ratio * ratio);
    // d/dx of the log of the approximation
    auto slope = [&](double x) {
        const double bracket = a * (1.0 - md / x) + 2.0 / x;
        return md / (2.0 * x) - 0.5 + (a * md - 2.0) / (x * x * bracket);
    };
    double lo = md + 2.0;
    if (slope(lo) < 0.0) {
        return lo;
    }
    double hi = lo + 1.0;
    while (slope(hi) >= 0.0) {
        lo = hi;
        hi += 1.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) >= 0.0 ? lo : hi) = mid;
    }
    return hi;
}

double estrella_quantile(double level, int m, double epsilon, double tol) {
    if (!(level > 0.0 && level < 1.0)) {
        throw DomainError("quantile level must lie in (0, 1)");
    }
    const double target = 1.0 - level;
    auto tail = [&](double x) { return estrella_pvalue({x, m, epsilon}).pvalue; };
    double lo = estrella_decreasing_from(m, epsilon);
    if (tail(lo) <= target) {
        throw DomainError("level too low for the large-x tail approximation");
    }
    double hi = lo + 1.0;
    while (tail(hi) > target) {
        hi *= 2.0;
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (tail(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double gumbel_cdf(double x) {
    return std::exp(-std::exp(-(x - std::numbers::ln2)));
}

double gumbel_survival(double x) {
    return -std::expm1(-std::exp(-(x - std::numbers::ln2)));
}

double gumbel_quantile(double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw DomainError("quantile level must lie in (0, 1)");
    }
    return std::numbers::ln2 - std::log(-std::log(level));
}

double kolmogorov_alternating_series(double x, double tol) {
    if (x <= 0.0) {
        return 0.0;
    }
    double sum = 0.0;
    for (int j = 1;; ++j) {
        const double term = std::exp(-2.0 * j * j * x);
        sum += (j % 2 == 1) ? term : -term;
        if (term < tol / 10.0) {
            break;
        }
    }
    return 1.0 - 2.0 * sum;
}

double kolmogorov_theta_series(double x, double tol) {
    if (x <= 0.0) {
        return 0.0;
    }
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double front = std::sqrt(2.0 * std::numbers::pi / x);
    double sum = 0.0;
    for (int j = 1;; ++j) {
        const double odd = 2.0 * j - 1.0;
        const double term = std::exp(-odd * odd * pi2 / (8.0 * x));
        sum += term;
        if (front * term < tol / 10.0) {
            break;
        }
    }
    return front * sum;
}

double sup_bridge_squared_cdf(double x, double tol) {
    if (x <= 0.0) {
        return 0.0;
    }
    // Both series converge everywhere; each is fast on its own side of 0.5.
    const double cdf = x >= 0.5 ? kolmogorov_alternating_series(x, tol) : kolmogorov_theta_series(x, tol);
    return std::clamp(cdf, 0.0, 1.0);
}

double sup_bridge_squared_survival(double x, double tol) {
    if (x <= 0.0) {
        return 1.0;
    }
    if (x >= 0.5) {
        // 2 sum (-1)^(j-1) exp(-2 j^2 x), summed directly to keep precision in the tail.
        double sum = 0.0;
        for (int j = 1;; ++j) {
            const double term = std::exp(-2.0 * j * j * x);
            sum += (j % 2 == 1) ? term : -term;
            if (term < tol / 10.0) {
                break;
            }
        }
        return std::clamp(2.0 * sum, 0.0, 1.0);
    }
    return 1.0 - sup_bridge_squared_cdf(x, tol);
}

double sup_bridge_squared_quantile(double level, double tol) {
    if (!(level > 0.0 && level < 1.0) || !(tol > 0.0)) {
        throw DomainError("quantile level must lie in (0, 1) and tol must be positive");
    }
    double lo = 0.0;
    double hi = 1.0;
    while (sup_bridge_squared_cdf(hi, tol * 1e-3) < level) {
        hi *= 2.0;
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (sup_bridge_squared_cdf(mid, tol * 1e-3) < level) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void validate(const BridgeSimConfig& cfg) {
    if (cfg.m < 1) {
        throw DomainError("bridge dimension m must be at least 1");
    }
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 0.5)) {
        throw DomainError("bridge trimming level must lie in (0, 0.5)");
    }
    if (cfg.grid_points < 2) {
        throw DomainError("bridge grid needs at least 2 points");
    }
    if (cfg.paths < 1) {
        throw DomainError("bridge simulation needs at least 1 path");
    }
}

double bessel_sup_for_path(const BridgeSimConfig& cfg, std::uint64_t index, std::size_t stride) {
    validate(cfg);
    if (stride < 1) {
        throw DomainError("grid stride must be at least 1");
    }
    const std::size_t points = cfg.grid_points;
    const double eps = cfg.epsilon;
    const double step = (1.0 - 2.0 * eps) / static_cast<double>(points - 1);
    auto engine = stream_engine(cfg.seed, index);
    std::normal_distribution<double> normal(0.0, 1.0);

    // W is simulated at eps, eps + h, ..., 1 - eps and at 1; B(t) = W(t) - t W(1).
    std::vector<double> squared_norm(points, 0.0);
    std::vector<double> walk(points);
    for (int d = 0; d < cfg.m; ++d) {
        double w = std::sqrt(eps) * normal(engine);
        walk[0] = w;
        for (std::size_t j = 1; j < points; ++j) {
            w += std::sqrt(step) * normal(engine);
            walk[j] = w;
        }
        const double w1 = w + std::sqrt(eps) * normal(engine);
        for (std::size_t j = 0; j < points; ++j) {
            const double t = eps + step * static_cast<double>(j);
            const double b = walk[j] - t * w1;
            squared_norm[j] += b * b;
        }
    }
    double sup = 0.0;
    for (std::size_t j = 0; j < points; j += stride) {
        const double t = eps + step * static_cast<double>(j);
        sup = std::max(sup, squared_norm[j] / (t * (1.0 - t)));
    }
    return sup;
}

std::vector<double> simulate_bessel_sups(const BridgeSimConfig& cfg) {
    validate(cfg);
    std::vector<double> sups(cfg.paths);
    parallel_for(cfg.paths, cfg.threads, [&](std::size_t i) { sups[i] = bessel_sup_for_path(cfg, i); });
    return sups;
}

double empirical_quantile_sorted(const std::vector<double>& sorted, double level) {
    if (sorted.empty()) {
        throw DomainError("empirical quantile of an empty sample");
    }
    if (!(level >= 0.0 && level <= 1.0)) {
        throw DomainError("quantile level must lie in [0, 1]");
    }
    const auto n = static_cast<double>(sorted.size());
    auto rank = static_cast<std::size_t>(std::ceil(n * level - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

double empirical_quantile(std::vector<double> sample, double level) {
    std::sort(sample.begin(), sample.end());
    return empirical_quantile_sorted(sample, level);
}

std::vector<MonteCarloQuantile> mc_bessel_sup_quantiles(const BridgeSimConfig& cfg, const std::vector<double>& levels) {
    const auto sups = simulate_bessel_sups(cfg);
    std::vector<double> sorted(sups);
    std::sort(sorted.begin(), sorted.end());

    std::vector<std::string> warnings;
    if (cfg.grid_points < 100) {
        warnings.emplace_back("fewer than 100 grid points: supremum biased low");
    }
    if (cfg.paths < 1000) {
        warnings.emplace_back("fewer than 1000 paths: wide confidence interval");
    }

    const std::size_t batches = std::min<std::size_t>(20, cfg.paths / 50);
    std::vector<MonteCarloQuantile> out;
    out.reserve(levels.size());
    for (const double level : levels) {
        MonteCarloQuantile q;
        q.value = empirical_quantile_sorted(sorted, level);
        q.warnings = warnings;
        if (batches >= 2) {
            // Batches are contiguous runs of path indices; the spread of their
            // quantiles estimates the error of the full-sample quantile.
            std::vector<double> batch_values;
            batch_values.reserve(batches);
            for (std::size_t b = 0; b < batches; ++b) {
                const auto begin = sups.begin() + static_cast<std::ptrdiff_t>(cfg.paths * b / batches);
                const auto end = sups.begin() + static_cast<std::ptrdiff_t>(cfg.paths * (b + 1) / batches);
                batch_values.push_back(empirical_quantile(std::vector<double>(begin, end), level));
            }
            const double mean = std::accumulate(batch_values.begin(), batch_values.end(), 0.0) / static_cast<double>(batches);
            double ss = 0.0;
            for (const double v : batch_values) {
                ss += (v - mean) * (v - mean);
            }
            const double sd = std::sqrt(ss / static_cast<double>(batches - 1));
            q.standard_error = sd / std::sqrt(static_cast<double>(batches));
            q.batches = batches;
        } else {
            q.warnings.emplace_back("too few paths to estimate a standard error");
        }
        out.push_back(std::move(q));
    }
    return out;
}

MonteCarloQuantile mc_bessel_sup_quantile(const BridgeSimConfig& cfg, double level) {
    return mc_bessel_sup_quantiles(cfg, {level}).front();
}

} // namespace cpdiv
