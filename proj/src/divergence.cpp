#include "cpdiv/divergence.hpp"

#include "cpdiv/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cpdiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// p log(p / q) with 0 log(0/q) = 0 and p log(p/0) = +inf for p > 0.
double xlogratio(double p, double q) {
    if (p == 0.0) {
        return 0.0;
    }
    if (q == 0.0) {
        return kInf;
    }
    return p * std::log(p / q);
}

// p^(lambda+1) / q^lambda for lambda(1+lambda) != 0, including zero-mass points.
double power_term(double p, double q, double lambda) {
    if (p == 0.0 && q == 0.0) {
        return 0.0;
    }
    if (p == 0.0) {
        return lambda + 1.0 > 0.0 ? 0.0 : kInf;
    }
    if (q == 0.0) {
        return lambda > 0.0 ? kInf : 0.0;
    }
    return std::pow(p, lambda + 1.0) / std::pow(q, lambda);
}

} // namespace

PhiFunction::PhiFunction(std::function<double(double)> phi, double second_derivative_at_one)
    : phi_(std::move(phi)), second_derivative_(second_derivative_at_one) {
    if (!phi_) {
        throw DomainError("phi function is empty");
    }
    if (std::abs(phi_(1.0)) > 1e-12) {
        throw DomainError("phi(1) must be 0, got " + std::to_string(phi_(1.0)));
    }
    if (second_derivative_ == 0.0 || !std::isfinite(second_derivative_)) {
        throw DomainError("phi''(1) must be finite and non-zero");
    }
}

PhiFunction PhiFunction::power(double lambda) {
    if (lambda == 0.0) {
        return PhiFunction([](double t) { return (t == 0.0 ? 0.0 : t * std::log(t)) - t + 1.0; }, 1.0);
    }
    if (lambda == -1.0) {
        return PhiFunction([](double t) { return -std::log(t) + t - 1.0; }, 1.0);
    }
    return PhiFunction(
        [lambda](double t) {
            return (std::pow(t, lambda + 1.0) - t - lambda * (t - 1.0)) / (lambda * (1.0 + lambda));
        },
        1.0);
}

double kullback_bernoulli(double theta0, double theta1) {
    return xlogratio(theta0, theta1) + xlogratio(1.0 - theta0, 1.0 - theta1);
}

double power_divergence_bernoulli(double theta0, double theta1, double lambda) {
    if (theta0 == theta1) {
        return 0.0;
    }
    double value = 0.0;
    if (lambda == 0.0) {
        value = kullback_bernoulli(theta0, theta1);
    } else if (lambda == -1.0) {
        value = kullback_bernoulli(theta1, theta0);
    } else {
        const double sum = power_term(theta0, theta1, lambda) + power_term(1.0 - theta0, 1.0 - theta1, lambda);
        if (std::isinf(sum)) {
            return kInf;
        }
        value = (sum - 1.0) / (lambda * (1.0 + lambda));
    }
    // Rounding can leave a tiny negative residue near theta0 == theta1.
    return std::max(value, 0.0);
}

double phi_divergence_bernoulli(const PhiFunction& phi, double theta0, double theta1) {
    auto interior = [](double t) { return t > 0.0 && t < 1.0; };
    if (!interior(theta0) || !interior(theta1)) {
        throw DomainError("generic phi-divergence needs probabilities in (0,1); use power_divergence_bernoulli at the boundary");
    }
    return theta1 * phi(theta0 / theta1) + (1.0 - theta1) * phi((1.0 - theta0) / (1.0 - theta1));
}

} // namespace cpdiv
