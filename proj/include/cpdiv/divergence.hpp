#pragma once

#include <functional>

namespace cpdiv {

// Convex generator of a phi-divergence, with phi(1) = 0 and a known phi''(1).
class PhiFunction {
public:
    // Throws DomainError if phi(1) != 0 (to 1e-12) or phi''(1) is zero or not finite.
    PhiFunction(std::function<double(double)> phi, double second_derivative_at_one);

    // Read-Cressie generator phi_lambda, with the t log t - t + 1 (lambda = 0)
    // and -log t + t - 1 (lambda = -1) limits. phi''(1) = 1 for every lambda.
    static PhiFunction power(double lambda);

    double operator()(double t) const { return phi_(t); }
    double second_derivative_at_one() const noexcept { return second_derivative_; }

private:
    std::function<double(double)> phi_;
    double second_derivative_;
};

// Power divergence D_lambda between Bernoulli(theta0) and Bernoulli(theta1).
// lambda = 0 and lambda = -1 are matched exactly and use the Kullback forms;
// any other lambda uses the closed form, which loses precision for |lambda| < 1e-6.
// Boundary probabilities follow 0 log(0/q) = 0, 0^(lambda+1)/q^lambda = 0 for
// lambda > -1, and yield +infinity where a term has positive mass over zero mass.
double power_divergence_bernoulli(double theta0, double theta1, double lambda);

// Kullback-Leibler divergence of Bernoulli(theta1) from Bernoulli(theta0).
double kullback_bernoulli(double theta0, double theta1);

// Generic two-point phi-divergence: theta1 phi(theta0/theta1) + (1-theta1) phi((1-theta0)/(1-theta1)).
// Both probabilities must lie in the open interval (0, 1); throws DomainError otherwise.
double phi_divergence_bernoulli(const PhiFunction& phi, double theta0, double theta1);

} // namespace cpdiv
