#include <catch_amalgamated.hpp>

#include "cpdiv/divergence.hpp"
#include "cpdiv/error.hpp"

#include <cmath>
#include <limits>

using namespace cpdiv;
using Catch::Approx;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> interior_grid() {
    return {0.01, 0.05, 0.1, 0.2, 0.3, 0.45, 0.5, 0.55, 0.7, 0.8, 0.9, 0.95, 0.99};
}

} // namespace

TEST_CASE("closed-form power divergence values", "[divergence]") {
    CHECK(power_divergence_bernoulli(0.5, 0.25, 1.0) == Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(power_divergence_bernoulli(0.5, 0.25, 0.0) == Approx(0.143841036225890464).epsilon(1e-14));
    for (const double t : interior_grid()) {
        for (const double lambda : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}) {
            CHECK(power_divergence_bernoulli(t, t, lambda) == 0.0);
        }
    }
}

TEST_CASE("boundary conventions", "[divergence]") {
    // 0 log(0/q) = 0
    CHECK(power_divergence_bernoulli(0.0, 0.5, 0.0) == Approx(std::log(2.0)));
    // p log(p/0) = +inf
    CHECK(power_divergence_bernoulli(0.5, 0.0, 0.0) == kInf);
    // p^(lambda+1)/0^lambda with lambda > 0 is infinite
    CHECK(power_divergence_bernoulli(0.5, 0.0, 1.0) == kInf);
    // 0^(lambda+1)/q^lambda = 0 for lambda > -1: D_1(0, 0.5) = (0 + 1/0.5 - 1)/2
    CHECK(power_divergence_bernoulli(0.0, 0.5, 1.0) == Approx(0.5));
    // lambda in (-1, 0) stays finite when theta1 hits the boundary
    CHECK(std::isfinite(power_divergence_bernoulli(0.5, 0.0, -0.5)));
    // lambda < -1 with a zero-mass theta0 is infinite
    CHECK(power_divergence_bernoulli(0.0, 0.5, -2.0) == kInf);
    CHECK(power_divergence_bernoulli(0.0, 0.5, -1.0) == kInf);
}

TEST_CASE("non-negativity on a grid", "[divergence][property]") {
    for (const double a : interior_grid()) {
        for (const double b : interior_grid()) {
            for (double lambda = -3.0; lambda <= 3.0; lambda += 0.25) {
                const double d = power_divergence_bernoulli(a, b, lambda);
                REQUIRE(d >= 0.0);
                if (a != b) {
                    REQUIRE(d > 0.0);
                }
            }
        }
    }
}

TEST_CASE("continuity in lambda at 0", "[divergence][property]") {
    // D_lambda - D_0 is lambda dD/dlambda + O(lambda^2); on this grid the slope
    // stays below 6.1, so the gap at 1e-6 is under 1e-5 and a tenth of the gap at 1e-5.
    for (const double a : interior_grid()) {
        for (const double b : interior_grid()) {
            const double d0 = power_divergence_bernoulli(a, b, 0.0);
            for (const double sign : {1.0, -1.0}) {
                const double gap6 = power_divergence_bernoulli(a, b, sign * 1e-6) - d0;
                const double gap5 = power_divergence_bernoulli(a, b, sign * 1e-5) - d0;
                REQUIRE(std::abs(gap6) < 1e-5);
                if (std::abs(gap6) > 1e-9) {
                    REQUIRE(gap6 / gap5 == Approx(0.1).margin(0.01));
                }
            }
        }
    }
}

TEST_CASE("lambda = -1 is the reversed Kullback divergence", "[divergence][property]") {
    for (const double a : interior_grid()) {
        for (const double b : interior_grid()) {
            REQUIRE(power_divergence_bernoulli(a, b, -1.0) == power_divergence_bernoulli(b, a, 0.0));
        }
    }
}

TEST_CASE("generic phi route agrees with the closed form", "[divergence][property]") {
    for (const double lambda : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}) {
        const auto phi = PhiFunction::power(lambda);
        CHECK(phi.second_derivative_at_one() == 1.0);
        for (const double a : interior_grid()) {
            for (const double b : interior_grid()) {
                REQUIRE(phi_divergence_bernoulli(phi, a, b) ==
                        Approx(power_divergence_bernoulli(a, b, lambda)).margin(1e-12));
            }
        }
    }
    CHECK(phi_divergence_bernoulli(PhiFunction::power(1.0), 0.5, 0.25) == Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(phi_divergence_bernoulli(PhiFunction::power(0.0), 0.5, 0.25) == Approx(0.143841036225890464).epsilon(1e-14));
}

TEST_CASE("PhiFunction validation and generic-path domain", "[divergence]") {
    CHECK_THROWS_AS(PhiFunction([](double t) { return t; }, 1.0), DomainError);
    CHECK_THROWS_AS(PhiFunction([](double t) { return (t - 1) * (t - 1); }, 0.0), DomainError);
    const PhiFunction chi2([](double t) { return (t - 1) * (t - 1); }, 2.0);
    CHECK(phi_divergence_bernoulli(chi2, 0.3, 0.3) == 0.0);
    CHECK_THROWS_AS(phi_divergence_bernoulli(chi2, 0.0, 0.3), DomainError);
    CHECK_THROWS_AS(phi_divergence_bernoulli(chi2, 0.3, 1.0), DomainError);
}
