#include <catch_amalgamated.hpp>

#include "cpdiv/error.hpp"
#include "cpdiv/io.hpp"
#include "cpdiv/series_model.hpp"

#include <random>

using namespace cpdiv;
using Catch::Approx;

TEST_CASE("cumulative counts over the Lindisfarne head", "[series_model]") {
    const std::vector<Section> head{{12, 21}, {29, 39}};
    const CumulativeCounts counts(head);
    CHECK(counts.trials(0) == 0);
    CHECK(counts.successes(0) == 0);
    CHECK(counts.trials(2) == 60);
    CHECK(counts.successes(2) == 41);
}

TEST_CASE("cumulative counts of a single section", "[series_model]") {
    const std::vector<Section> one{{5, 9}};
    const CumulativeCounts counts(one);
    CHECK(counts.sections() == 1);
    CHECK(counts.trials(1) == 9);
    CHECK(counts.successes(1) == 5);
}

TEST_CASE("series invariants are enforced at construction", "[series_model]") {
    CHECK_THROWS_AS(ObservedSeries({{1, 2}}), DomainError);
    CHECK_THROWS_AS(ObservedSeries({{1, 2}, {3, 2}}), DomainError);
    CHECK_THROWS_AS(ObservedSeries({{1, 2}, {0, 0}}), DomainError);
    CHECK_THROWS_AS(ObservedSeries({{-1, 2}, {0, 1}}), DomainError);
    CHECK_NOTHROW(ObservedSeries({{0, 1}, {1, 1}}));
}

TEST_CASE("segment MLEs", "[series_model]") {
    const auto lindisfarne = builtin_dataset("lindisfarne");
    const auto counts = cumulative_counts(lindisfarne);
    CHECK(segment_mles(counts, 1).theta0 == Approx(12.0 / 21.0).epsilon(1e-15));

    // Y_k = 6, N_k = 10, Y_K = 10, N_K = 20
    const std::vector<Section> s{{6, 10}, {4, 10}};
    const auto e = segment_mles(CumulativeCounts(s), 1);
    CHECK(e.theta0 == 0.6);
    CHECK(e.theta1 == 0.4);
    CHECK(e.scale() == 5.0);

    const std::vector<Section> full{{3, 3}, {4, 4}, {1, 5}};
    CHECK(segment_mles(CumulativeCounts(full), 2).theta0 == 1.0);

    CHECK_THROWS_AS(segment_mles(counts, 0), DomainError);
    CHECK_THROWS_AS(segment_mles(counts, 64), DomainError);
}

TEST_CASE("Fisher information of a Bernoulli parameter", "[series_model]") {
    CHECK(fisher_information_bernoulli(0.5) == 4.0);
    CHECK(fisher_information_bernoulli(0.1) == Approx(1.0 / 0.09).epsilon(1e-14));
    CHECK_THROWS_AS(fisher_information_bernoulli(0.0), DomainError);
    CHECK_THROWS_AS(fisher_information_bernoulli(1.0), DomainError);
    for (double t = 0.01; t < 0.5; t += 0.01) {
        CHECK(fisher_information_bernoulli(t) == Approx(fisher_information_bernoulli(1.0 - t)).epsilon(1e-12));
        CHECK(fisher_information_bernoulli(t) > 4.0);
    }
}

TEST_CASE("clamp_estimate applies the 1/(2n) continuity correction", "[series_model]") {
    CHECK(clamp_estimate(0.0, 10) == 0.05);
    CHECK(clamp_estimate(1.0, 10) == 0.95);
    CHECK(clamp_estimate(0.3, 10) == 0.3);
}

TEST_CASE("random series: prefix sums invert and MLEs pool exactly", "[series_model][property]") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto K = std::uniform_int_distribution<int>(2, 40)(rng);
        std::vector<Section> sections;
        for (int i = 0; i < K; ++i) {
            const auto n = std::uniform_int_distribution<std::int64_t>(1, 60)(rng);
            sections.push_back({std::uniform_int_distribution<std::int64_t>(0, n)(rng), n});
        }
        const ObservedSeries series(sections);
        const auto counts = cumulative_counts(series);
        REQUIRE(counts.differences() == sections);
        for (std::size_t k = 1; k < counts.sections(); ++k) {
            REQUIRE(counts.trials(k) >= counts.trials(k - 1));
            REQUIRE(counts.successes(k) <= counts.trials(k));
            const auto e = segment_mles(counts, k);
            REQUIRE(e.theta0 >= 0.0);
            REQUIRE(e.theta0 <= 1.0);
            REQUIRE(e.theta1 >= 0.0);
            REQUIRE(e.theta1 <= 1.0);
            const double pooled = (static_cast<double>(e.trials_before) * e.theta0 +
                                   static_cast<double>(e.trials_after()) * e.theta1) /
                                  static_cast<double>(e.total_trials);
            REQUIRE(pooled == Approx(counts.pooled_estimate()).epsilon(1e-14));
        }
    }
}
