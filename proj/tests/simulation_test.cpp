#include <catch_amalgamated.hpp>

#include "cpdiv/error.hpp"
#include "cpdiv/simulation.hpp"

#include <cmath>
#include <sstream>

using namespace cpdiv;
using Catch::Approx;

namespace {

SimulationParams small_params() {
    SimulationParams p;
    p.sections = 40;
    p.replications = 300;
    p.seed = 17;
    p.threads = 1;
    return p;
}

} // namespace

TEST_CASE("design validation", "[simulation]") {
    auto p = small_params();
    p.replications = 0;
    CHECK_THROWS_AS(SimulationDesign(p), DomainError);
    p = small_params();
    p.theta0 = 1.0;
    CHECK_THROWS_AS(SimulationDesign(p), DomainError);
    p = small_params();
    p.sections = 1;
    CHECK_THROWS_AS(SimulationDesign(p), DomainError);
    p = small_params();
    p.trials = {1, 2, 3};
    CHECK_THROWS_AS(SimulationDesign(p), DomainError);
    p = small_params();
    p.levels = {1.5};
    CHECK_THROWS_AS(SimulationDesign(p), DomainError);
}

TEST_CASE("kinds are listed in table order", "[simulation]") {
    const SimulationDesign design(small_params());
    const auto kinds = design.kinds();
    REQUIRE(kinds.size() == 6);
    CHECK(kinds[0].label() == "S~");
    CHECK(kinds[1].label() == "G");
    CHECK(kinds[2].label() == "T_0");
    CHECK(kinds[4].label() == "T_2");
    CHECK(kinds[5].label() == "Q");
    CHECK(design.section_trials() == std::vector<std::int64_t>(40, 1));
}

TEST_CASE("replications depend only on seed and index", "[simulation]") {
    auto p = small_params();
    const SimulationDesign serial(p);
    p.threads = 3;
    const SimulationDesign threaded(p);
    const auto a = simulate_maxima(serial);
    const auto b = simulate_maxima(threaded);
    CHECK(a == b);
    CHECK(simulate_replication(serial, 42) == std::vector<double>{a[0][42], a[1][42], a[2][42], a[3][42], a[4][42], a[5][42]});
    p.seed = 18;
    CHECK(simulate_maxima(SimulationDesign(p)) != a);
}

TEST_CASE("empirical quantiles are ordered", "[simulation]") {
    auto p = small_params();
    p.levels = {0.0, 0.5, 0.90, 0.95, 0.99, 1.0};
    const SimulationDesign design(p);
    const auto maxima = simulate_maxima(design);
    const auto kinds = design.kinds();
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        const auto q = empirical_quantiles(design, kinds[i]);
        REQUIRE(q.size() == 6);
        CHECK(q.front().value == *std::min_element(maxima[i].begin(), maxima[i].end()));
        CHECK(q.back().value == *std::max_element(maxima[i].begin(), maxima[i].end()));
        for (std::size_t j = 1; j < q.size(); ++j) {
            CHECK(q[j - 1].value <= q[j].value);
        }
    }
}

TEST_CASE("short edge segments make unclamped maxima degenerate", "[simulation]") {
    auto p = small_params();
    p.replications = 400;
    const auto unclamped = simulate_null(SimulationDesign(p));
    p.options.boundary_clamp = true;
    const auto clamped = simulate_null(SimulationDesign(p));
    REQUIRE(unclamped.degenerate_replications.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        const auto& [kind, count] = unclamped.degenerate_replications[i];
        if (kind.family() == StatisticFamily::PowerDivergence) {
            // Two-section edge segments agree with probability 1/2 per side.
            CHECK(count > 100);
        } else {
            CHECK(count == 0);
        }
        CHECK(clamped.degenerate_replications[i].second == 0);
    }
}

TEST_CASE("size table rows", "[simulation]") {
    auto p = small_params();
    p.sections = 200;
    p.replications = 1000;
    const auto table = simulate_null(SimulationDesign(p));
    CHECK(table.rows.size() == 6 * 3);
    CHECK(table.replications == 1000);
    CHECK(table.seed == 17);
    const auto* t2 = table.find(StatisticKind::power(2.0), 0.95);
    REQUIRE(t2 != nullptr);
    CHECK(t2->critical_value == Approx(9.90));
    CHECK(t2->standard_error == Approx(std::sqrt(t2->size * (1.0 - t2->size) / 1000.0)));
    const auto* g = table.find(StatisticKind::darling_erdos(), 0.99);
    REQUIRE(g != nullptr);
    CHECK(g->critical_value == Approx(gumbel_quantile(0.99)));
    const auto* s = table.find(StatisticKind::modified_likelihood_ratio(), 0.90);
    REQUIRE(s != nullptr);
    CHECK(s->critical_value == Approx(sup_bridge_squared_quantile(0.90)));
    for (const auto& row : table.rows) {
        CHECK(row.size >= 0.0);
        CHECK(row.size <= 0.25);
    }
    CHECK(table.find(StatisticKind::power(5.0), 0.95) == nullptr);
}

TEST_CASE("modified LRT size is near nominal", "[simulation]") {
    SimulationParams p;
    p.sections = 64;
    p.replications = 2000;
    p.seed = 5;
    p.lambdas = {};
    p.include_darling_erdos = false;
    p.include_wald = false;
    p.levels = {0.90};
    const auto table = simulate_null(SimulationDesign(p));
    const auto* row = table.find(StatisticKind::modified_likelihood_ratio(), 0.90);
    REQUIRE(row != nullptr);
    // Discrete small-sample sizes fall somewhat below nominal.
    CHECK(row->size > 0.04);
    CHECK(row->size < 0.12);
}

TEST_CASE("size table CSV", "[simulation]") {
    auto p = small_params();
    p.replications = 50;
    p.lambdas = {2.0};
    p.include_modified_lrt = false;
    p.include_darling_erdos = false;
    p.include_wald = false;
    p.levels = {0.95};
    const auto table = simulate_null(SimulationDesign(p));
    std::ostringstream out;
    write_size_table_csv(table, out);
    const auto text = out.str();
    CHECK(text.rfind("statistic,level,quantile,critical_value,size,std_error,replications,seed\n", 0) == 0);
    CHECK(text.find("\nT_2,0.95,") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}
