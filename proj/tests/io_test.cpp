#include <catch_amalgamated.hpp>

#include "cpdiv/error.hpp"
#include "cpdiv/io.hpp"
#include "cpdiv/segmentation.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cpdiv;
using Catch::Matchers::ContainsSubstring;

namespace {

ObservedSeries parse(const std::string& text) {
    std::istringstream in(text);
    return parse_series_csv(in);
}

} // namespace

TEST_CASE("parses a series CSV", "[io]") {
    const auto s = parse("i,x,n\n1,12,21\n2,29,39\n");
    REQUIRE(s.size() == 2);
    CHECK(s.section(1) == Section{12, 21});
    CHECK(s.section(2) == Section{29, 39});
    const auto crlf = parse("\xEF\xBB\xBFi,x,n\r\n1,12,21\r\n2,29,39\r\n");
    CHECK(crlf.section(2) == Section{29, 39});
    CHECK(parse("i,x,n\n1,0,1\n2,1,1\n\n").size() == 2);
}

TEST_CASE("rejects malformed CSV with the offending row", "[io]") {
    CHECK_THROWS_WITH(parse("i,x,n\n1,3,5\n2,2,2\n3,5,4\n"), ContainsSubstring("x exceeds n at row 3"));
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("a,b,c\n1,1,1\n2,1,1\n"), ParseError);
    CHECK_THROWS_WITH(parse("i,x,n\n1,1,1\n2,1\n"), ContainsSubstring("row 2"));
    CHECK_THROWS_WITH(parse("i,x,n\n1,1,1\n3,1,1\n"), ContainsSubstring("row 2"));
    CHECK_THROWS_WITH(parse("i,x,n\n1,1.5,2\n2,1,1\n"), ContainsSubstring("non-integer"));
    CHECK_THROWS_WITH(parse("i,x,n\n1,-1,2\n2,1,1\n"), ContainsSubstring("negative"));
    CHECK_THROWS_WITH(parse("i,x,n\n1,0,0\n2,1,1\n"), ContainsSubstring("at least 1"));
    CHECK_THROWS_AS(parse("i,x,n\n1,1,1\n"), ParseError);
    CHECK_THROWS_AS(load_series_csv("/nonexistent/series.csv"), ParseError);
}

TEST_CASE("write and reload round trip", "[io]") {
    const auto original = builtin_dataset("lindisfarne");
    std::ostringstream out;
    write_series_csv(original, out);
    const auto path = std::filesystem::path(CPDIV_TEST_TMPDIR) / "io_roundtrip.csv";
    std::filesystem::create_directories(path.parent_path());
    std::ofstream(path) << out.str();
    const auto reloaded = load_series_csv(path);
    CHECK(std::equal(original.sections().begin(), original.sections().end(), reloaded.sections().begin(),
                     reloaded.sections().end()));
}

TEST_CASE("embedded Lindisfarne data", "[io]") {
    const auto s = builtin_dataset("lindisfarne");
    REQUIRE(s.size() == 64);
    CHECK(s.section(1) == Section{12, 21});
    CHECK(s.section(2) == Section{29, 39});
    CHECK(s.section(20) == Section{2, 5});
    CHECK(s.section(64) == Section{6, 16});
    CHECK_THROWS_AS(builtin_dataset("LINDISFARNE"), ParseError);
    CHECK(builtin_dataset_names() == std::vector<std::string>{"lindisfarne"});
    CHECK_THROWS_WITH(builtin_dataset("kells"), ContainsSubstring("lindisfarne"));
}

TEST_CASE("JSON numbers", "[io]") {
    CHECK(json_number(1.0 / 3.0, 6).get<double>() == 0.333333);
    CHECK(json_number(123456789.0, 6).get<double>() == 123457000.0);
    CHECK(json_number(std::numeric_limits<double>::infinity(), 6).is_null());
    CHECK(json_number(std::nan(""), 6).is_null());
    CHECK(json_number(2.5, 17).get<double>() == 2.5);
}

TEST_CASE("segmentation JSON schema", "[io]") {
    SegmentationConfig cfg;
    cfg.p_threshold = 0.01;
    const auto r = binary_segmentation(builtin_dataset("lindisfarne"), cfg);
    const auto j = to_json(r, 6);
    CHECK(j["segments"].size() == 7);
    CHECK(j["segments"][3] == nlohmann::json::array({24, 24}));
    CHECK(j["change_points"].size() == 6);
    REQUIRE(j["trace"].size() == r.tests_performed);
    const auto& first = j["trace"][0];
    CHECK(first["step"] == 1);
    CHECK(first["segment"] == nlohmann::json::array({1, 64}));
    CHECK(first["candidate_range"] == nlohmann::json::array({3, 61}));
    CHECK(first["k_hat"] == 31);
    CHECK(first["reject"] == true);
    CHECK(first["label"] == "T_2");
    CHECK(first["profile"].size() == 59);
    CHECK(first["profile"][0]["k"] == 3);
    // Profiles of later steps carry global section indices.
    const auto& second = j["trace"][1];
    CHECK(second["segment"] == nlohmann::json::array({1, 31}));
    const auto& third_step = j["trace"][2];
    CHECK(third_step["profile"][0]["k"].get<std::size_t>() >= third_step["segment"][0].get<std::size_t>());
}

TEST_CASE("untestable decisions serialize a reason", "[io]") {
    const ObservedSeries s({{1, 2}, {0, 2}});
    SegmentationConfig cfg;
    cfg.min_sections = 3;
    const auto j = to_json(test_segment(s, 1, 2, cfg), 6);
    CHECK(j["testable"] == false);
    CHECK(j["reject"] == false);
    CHECK(j.contains("reason"));
    CHECK_FALSE(j.contains("p_value"));
}
