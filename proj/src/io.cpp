#include "cpdiv/io.hpp"

#include "cpdiv/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace cpdiv {

namespace {

// Lindisfarne Gospels, 64 sections: x = count of the -s ending among third
// singular / second plural present indicative verbs, n = all such verbs.
constexpr std::array<int, 64> kLindisfarneX{
    12, 29, 31, 21, 14, 41, 49, 30, 39, 35, 26, 32, 30, 17, 19, 33,
    36, 28, 10, 2,  8,  12, 5,  3,  14, 13, 21, 19, 29, 16, 16, 5,
    3,  1,  6,  1,  10, 5,  2,  10, 5,  14, 8,  10, 9,  13, 6,  8,
    2,  11, 8,  3,  19, 17, 12, 15, 15, 12, 21, 40, 30, 4,  3,  6};
constexpr std::array<int, 64> kLindisfarneN{
    21, 39, 44, 25, 19, 66, 62, 34, 47, 47, 29, 33, 38, 21, 21, 36,
    40, 33, 25, 5,  23, 28, 20, 28, 20, 23, 41, 32, 39, 28, 21, 24,
    30, 15, 23, 5,  35, 30, 14, 56, 51, 62, 45, 55, 42, 27, 36, 31,
    9,  26, 38, 29, 55, 37, 45, 47, 44, 45, 33, 65, 85, 13, 9,  16};

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::int64_t parse_integer(std::string_view field, const char* column, std::size_t row) {
    field = trim(field);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw ParseError(std::string("non-integer ") + column + " '" + std::string(field) + "' at row " + std::to_string(row));
    }
    return value;
}

} // namespace

ObservedSeries parse_series_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty input: expected header 'i,x,n'");
    }
    if (!line.empty() && line.rfind("\xEF\xBB\xBF", 0) == 0) {
        line.erase(0, 3);
    }
    if (trim(line) != "i,x,n") {
        throw ParseError("expected header 'i,x,n', got '" + std::string(trim(line)) + "'");
    }
    std::vector<Section> sections;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) {
            continue;
        }
        ++row;
        const auto fields = split_fields(trim(line));
        if (fields.size() != 3) {
            throw ParseError("expected 3 fields at row " + std::to_string(row) + ", got " + std::to_string(fields.size()));
        }
        const auto i = parse_integer(fields[0], "i", row);
        const auto x = parse_integer(fields[1], "x", row);
        const auto n = parse_integer(fields[2], "n", row);
        if (i != static_cast<std::int64_t>(row)) {
            throw ParseError("section index " + std::to_string(i) + " at row " + std::to_string(row) +
                             " breaks the 1..K sequence");
        }
        if (x < 0 || n < 0) {
            throw ParseError("negative count at row " + std::to_string(row));
        }
        if (n < 1) {
            throw ParseError("n must be at least 1 at row " + std::to_string(row));
        }
        if (x > n) {
            throw ParseError("x exceeds n at row " + std::to_string(row));
        }
        sections.push_back({x, n});
    }
    if (sections.size() < 2) {
        throw ParseError("a series needs at least 2 rows, got " + std::to_string(sections.size()));
    }
    return ObservedSeries(std::move(sections));
}

ObservedSeries load_series_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    return parse_series_csv(in);
}

void write_series_csv(const ObservedSeries& series, std::ostream& out) {
    out << "i,x,n\n";
    for (std::size_t i = 1; i <= series.size(); ++i) {
        const auto& s = series.section(i);
        out << i << ',' << s.successes << ',' << s.trials << '\n';
    }
}

std::vector<std::string> builtin_dataset_names() {
    return {"lindisfarne"};
}

ObservedSeries builtin_dataset(const std::string& name) {
    if (name == "lindisfarne") {
        std::vector<Section> sections;
        for (std::size_t i = 0; i < kLindisfarneX.size(); ++i) {
            sections.push_back({kLindisfarneX[i], kLindisfarneN[i]});
        }
        return ObservedSeries(std::move(sections));
    }
    std::string available;
    for (const auto& n : builtin_dataset_names()) {
        available += (available.empty() ? "" : ", ") + n;
    }
    throw ParseError("unknown dataset '" + name + "' (available: " + available + ")");
}

nlohmann::json json_number(double value, int precision) {
    if (!std::isfinite(value)) {
        return nullptr;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    return std::strtod(buf, nullptr);
}

nlohmann::json to_json(const CandidateProfile& profile, std::size_t offset, int precision) {
    auto out = nlohmann::json::array();
    for (const auto& e : profile.entries) {
        out.push_back({{"k", e.k + offset}, {"value", json_number(e.value, precision)}});
    }
    return out;
}

nlohmann::json to_json(const TestDecision& d, int precision) {
    nlohmann::json j;
    j["statistic_kind"] = d.kind.name();
    j["label"] = d.kind.label();
    if (d.kind.family() == StatisticFamily::PowerDivergence) {
        j["lambda"] = json_number(d.kind.lambda(), precision);
    }
    j["segment"] = {d.first, d.last};
    j["testable"] = d.testable;
    if (!d.testable) {
        j["reason"] = d.reason;
        j["reject"] = false;
        return j;
    }
    j["candidate_range"] = {d.candidate_first, d.candidate_last};
    j["k_hat"] = d.k_hat;
    j["max_value"] = json_number(d.max_value, precision);
    j["statistic"] = json_number(d.statistic, precision);
    j["ties"] = d.ties;
    j["p_value"] = json_number(d.p_value, precision);
    j["threshold"] = json_number(d.threshold, precision);
    j["reject"] = d.reject;
    j["degenerate"] = d.degenerate;
    j["out_of_regime"] = d.out_of_regime;
    return j;
}

nlohmann::json to_json(const SegmentationResult& result, int precision) {
    nlohmann::json j;
    auto segments = nlohmann::json::array();
    for (const auto& [a, b] : result.segments) {
        segments.push_back({a, b});
    }
    j["segments"] = std::move(segments);
    j["change_points"] = result.change_points;
    auto trace = nlohmann::json::array();
    std::size_t step = 0;
    for (const auto& d : result.trace) {
        auto record = to_json(d, precision);
        record["step"] = ++step;
        record["profile"] = to_json(d.profile, d.first - 1, precision);
        trace.push_back(std::move(record));
    }
    j["trace"] = std::move(trace);
    j["tests_performed"] = result.tests_performed;
    j["bonferroni_bound"] = json_number(result.bonferroni_bound, precision);
    return j;
}

nlohmann::json to_json(const SizeTable& table, int precision) {
    nlohmann::json j;
    j["sections"] = table.sections;
    j["replications"] = table.replications;
    j["seed"] = table.seed;
    auto rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        rows.push_back({{"statistic", row.kind.label()},
                        {"level", json_number(row.level, precision)},
                        {"quantile", json_number(row.quantile, precision)},
                        {"critical_value", json_number(row.critical_value, precision)},
                        {"size", json_number(row.size, precision)},
                        {"std_error", json_number(row.standard_error, precision)}});
    }
    j["rows"] = std::move(rows);
    auto degenerate = nlohmann::json::object();
    for (const auto& [kind, count] : table.degenerate_replications) {
        degenerate[kind.label()] = count;
    }
    j["degenerate_replications"] = std::move(degenerate);
    return j;
}

} // namespace cpdiv
