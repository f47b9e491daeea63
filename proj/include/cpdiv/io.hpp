#pragma once

#include "cpdiv/segmentation.hpp"
#include "cpdiv/series_model.hpp"
#include "cpdiv/simulation.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace cpdiv {

// Reads a series from CSV with header `i,x,n`. Rows must carry integer fields
// with i running 1..K contiguously; violations throw ParseError naming the row.
ObservedSeries parse_series_csv(std::istream& in);
ObservedSeries load_series_csv(const std::filesystem::path& path);

void write_series_csv(const ObservedSeries& series, std::ostream& out);

// Embedded datasets; throws ParseError listing the available names.
ObservedSeries builtin_dataset(const std::string& name);
std::vector<std::string> builtin_dataset_names();

// Rounds to `precision` significant digits; non-finite values become null.
nlohmann::json json_number(double value, int precision);

nlohmann::json to_json(const CandidateProfile& profile, std::size_t offset, int precision);
nlohmann::json to_json(const TestDecision& decision, int precision);
nlohmann::json to_json(const SegmentationResult& result, int precision);
nlohmann::json to_json(const SizeTable& table, int precision);

} // namespace cpdiv
