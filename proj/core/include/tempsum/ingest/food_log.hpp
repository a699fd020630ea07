// Copyright 2026 The Tempsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempsum/util/date.hpp"

namespace tempsum::ingest {

enum class Attribute { calorie_intake };

std::string_view to_string(Attribute attribute);
Attribute attribute_from_string(std::string_view name);

struct FoodLogRecord {
  std::string user_id;
  Date date;
  Attribute attribute = Attribute::calorie_intake;
  double value = 0.0;                 // kcal
  std::optional<double> goal_value;   // kcal, > 0 when present

  friend bool operator==(const FoodLogRecord&, const FoodLogRecord&) = default;
};

struct RowIssue {
  std::size_t line = 0;
  std::string message;
};

struct ParseOptions {
  /// Throw RowError on the first malformed row instead of collecting it.
  bool strict = true;
};

struct ParseReport {
  std::vector<FoodLogRecord> records;  // aggregated, sorted by (user, attribute, date)
  std::vector<RowIssue> malformed;
  std::size_t data_rows = 0;
};

/// The exact CSV header of a food log file.
inline constexpr std::string_view kFoodLogHeader = "user_id,date,attribute,value,goal_value";

ParseReport parse_food_log(const std::filesystem::path& csv_path, ParseOptions options = {});
ParseReport parse_food_log(std::istream& in, ParseOptions options = {});

void write_food_log(std::ostream& out, std::span<const FoodLogRecord> records);
void write_food_log(const std::filesystem::path& csv_path, std::span<const FoodLogRecord> records);

/// Sums same-day entries of one (user, date, attribute) into one record.
/// The first non-empty goal wins. Output is sorted by (user, attribute, date).
std::vector<FoodLogRecord> aggregate_records(std::vector<FoodLogRecord> records);

}  // namespace tempsum::ingest
