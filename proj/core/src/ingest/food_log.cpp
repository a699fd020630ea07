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

#include "tempsum/ingest/food_log.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "tempsum/error.hpp"

namespace tempsum::ingest {

namespace {

constexpr std::array<std::string_view, 5> kColumns = {"user_id", "date", "attribute", "value",
                                                      "goal_value"};

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace

std::string_view to_string(Attribute attribute) {
  switch (attribute) {
    case Attribute::calorie_intake:
      return "calorie_intake";
  }
  return "unknown";
}

Attribute attribute_from_string(std::string_view name) {
  if (name == "calorie_intake") return Attribute::calorie_intake;
  throw DomainError("unknown attribute '" + std::string(name) + "'");
}

ParseReport parse_food_log(std::istream& in, ParseOptions options) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      have_header = true;
      break;
    }
  }
  if (!have_header) throw EmptyInputError("food log is empty");

  std::string header(trim(line));
  if (header.size() >= 3 && static_cast<unsigned char>(header[0]) == 0xEF) header.erase(0, 3);
  const auto names = split_commas(header);
  std::array<int, kColumns.size()> position{};
  position.fill(-1);
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto name = trim(names[i]);
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      if (name == kColumns[c]) position[c] = static_cast<int>(i);
    }
  }
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    if (position[c] < 0) {
      throw SchemaError("missing required column '" + std::string(kColumns[c]) + "'");
    }
  }

  ParseReport report;
  std::vector<FoodLogRecord> raw;
  auto fail = [&](std::size_t at, std::string message) {
    if (options.strict) throw RowError(at, message);
    report.malformed.push_back({at, std::move(message)});
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto stripped = trim(line);
    if (stripped.empty()) continue;
    ++report.data_rows;
    const auto fields = split_commas(stripped);
    if (fields.size() != names.size()) {
      fail(line_no, "expected " + std::to_string(names.size()) + " fields, found " +
                        std::to_string(fields.size()));
      continue;
    }
    auto field = [&](std::size_t column) { return trim(fields[static_cast<std::size_t>(position[column])]); };

    FoodLogRecord record;
    record.user_id = std::string(field(0));
    if (record.user_id.empty()) {
      fail(line_no, "empty user_id");
      continue;
    }
    try {
      record.date = parse_date(field(1));
      record.attribute = attribute_from_string(field(2));
    } catch (const DomainError& e) {
      fail(line_no, e.what());
      continue;
    }
    const auto value = parse_number(field(3));
    if (!value) {
      fail(line_no, "non-numeric value '" + std::string(field(3)) + "'");
      continue;
    }
    if (*value < 0.0) {
      fail(line_no, "negative value");
      continue;
    }
    record.value = *value;
    if (const auto goal_text = field(4); !goal_text.empty()) {
      const auto goal = parse_number(goal_text);
      if (!goal) {
        fail(line_no, "non-numeric goal_value '" + std::string(goal_text) + "'");
        continue;
      }
      if (*goal <= 0.0) {
        fail(line_no, "goal_value must be positive");
        continue;
      }
      record.goal_value = *goal;
    }
    raw.push_back(std::move(record));
  }
  if (report.data_rows == 0) throw EmptyInputError("food log has no data rows");

  report.records = aggregate_records(std::move(raw));
  return report;
}

ParseReport parse_food_log(const std::filesystem::path& csv_path, ParseOptions options) {
  std::ifstream in(csv_path);
  if (!in) throw EmptyInputError("cannot open food log '" + csv_path.string() + "'");
  return parse_food_log(in, options);
}

std::vector<FoodLogRecord> aggregate_records(std::vector<FoodLogRecord> records) {
  using Key = std::tuple<std::string, int, Date>;
  std::map<Key, FoodLogRecord> merged;
  for (auto& record : records) {
    Key key{record.user_id, static_cast<int>(record.attribute), record.date};
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(std::move(key), std::move(record));
    } else {
      it->second.value += record.value;
      if (!it->second.goal_value && record.goal_value) it->second.goal_value = record.goal_value;
    }
  }
  std::vector<FoodLogRecord> out;
  out.reserve(merged.size());
  for (auto& [key, record] : merged) out.push_back(std::move(record));
  return out;
}

void write_food_log(std::ostream& out, std::span<const FoodLogRecord> records) {
  out << kFoodLogHeader << '\n';
  for (const auto& r : records) {
    out << r.user_id << ',' << format_date(r.date) << ',' << to_string(r.attribute) << ','
        << format_number(r.value) << ',';
    if (r.goal_value) out << format_number(*r.goal_value);
    out << '\n';
  }
}

void write_food_log(const std::filesystem::path& csv_path, std::span<const FoodLogRecord> records) {
  std::ofstream out(csv_path);
  if (!out) throw Error("cannot write food log '" + csv_path.string() + "'");
  write_food_log(out, records);
}

}  // namespace tempsum::ingest
