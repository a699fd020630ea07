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

#include "tempsum/ingest/series.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>

#include <json.hpp>

#include "tempsum/error.hpp"

namespace tempsum::ingest {

using nlohmann::json;

std::vector<double> TimeSeries::logged_values() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!imputed_mask[i]) out.push_back(values[i]);
  }
  return out;
}

BuildReport build_series(std::span<const FoodLogRecord> records, Attribute attribute,
                         std::size_t min_days) {
  if (records.empty()) throw EmptyInputError("no records to build series from");

  std::map<std::string, std::vector<const FoodLogRecord*>> by_user;
  for (const auto& r : records) {
    if (r.attribute == attribute) by_user[r.user_id].push_back(&r);
  }

  BuildReport report;
  for (auto& [user, rows] : by_user) {
    std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->date < b->date; });
    rows.erase(std::unique(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->date == b->date; }),
               rows.end());
    if (rows.size() < min_days) {
      ++report.dropped_users;
      continue;
    }
    TimeSeries s;
    s.user_id = user;
    s.attribute = attribute;
    s.start_date = rows.front()->date;
    const auto n = static_cast<std::size_t>(days_between(rows.front()->date, rows.back()->date)) + 1;
    const double mean =
        std::accumulate(rows.begin(), rows.end(), 0.0, [](double acc, auto* r) { return acc + r->value; }) /
        static_cast<double>(rows.size());
    s.values.assign(n, mean);
    s.imputed_mask.assign(n, true);

    const bool any_goal = std::any_of(rows.begin(), rows.end(), [](auto* r) { return r->goal_value.has_value(); });
    std::vector<std::optional<double>> goals(n);
    for (const auto* r : rows) {
      const auto i = static_cast<std::size_t>(days_between(s.start_date, r->date));
      s.values[i] = r->value;
      s.imputed_mask[i] = false;
      goals[i] = r->goal_value;
    }
    if (any_goal) {
      // Days without a goal inherit the most recent goal (or the first known one).
      std::optional<double> current;
      for (const auto& g : goals) {
        if (g) {
          current = g;
          break;
        }
      }
      std::vector<double> filled(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (goals[i]) current = goals[i];
        filled[i] = *current;
      }
      s.goal_values = std::move(filled);
    }
    report.series.push_back(std::move(s));
  }
  if (report.series.empty()) {
    report.warnings.push_back("no user has at least " + std::to_string(min_days) + " logged days");
  }
  return report;
}

void write_series_store(const std::filesystem::path& path, std::span<const TimeSeries> series) {
  json doc;
  doc["format"] = "tempsum.series_store";
  doc["version"] = 1;
  json arr = json::array();
  for (const auto& s : series) {
    json j;
    j["user_id"] = s.user_id;
    j["attribute"] = to_string(s.attribute);
    j["start_date"] = format_date(s.start_date);
    j["values"] = s.values;
    j["goal_values"] = s.goal_values ? json(*s.goal_values) : json(nullptr);
    std::vector<int> mask(s.imputed_mask.begin(), s.imputed_mask.end());
    j["imputed_mask"] = mask;
    arr.push_back(std::move(j));
  }
  doc["series"] = std::move(arr);
  std::ofstream out(path);
  if (!out) throw Error("cannot write series store '" + path.string() + "'");
  out << doc.dump() << '\n';
}

std::vector<TimeSeries> read_series_store(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw EmptyInputError("cannot open series store '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError("series store is not valid JSON: " + std::string(e.what()));
  }
  std::vector<TimeSeries> out;
  try {
    for (const auto& j : doc.at("series")) {
      TimeSeries s;
      s.user_id = j.at("user_id").get<std::string>();
      s.attribute = attribute_from_string(j.at("attribute").get<std::string>());
      s.start_date = parse_date(j.at("start_date").get<std::string>());
      s.values = j.at("values").get<std::vector<double>>();
      if (!j.at("goal_values").is_null()) s.goal_values = j.at("goal_values").get<std::vector<double>>();
      for (int flag : j.at("imputed_mask").get<std::vector<int>>()) s.imputed_mask.push_back(flag != 0);
      if (s.values.empty() || s.imputed_mask.size() != s.values.size() ||
          (s.goal_values && s.goal_values->size() != s.values.size())) {
        throw SchemaError("series for user '" + s.user_id + "' has inconsistent lengths");
      }
      out.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw SchemaError("malformed series store: " + std::string(e.what()));
  }
  return out;
}

}  // namespace tempsum::ingest
