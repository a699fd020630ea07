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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempsum/ingest/food_log.hpp"

namespace tempsum::ingest {

/// One user's contiguous daily series for a single attribute (x_long).
struct TimeSeries {
  std::string user_id;
  Attribute attribute = Attribute::calorie_intake;
  Date start_date;
  std::vector<double> values;
  std::optional<std::vector<double>> goal_values;  // parallel to values when present
  std::vector<bool> imputed_mask;                  // true where the day was filled in

  std::size_t size() const noexcept { return values.size(); }
  Date date_at(std::size_t index) const { return start_date + std::chrono::days{static_cast<long>(index)}; }
  Date last_date() const { return date_at(values.size() - 1); }

  /// Values of days that were actually logged.
  std::vector<double> logged_values() const;

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

/// Users need at least this many logged days to be kept.
inline constexpr std::size_t kDefaultMinDays = 60;

struct BuildReport {
  std::vector<TimeSeries> series;  // ordered by user_id
  std::size_t dropped_users = 0;
  std::vector<std::string> warnings;
};

/// Groups records into per-user series spanning first to last logged date.
/// Interior gaps are filled with the user's mean logged value and flagged.
BuildReport build_series(std::span<const FoodLogRecord> records, Attribute attribute,
                         std::size_t min_days = kDefaultMinDays);

/// Series store: a JSON document holding an array of series.
void write_series_store(const std::filesystem::path& path, std::span<const TimeSeries> series);
std::vector<TimeSeries> read_series_store(const std::filesystem::path& path);

}  // namespace tempsum::ingest
