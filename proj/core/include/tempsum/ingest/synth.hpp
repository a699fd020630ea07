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

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tempsum/ingest/food_log.hpp"

namespace tempsum::ingest {

/// Parameters of the synthetic food-log generator.
///
/// Per-day value = base_mean + user_offset + weekday_effect + trend_slope * day
/// + N(0, base_sd), clamped at zero. On goal-adherent days (probability
/// goal_adherence_prob) the value is resampled uniformly within +-10% of the
/// user's goal. Days are dropped independently with missing_day_prob.
struct SynthConfig {
  std::uint64_t seed = 7;
  std::size_t n_users = 20;
  std::size_t days_per_user = 120;
  double base_mean = 2000.0;
  double base_sd = 250.0;
  std::array<double, 7> weekday_effects = {-150.0, -150.0, -100.0, -50.0, 150.0, 450.0, 300.0};  // Mon..Sun
  double trend_slope = 0.0;
  double goal_adherence_prob = 0.3;
  double missing_day_prob = 0.05;
  /// Standard deviation of a per-user constant shift of the mean.
  double user_offset_sd = 0.0;
  /// Goals are drawn uniformly from base_mean + user_offset +- goal_spread.
  double goal_spread = 300.0;
  std::string start_date = "2015-01-01";

  void validate() const;

  /// Flat `key = value` format; `#` starts a comment. Unknown keys are errors.
  static SynthConfig from_key_values(std::istream& in);
  static SynthConfig from_file(const std::filesystem::path& path);
  /// Applies one key/value pair (also used for CLI overrides).
  void set(const std::string& key, const std::string& value);
  std::map<std::string, std::string> to_key_values() const;
};

std::vector<FoodLogRecord> synth_generate(const SynthConfig& config);

}  // namespace tempsum::ingest
