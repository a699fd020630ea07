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

#include "tempsum/ingest/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>

#include "tempsum/error.hpp"

namespace tempsum::ingest {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + text + "'");
  }
  return v;
}

std::uint64_t to_uint(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("config key '" + key + "': expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

constexpr std::array<const char*, 7> kDayKeys = {"monday", "tuesday", "wednesday", "thursday",
                                                 "friday", "saturday", "sunday"};

}  // namespace

void SynthConfig::validate() const {
  auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0,1]");
  };
  prob(goal_adherence_prob, "goal_adherence_prob");
  prob(missing_day_prob, "missing_day_prob");
  if (days_per_user < 14) throw ConfigError("days_per_user must be at least 14");
  if (n_users == 0) throw ConfigError("n_users must be positive");
  if (base_sd < 0.0 || user_offset_sd < 0.0 || goal_spread < 0.0) {
    throw ConfigError("standard deviations and spreads must be non-negative");
  }
  if (base_mean <= 0.0) throw ConfigError("base_mean must be positive");
  parse_date(start_date);
}

void SynthConfig::set(const std::string& key, const std::string& value) {
  if (key == "seed") {
    seed = to_uint(key, value);
  } else if (key == "n_users" || key == "users") {
    n_users = to_uint(key, value);
  } else if (key == "days_per_user" || key == "days") {
    days_per_user = to_uint(key, value);
  } else if (key == "base_mean") {
    base_mean = to_double(key, value);
  } else if (key == "base_sd") {
    base_sd = to_double(key, value);
  } else if (key == "trend_slope") {
    trend_slope = to_double(key, value);
  } else if (key == "goal_adherence_prob") {
    goal_adherence_prob = to_double(key, value);
  } else if (key == "missing_day_prob") {
    missing_day_prob = to_double(key, value);
  } else if (key == "user_offset_sd") {
    user_offset_sd = to_double(key, value);
  } else if (key == "goal_spread") {
    goal_spread = to_double(key, value);
  } else if (key == "start_date") {
    start_date = value;
  } else if (key == "weekday_effects") {
    std::stringstream ss(value);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
      if (i >= 7) throw ConfigError("weekday_effects takes exactly 7 values (Monday first)");
      weekday_effects[i++] = to_double(key, trim(item));
    }
    if (i != 7) throw ConfigError("weekday_effects takes exactly 7 values (Monday first)");
  } else if (key.rfind("weekday_effect.", 0) == 0) {
    const auto day = key.substr(std::string("weekday_effect.").size());
    const auto it = std::find(kDayKeys.begin(), kDayKeys.end(), day);
    if (it == kDayKeys.end()) throw ConfigError("unknown weekday in key '" + key + "'");
    weekday_effects[static_cast<std::size_t>(it - kDayKeys.begin())] = to_double(key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

SynthConfig SynthConfig::from_key_values(std::istream& in) {
  SynthConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  config.validate();
  return config;
}

SynthConfig SynthConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  return from_key_values(in);
}

std::map<std::string, std::string> SynthConfig::to_key_values() const {
  std::map<std::string, std::string> kv;
  kv["seed"] = std::to_string(seed);
  kv["n_users"] = std::to_string(n_users);
  kv["days_per_user"] = std::to_string(days_per_user);
  kv["base_mean"] = fmt(base_mean);
  kv["base_sd"] = fmt(base_sd);
  std::string effects;
  for (std::size_t i = 0; i < 7; ++i) effects += (i ? "," : "") + fmt(weekday_effects[i]);
  kv["weekday_effects"] = effects;
  kv["trend_slope"] = fmt(trend_slope);
  kv["goal_adherence_prob"] = fmt(goal_adherence_prob);
  kv["missing_day_prob"] = fmt(missing_day_prob);
  kv["user_offset_sd"] = fmt(user_offset_sd);
  kv["goal_spread"] = fmt(goal_spread);
  kv["start_date"] = start_date;
  return kv;
}

std::vector<FoodLogRecord> synth_generate(const SynthConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> standard_normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const Date origin = parse_date(config.start_date);
  const int width = std::max<int>(3, static_cast<int>(std::to_string(config.n_users).size()));

  std::vector<FoodLogRecord> records;
  records.reserve(config.n_users * config.days_per_user);
  for (std::size_t u = 0; u < config.n_users; ++u) {
    char id[32];
    std::snprintf(id, sizeof(id), "u%0*zu", width, u + 1);
    const double user_offset = config.user_offset_sd * standard_normal(rng);
    double goal = config.base_mean + user_offset + config.goal_spread * (2.0 * unit(rng) - 1.0);
    goal = std::max(100.0, std::round(goal / 10.0) * 10.0);
    const Date start = origin + std::chrono::days{static_cast<long>(u % 7)};

    for (std::size_t day = 0; day < config.days_per_user; ++day) {
      const Date date = start + std::chrono::days{static_cast<long>(day)};
      // Draw every random number unconditionally so the stream stays aligned.
      const double noise = standard_normal(rng);
      const double adherence_draw = unit(rng);
      const double band_draw = unit(rng);
      const double missing_draw = unit(rng);

      double value = config.base_mean + user_offset +
                     config.weekday_effects[static_cast<std::size_t>(weekday_index(date))] +
                     config.trend_slope * static_cast<double>(day) + config.base_sd * noise;
      value = std::max(0.0, value);
      if (adherence_draw < config.goal_adherence_prob) value = goal * (0.9 + 0.2 * band_draw);
      if (missing_draw < config.missing_day_prob) continue;

      records.push_back({id, date, Attribute::calorie_intake, value, goal});
    }
  }
  return records;
}

}  // namespace tempsum::ingest
