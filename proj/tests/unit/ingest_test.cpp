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

#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "test_support.hpp"
#include "tempsum/error.hpp"
#include "tempsum/ingest/food_log.hpp"
#include "tempsum/ingest/series.hpp"
#include "tempsum/ingest/synth.hpp"

using namespace tempsum;
using namespace tempsum::ingest;
using tempsum::testing::fixture;

namespace {

ParseReport parse_text(const std::string& text, ParseOptions options = {}) {
  std::istringstream in(text);
  return parse_food_log(in, options);
}

FoodLogRecord record(const std::string& user, const std::string& date, double value,
                     std::optional<double> goal = std::nullopt) {
  return {user, parse_date(date), Attribute::calorie_intake, value, goal};
}

}  // namespace

TEST_SUITE("parse_food_log") {
  TEST_CASE("same-day rows are summed into one record") {
    const auto report = parse_text(
        "user_id,date,attribute,value,goal_value\n"
        "u1,2015-01-01,calorie_intake,700,2000\n"
        "u1,2015-01-01,calorie_intake,1100,2000\n");
    REQUIRE(report.records.size() == 1);
    CHECK(report.records[0].value == doctest::Approx(1800.0));
    REQUIRE(report.records[0].goal_value.has_value());
    CHECK(*report.records[0].goal_value == doctest::Approx(2000.0));
    CHECK(report.data_rows == 2);
  }

  TEST_CASE("header without data rows is an empty-input error") {
    CHECK_THROWS_AS(parse_text("user_id,date,attribute,value,goal_value\n"), EmptyInputError);
    CHECK_THROWS_AS(parse_text(""), EmptyInputError);
  }

  TEST_CASE("missing column names the column") {
    try {
      parse_text("user_id,date,attribute,goal_value\nu1,2015-01-01,calorie_intake,2000\n");
      FAIL("expected a schema error");
    } catch (const SchemaError& e) {
      CHECK(std::string(e.what()).find("value") != std::string::npos);
    }
  }

  TEST_CASE("non-numeric value reports its line") {
    const std::string text =
        "user_id,date,attribute,value,goal_value\n"
        "u1,2015-01-01,calorie_intake,1500,\n"
        "u1,2015-01-02,calorie_intake,lots,\n";
    try {
      parse_text(text);
      FAIL("expected a row error");
    } catch (const RowError& e) {
      CHECK(e.line() == 3);
    }
    const auto lenient = parse_text(text, {.strict = false});
    CHECK(lenient.records.size() == 1);
    REQUIRE(lenient.malformed.size() == 1);
    CHECK(lenient.malformed[0].line == 3);
  }

  TEST_CASE("three-user fixture groups ten rows per user") {
    const auto report = parse_food_log(fixture("three_users.csv"));
    CHECK(report.records.size() == 10);
    std::map<std::string, int> per_user;
    for (const auto& r : report.records) ++per_user[r.user_id];
    CHECK(per_user == std::map<std::string, int>{{"alice", 3}, {"bob", 3}, {"carol", 4}});
    CHECK_FALSE(report.records[3].goal_value.has_value());
    CHECK(std::is_sorted(report.records.begin(), report.records.end(), [](const auto& a, const auto& b) {
      return std::tie(a.user_id, a.date) < std::tie(b.user_id, b.date);
    }));
  }

  TEST_CASE("write then parse is the identity") {
    std::vector<FoodLogRecord> records = {record("a", "2015-01-01", 1234.5, 2000.0), record("a", "2015-01-02", 0.0),
                                          record("b", "2015-02-28", 3100.25, 2500.0)};
    std::ostringstream out;
    write_food_log(out, records);
    CHECK(parse_text(out.str()).records == records);
  }
}

TEST_SUITE("build_series") {
  TEST_CASE("interior gap is filled with the user mean and flagged") {
    const std::vector<FoodLogRecord> records = {record("u1", "2015-01-01", 1800), record("u1", "2015-01-03", 2000)};
    const auto built = build_series(records, Attribute::calorie_intake, 2);
    REQUIRE(built.series.size() == 1);
    const auto& s = built.series[0];
    CHECK(s.values == std::vector<double>{1800, 1900, 2000});
    CHECK(s.imputed_mask == std::vector<bool>{false, true, false});
    CHECK(s.logged_values() == std::vector<double>{1800, 2000});
  }

  TEST_CASE("users below min_days are dropped and counted") {
    std::vector<FoodLogRecord> records;
    for (int d = 1; d <= 5; ++d) records.push_back(record("short", "2015-01-0" + std::to_string(d), 2000));
    const auto built = build_series(records, Attribute::calorie_intake, 10);
    CHECK(built.series.empty());
    CHECK(built.dropped_users == 1);
    CHECK_FALSE(built.warnings.empty());
  }

  TEST_CASE("selection keeps exactly the qualifying users of a larger pool") {
    // 389 users with 70 logged days and 111 with 30.
    std::vector<FoodLogRecord> records;
    const Date start = parse_date("2015-01-01");
    for (int u = 0; u < 500; ++u) {
      const int days = u < 389 ? 70 : 30;
      for (int d = 0; d < days; ++d) {
        records.push_back({"user" + std::to_string(u), start + std::chrono::days{d}, Attribute::calorie_intake,
                           2000.0 + d, std::nullopt});
      }
    }
    const auto built = build_series(records, Attribute::calorie_intake);
    CHECK(built.series.size() == 389);
    CHECK(built.dropped_users == 111);
  }

  TEST_CASE("series length spans first to last date and imputed days equal the logged mean") {
    SynthConfig cfg;
    cfg.n_users = 6;
    cfg.missing_day_prob = 0.2;
    const auto records = synth_generate(cfg);
    const auto built = build_series(records, Attribute::calorie_intake, 14);
    REQUIRE(built.series.size() == 6);
    for (const auto& s : built.series) {
      std::vector<Date> dates;
      for (const auto& r : records) {
        if (r.user_id == s.user_id) dates.push_back(r.date);
      }
      const auto [first, last] = std::minmax_element(dates.begin(), dates.end());
      CHECK(static_cast<long>(s.size()) == days_between(*first, *last) + 1);
      CHECK(s.imputed_mask.size() == s.size());
      const auto logged = s.logged_values();
      const double mean = std::accumulate(logged.begin(), logged.end(), 0.0) / static_cast<double>(logged.size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.imputed_mask[i]) CHECK(std::abs(s.values[i] - mean) <= 1e-9);
      }
    }
  }

  TEST_CASE("series store round trip") {
    SynthConfig cfg;
    cfg.n_users = 3;
    const auto built = build_series(synth_generate(cfg), Attribute::calorie_intake);
    const auto path = tempsum::testing::scratch_dir("series_store") / "store.json";
    write_series_store(path, built.series);
    CHECK(read_series_store(path) == built.series);
  }
}

TEST_SUITE("synth_generate") {
  TEST_CASE("same seed gives byte-identical output") {
    SynthConfig cfg;
    std::ostringstream a, b;
    write_food_log(a, synth_generate(cfg));
    write_food_log(b, synth_generate(cfg));
    CHECK(a.str() == b.str());
    cfg.seed = 8;
    std::ostringstream c;
    write_food_log(c, synth_generate(cfg));
    CHECK(a.str() != c.str());
  }

  TEST_CASE("no noise, no effects gives a constant series") {
    SynthConfig cfg;
    cfg.base_sd = 0.0;
    cfg.weekday_effects.fill(0.0);
    cfg.trend_slope = 0.0;
    cfg.missing_day_prob = 0.0;
    cfg.goal_adherence_prob = 0.0;
    const auto records = synth_generate(cfg);
    CHECK(records.size() == cfg.n_users * cfg.days_per_user);
    for (const auto& r : records) CHECK(r.value == doctest::Approx(cfg.base_mean));
  }

  TEST_CASE("weekday means follow the configured offsets") {
    SynthConfig cfg;
    cfg.goal_adherence_prob = 0.0;
    cfg.missing_day_prob = 0.0;
    const auto records = synth_generate(cfg);
    std::array<double, 7> sum{};
    std::array<int, 7> count{};
    for (const auto& r : records) {
      const int w = weekday_index(r.date);
      sum[w] += r.value;
      ++count[w];
    }
    const double tolerance = 2.0 * cfg.base_sd / std::sqrt(17.0);
    for (int w = 0; w < 7; ++w) {
      CHECK(std::abs(sum[w] / count[w] - (cfg.base_mean + cfg.weekday_effects[w])) <= tolerance);
    }
  }

  TEST_CASE("aggregation conserves mass for a fully logged user") {
    SynthConfig cfg;
    cfg.n_users = 2;
    cfg.missing_day_prob = 0.0;
    const auto records = synth_generate(cfg);
    const auto built = build_series(records, Attribute::calorie_intake);
    for (const auto& s : built.series) {
      double emitted = 0.0;
      for (const auto& r : records) {
        if (r.user_id == s.user_id) emitted += r.value;
      }
      CHECK(std::accumulate(s.values.begin(), s.values.end(), 0.0) == doctest::Approx(emitted).epsilon(1e-12));
    }
  }

  TEST_CASE("values are finite and non-negative, goals constant per user") {
    SynthConfig cfg;
    cfg.base_sd = 1500.0;
    const auto records = synth_generate(cfg);
    std::map<std::string, double> goals;
    for (const auto& r : records) {
      CHECK(std::isfinite(r.value));
      CHECK(r.value >= 0.0);
      REQUIRE(r.goal_value.has_value());
      const auto [it, inserted] = goals.emplace(r.user_id, *r.goal_value);
      if (!inserted) CHECK(it->second == *r.goal_value);
    }
  }

  TEST_CASE("key-value config") {
    std::istringstream in(
        "# generator\n"
        "seed = 11\n"
        "n_users = 4\n"
        "days_per_user = 30\n"
        "trend_slope = 2.5\n"
        "weekday_effects = 0, 0, 0, 0, 0, 100, 50\n");
    const auto cfg = SynthConfig::from_key_values(in);
    CHECK(cfg.seed == 11);
    CHECK(cfg.n_users == 4);
    CHECK(cfg.days_per_user == 30);
    CHECK(cfg.trend_slope == doctest::Approx(2.5));
    CHECK(cfg.weekday_effects[5] == doctest::Approx(100.0));

    SynthConfig round;
    for (const auto& [k, v] : cfg.to_key_values()) round.set(k, v);
    CHECK(round.to_key_values() == cfg.to_key_values());

    std::istringstream bad("colour = blue\n");
    CHECK_THROWS_AS(SynthConfig::from_key_values(bad), ConfigError);
  }

  TEST_CASE("validation") {
    SynthConfig cfg;
    cfg.days_per_user = 13;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.days_per_user = 14;
    CHECK_NOTHROW(cfg.validate());
    cfg.missing_day_prob = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
}
