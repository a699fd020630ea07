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

#include "tempsum/protoform/catalog.hpp"

#include <json.hpp>

#include "tempsum/error.hpp"
#include "tempsum/protoform/fuzzy.hpp"
#include "tempsum/protoform/quantifier.hpp"
#include "tempsum/util/date.hpp"
#include "tempsum/util/hash.hpp"

namespace tempsum::protoform {

namespace {

struct TypeNames {
  std::string_view key;
  std::string_view display;
};

constexpr std::array<TypeNames, 13> kNames = {{
    {"standard_eval_tw", "Standard Evaluation (TW granularity)"},
    {"standard_eval_stw", "Standard Evaluation (sTW granularity)"},
    {"day_based_pattern", "Day-Based Pattern"},
    {"goal_evaluation", "Goal Evaluation"},
    {"goal_assistance", "Goal Assistance"},
    {"standard_trend", "Standard Trend"},
    {"if_then_pattern", "If-Then Pattern"},
    {"day_if_then_pattern", "Day If-Then Pattern"},
    {"evaluation_comparison", "Evaluation Comparison"},
    {"goal_comparison", "Goal Comparison"},
    {"cluster_description", "Cluster-Based Description"},
    {"cluster_pattern", "Cluster-Based Pattern"},
    {"standard_pattern", "Standard Pattern"},
}};

const std::array<TypeRule, 13>& rules() {
  using enum SummaryType;
  static const std::array<TypeRule, 13> kRules = {{
      {standard_eval_tw, 7, 7, {"In the past TW , your A was S ."}},
      {standard_eval_stw, 7, 7,
       {"On Q sTW in the past TW , your A was S .", "In the past full TW , your A has been S ."}},
      {day_based_pattern, 28, 28, {"Your A tends to be S on D ."}},
      {goal_evaluation, 7, 7, {"On Q sTW in the past TW , you met your G ."}},
      {goal_assistance, 7, 7, {"In order to better meet your G , you should S your A ."}},
      {standard_trend, 7, 7, {"On Q sTW in the past TW , your A changed direction ."}},
      {if_then_pattern, 28, 28,
       {"When your A is S , it tends to be S the next day .",
        "When your A is S then S , it tends to be S the next day .",
        "When your A is S then S then S , it tends to be S the next day ."}},
      {day_if_then_pattern, 56, 56, {"When your A is S on a D , it tends to be S the next day ."}},
      {evaluation_comparison, 14, 14, {"Your A in the past TW was S compared to the TW before ."}},
      {goal_comparison, 14, 14, {"Your adherence to your G in the past TW was S compared to the TW before ."}},
      {cluster_description, 7, 21, {"In the most recent similar TW , your A was S ."}},
      {cluster_pattern, 7, 21, {"Based on similar TW patterns , your A will likely be S next TW ."}},
      {standard_pattern, 21, 21, {"Based on the most recent similar TW , your A will likely be S next TW ."}},
  }};
  return kRules;
}

void split_words(std::string_view text, std::vector<std::string>& out) {
  std::size_t i = 0;
  while (i < text.size()) {
    const auto j = text.find(' ', i);
    const auto word = text.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i);
    if (!word.empty()) out.emplace_back(word);
    if (j == std::string_view::npos) break;
    i = j + 1;
  }
}

}  // namespace

std::string_view to_string(SummaryType type) { return kNames[static_cast<std::size_t>(type)].key; }

std::string_view display_name(SummaryType type) { return kNames[static_cast<std::size_t>(type)].display; }

SummaryType summary_type_from_string(std::string_view key) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i].key == key) return static_cast<SummaryType>(i);
  }
  throw DomainError("unknown summary type '" + std::string(key) + "'");
}

const TypeRule& rule_for(SummaryType type) { return rules()[static_cast<std::size_t>(type)]; }

std::vector<std::string> lexicon_entries(text::SlotKind kind) {
  using text::SlotKind;
  std::vector<std::string> words;
  switch (kind) {
    case SlotKind::Q:
      for (int q = 0; q <= 4; ++q) split_words(surface(static_cast<Quantifier>(q)), words);
      break;
    case SlotKind::sTW:
      split_words(kSubTimeWindowSurface, words);
      break;
    case SlotKind::TW:
      split_words(kTimeWindowSurface, words);
      break;
    case SlotKind::A:
      split_words(kAttributeSurface, words);
      break;
    case SlotKind::S:
      for (int l = 0; l <= 2; ++l) split_words(to_string(static_cast<Level>(l)), words);
      for (auto s : kComparisonSurfaces) split_words(s, words);
      for (auto s : kDirectionSurfaces) split_words(s, words);
      break;
    case SlotKind::D:
      for (int d = 0; d < 7; ++d) split_words(weekday_name(d), words);
      break;
    case SlotKind::G:
      split_words(kGoalSurface, words);
      break;
  }
  return words;
}

std::string catalog_json() {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["name"] = "tempsum.protoform_catalog";
  doc["version"] = "1.0.0";

  ordered_json lex;
  std::vector<std::string> q;
  for (int i = 0; i <= 4; ++i) q.emplace_back(surface(static_cast<Quantifier>(i)));
  lex["Q"] = q;
  lex["sTW"] = {std::string(kSubTimeWindowSurface)};
  lex["TW"] = {std::string(kTimeWindowSurface)};
  lex["A"] = {std::string(kAttributeSurface)};
  ordered_json s;
  s["evaluation"] = {"low", "moderate", "high"};
  s["comparison"] = std::vector<std::string>(kComparisonSurfaces.begin(), kComparisonSurfaces.end());
  s["direction"] = std::vector<std::string>(kDirectionSurfaces.begin(), kDirectionSurfaces.end());
  lex["S"] = s;
  std::vector<std::string> days;
  for (int d = 0; d < 7; ++d) days.emplace_back(weekday_name(d));
  lex["D"] = days;
  lex["G"] = {std::string(kGoalSurface)};
  doc["lexicons"] = lex;

  ordered_json trapezoids = ordered_json::array();
  for (int i = 0; i <= 4; ++i) {
    const auto& t = quantifier_trapezoids()[static_cast<std::size_t>(i)];
    trapezoids.push_back({{"label", std::string(surface(static_cast<Quantifier>(i)))},
                          {"shape", {t.a, t.b, t.c, t.d}}});
  }
  doc["quantifiers"] = trapezoids;
  doc["summarizer"] = "per-user triangles: low peak at min, moderate peak at mean of 1st/2nd tertiles, high peak at max";
  doc["parameters"] = {{"rule_min_support", kRuleMinSupport},
                       {"rule_min_confidence", kRuleMinConfidence},
                       {"rule_max_antecedent", kRuleMaxAntecedent},
                       {"similar_weeks_k", kSimilarWeeksK},
                       {"goal_band", kGoalBand},
                       {"comparison_dead_band", kComparisonDeadBand}};

  ordered_json types = ordered_json::array();
  for (auto type : kAllSummaryTypes) {
    const auto& rule = rule_for(type);
    types.push_back({{"key", std::string(to_string(type))},
                     {"display_name", std::string(display_name(type))},
                     {"window_days", rule.window_days},
                     {"min_history_days", rule.min_history_days},
                     {"protoforms", rule.protoforms}});
  }
  doc["types"] = types;
  return doc.dump(2);
}

std::string catalog_hash() { return util::git_blob_hash(catalog_json()); }

}  // namespace tempsum::protoform
