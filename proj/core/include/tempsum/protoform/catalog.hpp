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
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tempsum/text/slots.hpp"

namespace tempsum::protoform {

enum class SummaryType {
  standard_eval_tw,
  standard_eval_stw,
  day_based_pattern,
  goal_evaluation,
  goal_assistance,
  standard_trend,
  if_then_pattern,
  day_if_then_pattern,
  evaluation_comparison,
  goal_comparison,
  cluster_description,
  cluster_pattern,
  standard_pattern,
};

inline constexpr std::array<SummaryType, 13> kAllSummaryTypes = {
    SummaryType::standard_eval_tw,      SummaryType::standard_eval_stw,   SummaryType::day_based_pattern,
    SummaryType::goal_evaluation,       SummaryType::goal_assistance,     SummaryType::standard_trend,
    SummaryType::if_then_pattern,       SummaryType::day_if_then_pattern, SummaryType::evaluation_comparison,
    SummaryType::goal_comparison,       SummaryType::cluster_description, SummaryType::cluster_pattern,
    SummaryType::standard_pattern,
};

/// Machine key, e.g. "standard_eval_tw".
std::string_view to_string(SummaryType type);
/// Human-readable row name, e.g. "Standard Evaluation (TW granularity)".
std::string_view display_name(SummaryType type);
SummaryType summary_type_from_string(std::string_view key);

/// One summary type of the rule catalog.
struct TypeRule {
  SummaryType type;
  /// Length of x_short in days.
  std::size_t window_days;
  /// Days of history needed up to and including the as-of day.
  std::size_t min_history_days;
  /// Protoforms with one placeholder token per blank, e.g.
  /// "In the past TW , your A was S ." (blanks expand to one placeholder per word).
  std::vector<std::string> protoforms;
};

const TypeRule& rule_for(SummaryType type);

// Closed lexicons.
inline constexpr std::string_view kAttributeSurface = "calorie intake";
inline constexpr std::string_view kTimeWindowSurface = "week";
inline constexpr std::string_view kSubTimeWindowSurface = "days";
inline constexpr std::string_view kGoalSurface = "calorie goal";
inline constexpr std::array<std::string_view, 3> kComparisonSurfaces = {"lower", "about the same", "higher"};
inline constexpr std::array<std::string_view, 2> kDirectionSurfaces = {"increase", "decrease"};

// Rule parameters.
inline constexpr std::size_t kRuleMinSupport = 5;
inline constexpr double kRuleMinConfidence = 0.7;
inline constexpr std::size_t kRuleMaxAntecedent = 3;
inline constexpr std::size_t kSimilarWeeksK = 3;
inline constexpr double kGoalBand = 0.10;
inline constexpr double kComparisonDeadBand = 0.05;

/// Every word of every lexicon entry of `kind`.
std::vector<std::string> lexicon_entries(text::SlotKind kind);

/// The catalog as a versioned JSON document.
std::string catalog_json();
/// Git-style content hash of catalog_json().
std::string catalog_hash();

}  // namespace tempsum::protoform
