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
#include <optional>
#include <span>
#include <vector>

#include "tempsum/protoform/fuzzy.hpp"

namespace tempsum::protoform {

/// "Days with levels (antecedent...) are followed by `consequent`."
struct IfThenRule {
  std::vector<Level> antecedent;
  Level consequent = Level::low;
  std::optional<int> weekday;    // set for day-anchored rules: weekday of the antecedent day
  std::size_t support = 0;       // occurrences of antecedent followed by consequent
  std::size_t occurrences = 0;   // occurrences of antecedent that have a next day
  std::size_t last_position = 0; // index of the latest consequent day
  double confidence = 0.0;

  friend bool operator==(const IfThenRule&, const IfThenRule&) = default;
};

/// Mines rules with antecedents of length 1..max_antecedent. Results are sorted
/// by confidence, then support, then recency, then shorter antecedent, then
/// higher consequent.
std::vector<IfThenRule> mine_if_then_rules(std::span<const Level> levels, std::size_t min_support,
                                           double min_conf, std::size_t max_antecedent = 3);

/// Single-day antecedents anchored at a weekday: (weekday, level) -> next level.
/// `weekdays[i]` is the weekday index (0 = Monday) of day i.
std::vector<IfThenRule> mine_day_if_then_rules(std::span<const Level> levels, std::span<const int> weekdays,
                                               std::size_t min_support, double min_conf);

}  // namespace tempsum::protoform
