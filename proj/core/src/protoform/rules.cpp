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

#include "tempsum/protoform/rules.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "tempsum/error.hpp"

namespace tempsum::protoform {

namespace {

bool rule_before(const IfThenRule& a, const IfThenRule& b) {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  if (a.support != b.support) return a.support > b.support;
  if (a.last_position != b.last_position) return a.last_position > b.last_position;
  if (a.antecedent.size() != b.antecedent.size()) return a.antecedent.size() < b.antecedent.size();
  if (a.consequent != b.consequent) return a.consequent > b.consequent;
  if (a.antecedent != b.antecedent) return a.antecedent > b.antecedent;
  return a.weekday.value_or(-1) > b.weekday.value_or(-1);
}

struct Tally {
  std::size_t occurrences = 0;
  std::array<std::size_t, 3> followed_by{};
  std::array<std::size_t, 3> last_position{};
};

void emit(std::vector<IfThenRule>& out, const std::vector<Level>& antecedent, std::optional<int> weekday,
          const Tally& tally, std::size_t min_support, double min_conf) {
  for (std::size_t c = 0; c < 3; ++c) {
    const std::size_t support = tally.followed_by[c];
    if (support == 0 || support < min_support) continue;
    const double confidence = static_cast<double>(support) / static_cast<double>(tally.occurrences);
    if (confidence < min_conf) continue;
    out.push_back({antecedent, static_cast<Level>(c), weekday, support, tally.occurrences, tally.last_position[c],
                   confidence});
  }
}

}  // namespace

std::vector<IfThenRule> mine_if_then_rules(std::span<const Level> levels, std::size_t min_support,
                                           double min_conf, std::size_t max_antecedent) {
  std::vector<IfThenRule> rules;
  for (std::size_t k = 1; k <= max_antecedent; ++k) {
    if (levels.size() <= k) break;
    std::map<std::vector<Level>, Tally> tallies;
    for (std::size_t t = k; t < levels.size(); ++t) {
      std::vector<Level> antecedent(levels.begin() + static_cast<std::ptrdiff_t>(t - k),
                                    levels.begin() + static_cast<std::ptrdiff_t>(t));
      auto& tally = tallies[antecedent];
      ++tally.occurrences;
      const auto c = static_cast<std::size_t>(levels[t]);
      ++tally.followed_by[c];
      tally.last_position[c] = t;
    }
    for (const auto& [antecedent, tally] : tallies) emit(rules, antecedent, std::nullopt, tally, min_support, min_conf);
  }
  std::sort(rules.begin(), rules.end(), rule_before);
  return rules;
}

std::vector<IfThenRule> mine_day_if_then_rules(std::span<const Level> levels, std::span<const int> weekdays,
                                               std::size_t min_support, double min_conf) {
  if (weekdays.size() != levels.size()) throw DomainError("weekday list must parallel the level list");
  std::map<std::pair<int, Level>, Tally> tallies;
  for (std::size_t t = 1; t < levels.size(); ++t) {
    auto& tally = tallies[{weekdays[t - 1], levels[t - 1]}];
    ++tally.occurrences;
    const auto c = static_cast<std::size_t>(levels[t]);
    ++tally.followed_by[c];
    tally.last_position[c] = t;
  }
  std::vector<IfThenRule> rules;
  for (const auto& [key, tally] : tallies) emit(rules, {key.second}, key.first, tally, min_support, min_conf);
  std::sort(rules.begin(), rules.end(), rule_before);
  return rules;
}

}  // namespace tempsum::protoform
