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

#include "tempsum/protoform/fuzzy.hpp"

#include <algorithm>
#include <cmath>

#include "tempsum/error.hpp"

namespace tempsum::protoform {

double FuzzySet::membership(double x) const {
  if (x < a || x > c) return 0.0;
  if (x == b) return 1.0;
  if (x < b) return (x - a) / (b - a);
  return (c - x) / (c - b);
}

std::string_view to_string(Level level) {
  switch (level) {
    case Level::low:
      return "low";
    case Level::moderate:
      return "moderate";
    case Level::high:
      return "high";
  }
  return "?";
}

double quantile(std::span<const double> values, double q) {
  if (values.empty()) throw DomainError("quantile of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

SummarizerProfile build_profile(std::span<const double> history) {
  if (history.empty()) throw ConfigError("cannot build a summarizer profile from an empty history");
  const auto [min_it, max_it] = std::minmax_element(history.begin(), history.end());
  const double lo = *min_it;
  const double hi = *max_it;
  SummarizerProfile profile;
  if (!(hi > lo)) {
    // Degenerate history: only "moderate" applies, and only at the constant value.
    profile.sets = {{"low", lo - 2.0, lo - 1.0, lo - 1.0}, {"moderate", lo, lo, lo}, {"high", hi + 1.0, hi + 1.0, hi + 2.0}};
    return profile;
  }
  const double mid = std::clamp(0.5 * (quantile(history, 1.0 / 3.0) + quantile(history, 2.0 / 3.0)), lo, hi);
  profile.sets = {{"low", lo, lo, mid}, {"moderate", lo, mid, hi}, {"high", mid, hi, hi}};
  return profile;
}

std::map<std::string, double> summarizer_membership(double value, const SummarizerProfile& profile) {
  if (profile.sets.empty()) throw ConfigError("summarizer profile has no fuzzy sets");
  std::map<std::string, double> degrees;
  for (const auto& set : profile.sets) degrees[set.label] = set.membership(value);
  return degrees;
}

Level strongest_level(double value, const SummarizerProfile& profile) {
  if (profile.sets.size() != 3) throw ConfigError("summarizer profile must hold low/moderate/high sets");
  std::size_t best = 0;
  double best_degree = -1.0;
  for (std::size_t i = 0; i < profile.sets.size(); ++i) {
    const double d = profile.sets[i].membership(value);
    if (d >= best_degree) {
      best = i;
      best_degree = d;
    }
  }
  // A value outside every set's support (outside the observed range) snaps to the nearest end.
  if (best_degree <= 0.0) return value < profile.sets[1].b ? Level::low : Level::high;
  return static_cast<Level>(best);
}

double level_degree(double value, const SummarizerProfile& profile, Level level) {
  return profile.sets.at(static_cast<std::size_t>(level)).membership(value);
}

}  // namespace tempsum::protoform
