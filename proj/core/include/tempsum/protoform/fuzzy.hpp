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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tempsum::protoform {

/// Triangular fuzzy set: 0 outside [a, c], 1 at b, linear in between.
struct FuzzySet {
  std::string label;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double membership(double x) const;
};

/// Summarizer levels in ascending order.
enum class Level { low = 0, moderate = 1, high = 2 };

std::string_view to_string(Level level);

/// Per-user summarizer sets {low, moderate, high} (in that order).
struct SummarizerProfile {
  std::vector<FuzzySet> sets;
};

/// Linear-interpolation quantile of `values` (q in [0,1]).
double quantile(std::span<const double> values, double q);

/// Builds the user's profile from x_long: low peaks at the minimum, high at
/// the maximum, moderate at the midpoint of the 1st and 2nd tertiles.
/// Adjacent sets cross at 0.5. A constant history yields a crisp "moderate".
SummarizerProfile build_profile(std::span<const double> history);

/// label -> degree. Throws ConfigError on an empty profile.
std::map<std::string, double> summarizer_membership(double value, const SummarizerProfile& profile);

/// Level of maximal membership; ties go to the higher level.
Level strongest_level(double value, const SummarizerProfile& profile);
double level_degree(double value, const SummarizerProfile& profile, Level level);

}  // namespace tempsum::protoform
