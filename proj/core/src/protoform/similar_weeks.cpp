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

#include "tempsum/protoform/similar_weeks.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "tempsum/error.hpp"

namespace tempsum::protoform {

namespace {

constexpr std::size_t kWeek = 7;

std::array<double, kWeek> z_normalize(std::span<const double> week) {
  double mean = 0.0;
  for (double v : week) mean += v;
  mean /= kWeek;
  double var = 0.0;
  for (double v : week) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / kWeek);
  std::array<double, kWeek> z{};
  for (std::size_t i = 0; i < kWeek; ++i) z[i] = sd > 0.0 ? (week[i] - mean) / sd : 0.0;
  return z;
}

}  // namespace

SimilarWeekContext find_similar_weeks(std::span<const double> series, IndexRange anchor, std::size_t k) {
  if (anchor.size() != kWeek || anchor.end > series.size()) {
    throw DomainError("anchor week must be a 7-day range inside the series");
  }
  SimilarWeekContext ctx;
  ctx.anchor = anchor;
  ctx.predicted = {anchor.end, anchor.end + kWeek};

  const auto target = z_normalize(series.subspan(anchor.begin, kWeek));
  for (std::size_t q = 1; q * kWeek <= anchor.begin; ++q) {
    const IndexRange week{anchor.begin - q * kWeek, anchor.begin - (q - 1) * kWeek};
    const auto z = z_normalize(series.subspan(week.begin, kWeek));
    double dist = 0.0;
    for (std::size_t i = 0; i < kWeek; ++i) dist += (z[i] - target[i]) * (z[i] - target[i]);
    ctx.similar.push_back({week, std::sqrt(dist), IndexRange{week.end, week.end + kWeek}});
  }
  if (ctx.similar.size() < 2) {
    throw InsufficientHistoryError("similar-week search needs at least 2 full weeks before the anchor");
  }
  std::stable_sort(ctx.similar.begin(), ctx.similar.end(), [](const SimilarWeek& a, const SimilarWeek& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.week.begin > b.week.begin;
  });
  if (ctx.similar.size() > k) ctx.similar.resize(k);
  return ctx;
}

}  // namespace tempsum::protoform
