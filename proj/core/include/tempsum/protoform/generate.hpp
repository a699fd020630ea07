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
#include <string>
#include <vector>

#include "tempsum/ingest/series.hpp"
#include "tempsum/protoform/catalog.hpp"
#include "tempsum/protoform/fuzzy.hpp"
#include "tempsum/protoform/similar_weeks.hpp"
#include "tempsum/text/slots.hpp"

namespace tempsum::protoform {

struct SummaryInstance {
  SummaryType type = SummaryType::standard_eval_tw;
  std::vector<std::string> summary_tokens;
  std::vector<std::string> template_tokens;
  std::vector<text::SlotFill> slot_fills;
  /// Pieces of the series that form x_short, in order. One piece for every
  /// type except the standard pattern (similar week, its successor, anchor).
  std::vector<IndexRange> segments;
  double truth_degree = 0.0;

  /// Span from the first segment's start to the last segment's end.
  IndexRange window() const;
};

/// Per-series state shared by every summary type: the summarizer profile,
/// each day's strongest level and weekday. The series must outlive it.
class SeriesContext {
 public:
  explicit SeriesContext(const ingest::TimeSeries& series);

  const ingest::TimeSeries& series() const noexcept { return *series_; }
  const SummarizerProfile& profile() const noexcept { return profile_; }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  const std::vector<int>& weekdays() const noexcept { return weekdays_; }

 private:
  const ingest::TimeSeries* series_;
  SummarizerProfile profile_;
  std::vector<Level> levels_;
  std::vector<int> weekdays_;
};

/// Expands a protoform (one placeholder per blank) with fills in reading order.
SummaryInstance realize(SummaryType type, const std::string& protoform, std::vector<text::SlotFill> fills);

/// Summaries of `type` for the window ending at `as_of_index` (inclusive).
/// Throws InsufficientHistoryError when fewer than the type's minimum days
/// precede (and include) the as-of day.
std::vector<SummaryInstance> generate_summary(SummaryType type, const SeriesContext& context,
                                              std::size_t as_of_index);
std::vector<SummaryInstance> generate_summary(SummaryType type, const ingest::TimeSeries& series, Date as_of);

/// Template tokens recovered from the summary tokens and slot fills.
std::vector<std::string> templatize(const SummaryInstance& instance);

}  // namespace tempsum::protoform
