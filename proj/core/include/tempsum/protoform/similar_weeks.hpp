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

namespace tempsum::protoform {

/// Half-open index range [begin, end) into a series.
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct SimilarWeek {
  IndexRange week;
  double distance = 0.0;
  std::optional<IndexRange> successor;
};

struct SimilarWeekContext {
  IndexRange anchor;                 // w: the most recent full week
  std::vector<SimilarWeek> similar;  // ascending distance, ties to the more recent week
  IndexRange predicted;              // w': the week after w (may extend past the series)
};

/// Ranks the 7-day blocks preceding `anchor` (stepping back a week at a time)
/// by Euclidean distance between z-normalized vectors and keeps the top k.
/// Throws InsufficientHistoryError when fewer than 2 candidate weeks exist.
SimilarWeekContext find_similar_weeks(std::span<const double> series, IndexRange anchor, std::size_t k);

}  // namespace tempsum::protoform
