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

#include "tempsum/protoform/trend.hpp"

#include <vector>

#include "tempsum/error.hpp"

namespace tempsum::protoform {

double slope_change_ratio(std::span<const double> segment) {
  if (segment.size() < 3) throw DomainError("slope change ratio needs at least 3 values");
  std::vector<int> signs;
  signs.reserve(segment.size() - 1);
  for (std::size_t t = 1; t < segment.size(); ++t) {
    const double d = segment[t] - segment[t - 1];
    signs.push_back(d > 0.0 ? 1 : (d < 0.0 ? -1 : 0));
  }
  int carry = 0;
  for (int s : signs) {
    if (s != 0) {
      carry = s;
      break;
    }
  }
  for (int& s : signs) {
    if (s == 0) {
      s = carry;
    } else {
      carry = s;
    }
  }
  std::size_t changes = 0;
  for (std::size_t k = 1; k < signs.size(); ++k) {
    if (signs[k] != signs[k - 1]) ++changes;
  }
  return static_cast<double>(changes) / static_cast<double>(segment.size() - 2);
}

}  // namespace tempsum::protoform
