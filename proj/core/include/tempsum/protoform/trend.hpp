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

#include <span>

namespace tempsum::protoform {

/// Fraction of interior days where the direction of change flips.
/// Zero differences carry the previous sign (leading zeros take the first
/// nonzero sign). Throws DomainError for fewer than 3 values.
double slope_change_ratio(std::span<const double> segment);

}  // namespace tempsum::protoform
