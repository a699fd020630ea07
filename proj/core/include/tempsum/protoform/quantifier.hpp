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
#include <string_view>

namespace tempsum::protoform {

/// Quantifiers in increasing strength.
enum class Quantifier { none = 0, some = 1, half = 2, most = 3, all = 4 };

/// "none of the", "some of the", ...
std::string_view surface(Quantifier q);

/// Trapezoid over a proportion: rises on [a,b], flat on [b,c], falls on [c,d].
struct Trapezoid {
  double a, b, c, d;
  double membership(double x) const;
};

const std::array<Trapezoid, 5>& quantifier_trapezoids();

struct QuantifierTruth {
  Quantifier quantifier;
  double degree;
};

/// Quantifier of maximal membership for `proportion`; ties go to the stronger
/// one. Throws DomainError outside [0,1].
QuantifierTruth quantifier_truth(double proportion);

}  // namespace tempsum::protoform
