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

#include "tempsum/protoform/quantifier.hpp"

#include "tempsum/error.hpp"

namespace tempsum::protoform {

std::string_view surface(Quantifier q) {
  switch (q) {
    case Quantifier::none:
      return "none of the";
    case Quantifier::some:
      return "some of the";
    case Quantifier::half:
      return "half of the";
    case Quantifier::most:
      return "most of the";
    case Quantifier::all:
      return "all of the";
  }
  return "?";
}

double Trapezoid::membership(double x) const {
  if (x < a || x > d) return 0.0;
  if (x >= b && x <= c) return 1.0;
  if (x < b) return (x - a) / (b - a);
  return (d - x) / (d - c);
}

const std::array<Trapezoid, 5>& quantifier_trapezoids() {
  static const std::array<Trapezoid, 5> kShapes = {{
      {0.0, 0.0, 0.05, 0.15},
      {0.05, 0.2, 0.35, 0.5},
      {0.35, 0.45, 0.55, 0.65},
      {0.5, 0.7, 0.9, 0.97},
      {0.9, 0.99, 1.0, 1.0},
  }};
  return kShapes;
}

QuantifierTruth quantifier_truth(double proportion) {
  if (!(proportion >= 0.0 && proportion <= 1.0)) {
    throw DomainError("proportion " + std::to_string(proportion) + " outside [0,1]");
  }
  const auto& shapes = quantifier_trapezoids();
  QuantifierTruth best{Quantifier::none, -1.0};
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const double degree = shapes[i].membership(proportion);
    if (degree >= best.degree) best = {static_cast<Quantifier>(i), degree};
  }
  return best;
}

}  // namespace tempsum::protoform
