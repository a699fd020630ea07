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

#include "tempsum/nn/adam.hpp"

#include <cmath>

namespace tempsum::nn {

double gradient_norm(const ParameterSet& params) {
  double ss = 0.0;
  for (const auto* p : params.all()) ss += p->grad.squaredNorm();
  return std::sqrt(ss);
}

Adam::Adam(ParameterSet& params, AdamConfig config) : params_(&params), config_(config) {
  for (const auto* p : params.all()) {
    m_.push_back(Matrix::Zero(p->value.rows(), p->value.cols()));
    v_.push_back(Matrix::Zero(p->value.rows(), p->value.cols()));
  }
}

double Adam::step() {
  const double norm = gradient_norm(*params_);
  const double clip = (config_.clip_norm > 0.0 && norm > config_.clip_norm) ? config_.clip_norm / norm : 1.0;
  ++t_;
  const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
  auto& all = params_->all();
  for (std::size_t i = 0; i < all.size(); ++i) {
    Parameter& p = *all[i];
    const auto g = p.grad.array() * clip;
    m_[i].array() = config_.beta1 * m_[i].array() + (1.0 - config_.beta1) * g;
    v_[i].array() = config_.beta2 * v_[i].array() + (1.0 - config_.beta2) * g.square();
    p.value.array() -= config_.learning_rate * (m_[i].array() / c1) / ((v_[i].array() / c2).sqrt() + config_.epsilon);
    p.grad.setZero();
  }
  return norm;
}

}  // namespace tempsum::nn
