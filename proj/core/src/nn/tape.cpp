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

#include "tempsum/nn/tape.hpp"

#include "tempsum/error.hpp"

namespace tempsum::nn {

Parameter& ParameterSet::add(std::string name, Index rows, Index cols) {
  if (find(name)) throw ConfigError("duplicate parameter " + name);
  auto& p = storage_.emplace_back();
  p.name = std::move(name);
  p.value = Matrix::Zero(rows, cols);
  p.grad = Matrix::Zero(rows, cols);
  order_.push_back(&p);
  return p;
}

Parameter* ParameterSet::find(const std::string& name) {
  for (auto* p : order_) {
    if (p->name == name) return p;
  }
  return nullptr;
}

const Parameter* ParameterSet::find(const std::string& name) const {
  for (const auto* p : order_) {
    if (p->name == name) return p;
  }
  return nullptr;
}

std::size_t ParameterSet::scalar_count() const {
  std::size_t n = 0;
  for (const auto* p : order_) n += static_cast<std::size_t>(p->value.size());
  return n;
}

void ParameterSet::zero_grad() {
  for (auto* p : order_) p->grad.setZero();
}

const Matrix& Var::value() const { return tape->value(id); }

Var Tape::constant(Matrix value) {
  auto& n = nodes_.emplace_back();
  n.value = std::move(value);
  return {this, static_cast<int>(nodes_.size() - 1)};
}

Var Tape::param(Parameter& p) {
  auto& n = nodes_.emplace_back();
  n.external = &p.value;
  n.param = &p;
  n.needs_grad = record_;
  return {this, static_cast<int>(nodes_.size() - 1)};
}

Var Tape::push(Matrix value, std::initializer_list<Var> parents, std::function<void()> backward) {
  auto& n = nodes_.emplace_back();
  n.value = std::move(value);
  if (record_) {
    for (const auto& p : parents) n.needs_grad = n.needs_grad || needs_grad(p.id);
    if (n.needs_grad) n.backward = std::move(backward);
  }
  return {this, static_cast<int>(nodes_.size() - 1)};
}

Var Tape::push(Matrix value, const std::vector<Var>& parents, std::function<void()> backward) {
  auto& n = nodes_.emplace_back();
  n.value = std::move(value);
  if (record_) {
    for (const auto& p : parents) n.needs_grad = n.needs_grad || needs_grad(p.id);
    if (n.needs_grad) n.backward = std::move(backward);
  }
  return {this, static_cast<int>(nodes_.size() - 1)};
}

const Matrix& Tape::value(int id) const {
  const auto& n = nodes_[static_cast<std::size_t>(id)];
  return n.external ? *n.external : n.value;
}

Matrix& Tape::grad(int id) {
  auto& n = nodes_[static_cast<std::size_t>(id)];
  if (n.grad.size() == 0) {
    const auto& v = n.external ? *n.external : n.value;
    n.grad = Matrix::Zero(v.rows(), v.cols());
  }
  return n.grad;
}

void Tape::backward(Var loss) {
  if (!record_) throw Error("backward on a tape that does not record");
  if (loss.rows() != 1 || loss.cols() != 1) throw ShapeError("backward needs a 1x1 loss");
  grad(loss.id)(0, 0) += 1.0;
  for (int id = loss.id; id >= 0; --id) {
    auto& n = nodes_[static_cast<std::size_t>(id)];
    if (n.grad.size() == 0) continue;
    if (n.backward) n.backward();
    if (n.param) n.param->grad += n.grad;
  }
}

}  // namespace tempsum::nn
