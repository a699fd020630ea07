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

#include <deque>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace tempsum::nn {

using Index = Eigen::Index;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Parameter {
  std::string name;
  Matrix value;
  Matrix grad;
};

/// Named parameters in registration order. Addresses stay valid.
class ParameterSet {
 public:
  Parameter& add(std::string name, Index rows, Index cols);
  Parameter* find(const std::string& name);
  const Parameter* find(const std::string& name) const;

  std::vector<Parameter*>& all() noexcept { return order_; }
  const std::vector<Parameter*>& all() const noexcept { return order_; }
  std::size_t scalar_count() const;
  void zero_grad();

 private:
  std::deque<Parameter> storage_;
  std::vector<Parameter*> order_;
};

class Tape;

/// Handle to a tape node.
struct Var {
  Tape* tape = nullptr;
  int id = -1;

  const Matrix& value() const;
  Index rows() const { return value().rows(); }
  Index cols() const { return value().cols(); }
  bool valid() const noexcept { return tape != nullptr; }
};

/// Reverse-mode recorder. Nodes hold values; backward closures accumulate into
/// parent gradients. A tape that does not record only computes values.
class Tape {
 public:
  explicit Tape(bool record = true) : record_(record) {}
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(Matrix value);
  /// Reads `p.value` in place; backward adds into `p.grad`.
  Var param(Parameter& p);

  /// Adds an op node. `backward` runs once the node's gradient is complete and
  /// is dropped when no parent needs a gradient.
  Var push(Matrix value, std::initializer_list<Var> parents, std::function<void()> backward);
  Var push(Matrix value, const std::vector<Var>& parents, std::function<void()> backward);

  const Matrix& value(int id) const;
  /// Gradient buffer of a node, zero-initialized on first access.
  Matrix& grad(int id);
  bool needs_grad(int id) const { return nodes_[static_cast<std::size_t>(id)].needs_grad; }
  bool recording() const noexcept { return record_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  /// Seeds d(loss)/d(loss) = 1 for a 1x1 node and propagates.
  void backward(Var loss);

 private:
  struct Node {
    Matrix value;
    const Matrix* external = nullptr;
    Matrix grad;
    Parameter* param = nullptr;
    bool needs_grad = false;
    std::function<void()> backward;
  };

  bool record_;
  std::deque<Node> nodes_;
};

}  // namespace tempsum::nn
