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

#include "tempsum/nn/ops.hpp"

#include <cmath>

#include "tempsum/error.hpp"

namespace tempsum::nn {

namespace {

void require_same_shape(const Var& a, const Var& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

Var matmul(Var a, Var b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " by " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Tape* t = a.tape;
  Matrix v = a.value() * b.value();
  Var out;
  out = t->push(std::move(v), {a, b}, [t, a, b, id = t->size()] {
    const Matrix& g = t->grad(static_cast<int>(id));
    if (t->needs_grad(a.id)) t->grad(a.id).noalias() += g * b.value().transpose();
    if (t->needs_grad(b.id)) t->grad(b.id).noalias() += a.value().transpose() * g;
  });
  return out;
}

Var add(Var a, Var b) {
  require_same_shape(a, b, "add");
  Tape* t = a.tape;
  const int id = static_cast<int>(t->size());
  return t->push(a.value() + b.value(), {a, b}, [t, a, b, id] {
    const Matrix& g = t->grad(id);
    if (t->needs_grad(a.id)) t->grad(a.id) += g;
    if (t->needs_grad(b.id)) t->grad(b.id) += g;
  });
}

Var sub(Var a, Var b) {
  require_same_shape(a, b, "sub");
  Tape* t = a.tape;
  const int id = static_cast<int>(t->size());
  return t->push(a.value() - b.value(), {a, b}, [t, a, b, id] {
    const Matrix& g = t->grad(id);
    if (t->needs_grad(a.id)) t->grad(a.id) += g;
    if (t->needs_grad(b.id)) t->grad(b.id) -= g;
  });
}

Var mul(Var a, Var b) {
  require_same_shape(a, b, "mul");
  Tape* t = a.tape;
  const int id = static_cast<int>(t->size());
  return t->push(a.value().cwiseProduct(b.value()), {a, b}, [t, a, b, id] {
    const Matrix& g = t->grad(id);
    if (t->needs_grad(a.id)) t->grad(a.id) += g.cwiseProduct(b.value());
    if (t->needs_grad(b.id)) t->grad(b.id) += g.cwiseProduct(a.value());
  });
}

Var add_row(Var a, Var row) {
  if (row.rows() != 1 || row.cols() != a.cols()) throw ShapeError("add_row: row must be 1 x cols");
  Tape* t = a.tape;
  const int id = static_cast<int>(t->size());
  Matrix v = a.value();
  v.rowwise() += row.value().row(0);
  return t->push(std::move(v), {a, row}, [t, a, row, id] {
    const Matrix& g = t->grad(id);
    if (t->needs_grad(a.id)) t->grad(a.id) += g;
    if (t->needs_grad(row.id)) t->grad(row.id) += g.colwise().sum();
  });
}

Var scale(Var a, double s) {
  Tape* t = a.tape;
  const int id = static_cast<int>(t->size());
  return t->push(a.value() * s, {a}, [t, a, s, id] { t->grad(a.id) += t->grad(id) * s; });
}

Var tanh(Var a) {
  Tape* t = a.tape;
  const int id = static_cast<int>(t->size());
  return t->push(a.value().array().tanh().matrix(), {a}, [t, a, id] {
    const auto& y = t->value(id).array();
    t->grad(a.id).array() += t->grad(id).array() * (1.0 - y * y);
  });
}

Var sigmoid(Var a) {
  Tape* t = a.tape;
  const int id = static_cast<int>(t->size());
  Matrix v = (1.0 / (1.0 + (-a.value().array()).exp())).matrix();
  return t->push(std::move(v), {a}, [t, a, id] {
    const auto& y = t->value(id).array();
    t->grad(a.id).array() += t->grad(id).array() * y * (1.0 - y);
  });
}

Var relu(Var a) {
  Tape* t = a.tape;
  const int id = static_cast<int>(t->size());
  return t->push(a.value().cwiseMax(0.0), {a}, [t, a, id] {
    t->grad(a.id).array() += (a.value().array() > 0.0).select(t->grad(id).array(), 0.0);
  });
}

Var concat_cols(const std::vector<Var>& parts) {
  if (parts.empty()) throw ShapeError("concat_cols: no parts");
  Tape* t = parts.front().tape;
  const Index rows = parts.front().rows();
  Index cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw ShapeError("concat_cols: row counts differ");
    cols += p.cols();
  }
  Matrix v(rows, cols);
  Index at = 0;
  for (const auto& p : parts) {
    v.middleCols(at, p.cols()) = p.value();
    at += p.cols();
  }
  const int id = static_cast<int>(t->size());
  return t->push(std::move(v), parts, [t, parts, id] {
    const Matrix& g = t->grad(id);
    Index at = 0;
    for (const auto& p : parts) {
      if (t->needs_grad(p.id)) t->grad(p.id) += g.middleCols(at, p.cols());
      at += p.cols();
    }
  });
}

Var slice_cols(Var a, Index start, Index count) {
  if (start < 0 || count < 0 || start + count > a.cols()) throw ShapeError("slice_cols: out of range");
  Tape* t = a.tape;
  const int id = static_cast<int>(t->size());
  return t->push(a.value().middleCols(start, count), {a}, [t, a, start, count, id] {
    t->grad(a.id).middleCols(start, count) += t->grad(id);
  });
}

Var concat_rows(const std::vector<Var>& parts) {
  if (parts.empty()) throw ShapeError("concat_rows: no parts");
  Tape* t = parts.front().tape;
  const Index cols = parts.front().cols();
  Index rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw ShapeError("concat_rows: column counts differ");
    rows += p.rows();
  }
  Matrix v(rows, cols);
  Index at = 0;
  for (const auto& p : parts) {
    v.middleRows(at, p.rows()) = p.value();
    at += p.rows();
  }
  const int id = static_cast<int>(t->size());
  return t->push(std::move(v), parts, [t, parts, id] {
    const Matrix& g = t->grad(id);
    Index at = 0;
    for (const auto& p : parts) {
      if (t->needs_grad(p.id)) t->grad(p.id) += g.middleRows(at, p.rows());
      at += p.rows();
    }
  });
}

Var slice_rows(Var a, Index start, Index count) {
  if (start < 0 || count < 0 || start + count > a.rows()) throw ShapeError("slice_rows: out of range");
  Tape* t = a.tape;
  const int id = static_cast<int>(t->size());
  return t->push(a.value().middleRows(start, count), {a}, [t, a, start, count, id] {
    t->grad(a.id).middleRows(start, count) += t->grad(id);
  });
}

Var reshape(Var a, Index rows, Index cols) {
  if (rows * cols != a.value().size()) throw ShapeError("reshape: element count differs");
  Tape* t = a.tape;
  const int id = static_cast<int>(t->size());
  Matrix v = Eigen::Map<const Matrix>(a.value().data(), rows, cols);
  return t->push(std::move(v), {a}, [t, a, id] {
    const Matrix& g = t->grad(id);
    Matrix& ga = t->grad(a.id);
    Eigen::Map<Matrix>(ga.data(), g.rows(), g.cols()) += g;
  });
}

Var broadcast_rows(Var row, Index n) {
  if (row.rows() != 1) throw ShapeError("broadcast_rows: input must be a single row");
  Tape* t = row.tape;
  const int id = static_cast<int>(t->size());
  Matrix v = row.value().replicate(n, 1);
  return t->push(std::move(v), {row}, [t, row, id] { t->grad(row.id) += t->grad(id).colwise().sum(); });
}

Var gather_rows(Var table, const std::vector<int>& ids) {
  const Index n = static_cast<Index>(ids.size());
  Matrix v(n, table.cols());
  for (Index r = 0; r < n; ++r) {
    const int k = ids[static_cast<std::size_t>(r)];
    if (k < 0 || k >= table.rows()) throw ShapeError("gather_rows: id " + std::to_string(k) + " out of range");
    v.row(r) = table.value().row(k);
  }
  Tape* t = table.tape;
  const int id = static_cast<int>(t->size());
  return t->push(std::move(v), {table}, [t, table, ids, id] {
    const Matrix& g = t->grad(id);
    Matrix& gt = t->grad(table.id);
    for (std::size_t r = 0; r < ids.size(); ++r) gt.row(ids[r]) += g.row(static_cast<Index>(r));
  });
}

Var dropout(Var a, double p, std::mt19937_64* rng) {
  if (rng == nullptr || p <= 0.0) return a;
  if (p >= 1.0) throw ConfigError("dropout probability must be below 1");
  std::bernoulli_distribution keep(1.0 - p);
  Matrix mask(a.rows(), a.cols());
  const double s = 1.0 / (1.0 - p);
  for (Index i = 0; i < mask.size(); ++i) mask.data()[i] = keep(*rng) ? s : 0.0;
  Tape* t = a.tape;
  const int id = static_cast<int>(t->size());
  Matrix v = a.value().cwiseProduct(mask);
  return t->push(std::move(v), {a}, [t, a, mask = std::move(mask), id] {
    t->grad(a.id) += t->grad(id).cwiseProduct(mask);
  });
}

Var layer_norm(Var a, Var gamma, Var beta, double eps) {
  const Index n = a.rows();
  const Index c = a.cols();
  if (gamma.rows() != 1 || gamma.cols() != c || beta.rows() != 1 || beta.cols() != c) {
    throw ShapeError("layer_norm: gain and bias must be 1 x cols");
  }
  Matrix xhat(n, c);
  Eigen::VectorXd inv_std(n);
  for (Index r = 0; r < n; ++r) {
    const double mean = a.value().row(r).mean();
    const double var = (a.value().row(r).array() - mean).square().mean();
    inv_std(r) = 1.0 / std::sqrt(var + eps);
    xhat.row(r) = (a.value().row(r).array() - mean) * inv_std(r);
  }
  Matrix v = xhat.array().rowwise() * gamma.value().row(0).array();
  v.rowwise() += beta.value().row(0);
  Tape* t = a.tape;
  const int id = static_cast<int>(t->size());
  return t->push(std::move(v), {a, gamma, beta}, [t, a, gamma, beta, xhat = std::move(xhat), inv_std, id] {
    const Matrix& g = t->grad(id);
    if (t->needs_grad(gamma.id)) t->grad(gamma.id) += g.cwiseProduct(xhat).colwise().sum();
    if (t->needs_grad(beta.id)) t->grad(beta.id) += g.colwise().sum();
    if (t->needs_grad(a.id)) {
      Matrix& ga = t->grad(a.id);
      const Index c = g.cols();
      for (Index r = 0; r < g.rows(); ++r) {
        const Eigen::RowVectorXd gx = g.row(r).cwiseProduct(gamma.value().row(0));
        const double m1 = gx.mean();
        const double m2 = gx.cwiseProduct(xhat.row(r)).mean();
        ga.row(r).array() += inv_std(r) * (gx.array() - m1 - xhat.row(r).array() * m2);
      }
      (void)c;
    }
  });
}

Var im2col(Var x, Index batch, Index length, Index kernel, Index padding) {
  const Index ch = x.cols();
  if (x.rows() != batch * length) throw ShapeError("im2col: rows must equal batch * length");
  const Index out_len = length + 2 * padding - kernel + 1;
  if (out_len < 1) throw ShapeError("im2col: sequence of length " + std::to_string(length) + " is too short");
  Matrix v = Matrix::Zero(batch * out_len, kernel * ch);
  for (Index b = 0; b < batch; ++b) {
    for (Index o = 0; o < out_len; ++o) {
      for (Index k = 0; k < kernel; ++k) {
        const Index src = o + k - padding;
        if (src < 0 || src >= length) continue;
        v.block(b * out_len + o, k * ch, 1, ch) = x.value().row(b * length + src);
      }
    }
  }
  Tape* t = x.tape;
  const int id = static_cast<int>(t->size());
  return t->push(std::move(v), {x}, [t, x, batch, length, kernel, padding, out_len, ch, id] {
    const Matrix& g = t->grad(id);
    Matrix& gx = t->grad(x.id);
    for (Index b = 0; b < batch; ++b) {
      for (Index o = 0; o < out_len; ++o) {
        for (Index k = 0; k < kernel; ++k) {
          const Index src = o + k - padding;
          if (src < 0 || src >= length) continue;
          gx.row(b * length + src) += g.block(b * out_len + o, k * ch, 1, ch);
        }
      }
    }
  });
}

Var max_pool(Var x, Index batch, Index length, Index kernel, Index stride) {
  if (x.rows() != batch * length) throw ShapeError("max_pool: rows must equal batch * length");
  if (length < kernel) {
    throw ShapeError("max_pool: sequence of length " + std::to_string(length) + " is shorter than the pool kernel " +
                     std::to_string(kernel));
  }
  const Index out_len = (length - kernel) / stride + 1;
  const Index ch = x.cols();
  Matrix v(batch * out_len, ch);
  std::vector<Index> arg(static_cast<std::size_t>(batch * out_len * ch));
  for (Index b = 0; b < batch; ++b) {
    for (Index o = 0; o < out_len; ++o) {
      for (Index c = 0; c < ch; ++c) {
        Index best = b * length + o * stride;
        for (Index k = 1; k < kernel; ++k) {
          const Index r = b * length + o * stride + k;
          if (x.value()(r, c) > x.value()(best, c)) best = r;
        }
        v(b * out_len + o, c) = x.value()(best, c);
        arg[static_cast<std::size_t>((b * out_len + o) * ch + c)] = best;
      }
    }
  }
  Tape* t = x.tape;
  const int id = static_cast<int>(t->size());
  return t->push(std::move(v), {x}, [t, x, arg = std::move(arg), ch, id] {
    const Matrix& g = t->grad(id);
    Matrix& gx = t->grad(x.id);
    for (Index r = 0; r < g.rows(); ++r) {
      for (Index c = 0; c < ch; ++c) gx(arg[static_cast<std::size_t>(r * ch + c)], c) += g(r, c);
    }
  });
}

Var sum(Var a) {
  Matrix v(1, 1);
  v(0, 0) = a.value().sum();
  Tape* t = a.tape;
  const int id = static_cast<int>(t->size());
  return t->push(std::move(v), {a}, [t, a, id] { t->grad(a.id).array() += t->grad(id)(0, 0); });
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix p = logits;
  for (Index r = 0; r < p.rows(); ++r) {
    const double mx = p.row(r).maxCoeff();
    p.row(r) = (p.row(r).array() - mx).exp();
    p.row(r) /= p.row(r).sum();
  }
  return p;
}

std::vector<int> argmax_rows(const Matrix& m) {
  std::vector<int> out(static_cast<std::size_t>(m.rows()));
  for (Index r = 0; r < m.rows(); ++r) {
    Index best = 0;
    for (Index c = 1; c < m.cols(); ++c) {
      if (m(r, c) > m(r, best)) best = c;
    }
    out[static_cast<std::size_t>(r)] = static_cast<int>(best);
  }
  return out;
}

Var softmax_cross_entropy(Var logits, const std::vector<int>& targets, const std::vector<double>& weights) {
  const Index n = logits.rows();
  if (static_cast<Index>(targets.size()) != n || static_cast<Index>(weights.size()) != n) {
    throw AlignmentError("softmax_cross_entropy: " + std::to_string(n) + " rows, " + std::to_string(targets.size()) +
                         " targets, " + std::to_string(weights.size()) + " weights");
  }
  Matrix probs = softmax_rows(logits.value());
  double total = 0.0;
  for (Index r = 0; r < n; ++r) {
    const double w = weights[static_cast<std::size_t>(r)];
    if (w == 0.0) continue;
    const int k = targets[static_cast<std::size_t>(r)];
    if (k < 0 || k >= logits.cols()) throw AlignmentError("softmax_cross_entropy: target out of range");
    // log-sum-exp form keeps the loss finite for saturated rows.
    const double mx = logits.value().row(r).maxCoeff();
    const double lse = mx + std::log((logits.value().row(r).array() - mx).exp().sum());
    total += w * (lse - logits.value()(r, k));
  }
  Matrix v(1, 1);
  v(0, 0) = total;
  Tape* t = logits.tape;
  const int id = static_cast<int>(t->size());
  return t->push(std::move(v), {logits}, [t, logits, targets, weights, probs = std::move(probs), id] {
    const double g = t->grad(id)(0, 0);
    Matrix& gl = t->grad(logits.id);
    for (Index r = 0; r < probs.rows(); ++r) {
      const double w = weights[static_cast<std::size_t>(r)];
      if (w == 0.0) continue;
      gl.row(r) += g * w * probs.row(r);
      gl(r, targets[static_cast<std::size_t>(r)]) -= g * w;
    }
  });
}

}  // namespace tempsum::nn
