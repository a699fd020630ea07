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

#include "tempsum/nn/attention.hpp"

#include <cmath>
#include <limits>

#include "tempsum/error.hpp"

namespace tempsum::nn {

namespace {

// Keys visible to query i: [lo, hi).
struct KeySpan {
  Index lo;
  Index hi;
};

KeySpan key_span(Index i, Index key_len, Index window, bool causal) {
  Index lo = 0;
  Index hi = key_len;
  if (window > 0 && window < key_len) {
    lo = (i / window) * window;
    hi = std::min(lo + window, key_len);
  }
  if (causal) hi = std::min(hi, i + 1);
  return {lo, hi};
}

void check_spec(const AttentionSpec& s, const Var& q, const Var& k, const Var& v) {
  const Index width = s.heads * s.head_dim;
  if (q.rows() != s.batch * s.query_len || k.rows() != s.batch * s.key_len || v.rows() != s.batch * s.key_len) {
    throw ShapeError("attention: row counts do not match batch and lengths");
  }
  if (q.cols() != width || k.cols() != width || v.cols() != width) {
    throw ShapeError("attention: projections must have heads * head_dim = " + std::to_string(width) + " columns");
  }
  if (s.window > 0 && s.query_len != s.key_len) throw ShapeError("attention: windows need equal lengths");
}

}  // namespace

Matrix attention_mask(Index query_len, Index key_len, Index window, bool causal) {
  Matrix m = Matrix::Zero(query_len, key_len);
  for (Index i = 0; i < query_len; ++i) {
    const auto s = key_span(i, key_len, window, causal);
    for (Index j = s.lo; j < s.hi; ++j) m(i, j) = 1.0;
  }
  return m;
}

Matrix attention_probabilities(const Matrix& q, const Matrix& k, Index window, bool causal) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(q.cols()));
  Matrix p = Matrix::Zero(q.rows(), k.rows());
  for (Index i = 0; i < q.rows(); ++i) {
    const auto s = key_span(i, k.rows(), window, causal);
    if (s.hi <= s.lo) continue;
    Eigen::RowVectorXd scores = (k.middleRows(s.lo, s.hi - s.lo) * q.row(i).transpose()).transpose() * scale;
    scores.array() -= scores.maxCoeff();
    scores = scores.array().exp();
    p.row(i).segment(s.lo, s.hi - s.lo) = scores / scores.sum();
  }
  return p;
}

Var multihead_attention(Var q, Var k, Var v, const AttentionSpec& spec) {
  check_spec(spec, q, k, v);
  const Index B = spec.batch;
  const Index Tq = spec.query_len;
  const Index Tk = spec.key_len;
  const Index H = spec.heads;
  const Index D = spec.head_dim;
  const double scale = 1.0 / std::sqrt(static_cast<double>(D));

  // Windowed self-attention is a set of diagonal blocks; otherwise one block.
  struct Block {
    Index q0, qn, k0, kn;
  };
  std::vector<Block> blocks;
  if (spec.window > 0 && spec.window < Tk) {
    for (Index s = 0; s < Tq; s += spec.window) {
      const Index n = std::min(spec.window, Tq - s);
      blocks.push_back({s, n, s, n});
    }
  } else {
    blocks.push_back({0, Tq, 0, Tk});
  }

  Matrix out = Matrix::Zero(B * Tq, H * D);
  // Probabilities per (batch, head, block), kept for the backward pass.
  std::vector<Matrix> probs;
  probs.reserve(static_cast<std::size_t>(B * H) * blocks.size());
  const Matrix& Q = q.value();
  const Matrix& K = k.value();
  const Matrix& V = v.value();
  for (Index b = 0; b < B; ++b) {
    for (Index h = 0; h < H; ++h) {
      for (const auto& blk : blocks) {
        const auto qb = Q.block(b * Tq + blk.q0, h * D, blk.qn, D);
        const auto kb = K.block(b * Tk + blk.k0, h * D, blk.kn, D);
        const auto vb = V.block(b * Tk + blk.k0, h * D, blk.kn, D);
        Matrix s = (qb * kb.transpose()) * scale;
        for (Index i = 0; i < blk.qn; ++i) {
          Index hi = blk.kn;
          if (spec.causal) hi = std::min(hi, blk.q0 + i + 1 - blk.k0);
          double mx = -std::numeric_limits<double>::infinity();
          for (Index j = 0; j < hi; ++j) mx = std::max(mx, s(i, j));
          double total = 0.0;
          for (Index j = 0; j < blk.kn; ++j) {
            const double e = j < hi ? std::exp(s(i, j) - mx) : 0.0;
            s(i, j) = e;
            total += e;
          }
          if (total > 0.0) s.row(i) /= total;
        }
        out.block(b * Tq + blk.q0, h * D, blk.qn, D).noalias() = s * vb;
        probs.push_back(std::move(s));
      }
    }
  }

  Tape* t = q.tape;
  const int id = static_cast<int>(t->size());
  return t->push(std::move(out), {q, k, v}, [t, q, k, v, spec, blocks, probs = std::move(probs), scale, id] {
    const Matrix& g = t->grad(id);
    const Index B = spec.batch, Tq = spec.query_len, Tk = spec.key_len, H = spec.heads, D = spec.head_dim;
    const bool gq = t->needs_grad(q.id), gk = t->needs_grad(k.id), gv = t->needs_grad(v.id);
    const Matrix& Q = q.value();
    const Matrix& K = k.value();
    const Matrix& V = v.value();
    std::size_t n = 0;
    for (Index b = 0; b < B; ++b) {
      for (Index h = 0; h < H; ++h) {
        for (const auto& blk : blocks) {
          const Matrix& p = probs[n++];
          const auto go = g.block(b * Tq + blk.q0, h * D, blk.qn, D);
          const auto vb = V.block(b * Tk + blk.k0, h * D, blk.kn, D);
          if (gv) t->grad(v.id).block(b * Tk + blk.k0, h * D, blk.kn, D).noalias() += p.transpose() * go;
          if (!gq && !gk) continue;
          const Matrix dp = go * vb.transpose();
          Matrix ds = p.cwiseProduct(dp);
          const Eigen::VectorXd row_dot = ds.rowwise().sum();
          ds -= (p.array().colwise() * row_dot.array()).matrix();
          ds *= scale;
          if (gq) {
            t->grad(q.id).block(b * Tq + blk.q0, h * D, blk.qn, D).noalias() +=
                ds * K.block(b * Tk + blk.k0, h * D, blk.kn, D);
          }
          if (gk) {
            t->grad(k.id).block(b * Tk + blk.k0, h * D, blk.kn, D).noalias() +=
                ds.transpose() * Q.block(b * Tq + blk.q0, h * D, blk.qn, D);
          }
        }
      }
    }
  });
}

}  // namespace tempsum::nn
