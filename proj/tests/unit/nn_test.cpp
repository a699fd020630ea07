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

#include <doctest.h>

#include <cmath>

#include "gradcheck.hpp"
#include "test_support.hpp"
#include "tempsum/error.hpp"
#include "tempsum/nn/adam.hpp"
#include "tempsum/nn/attention.hpp"
#include "tempsum/nn/checkpoint.hpp"
#include "tempsum/nn/encoders.hpp"
#include "tempsum/nn/loss.hpp"
#include "tempsum/nn/model.hpp"
#include "tempsum/nn/ops.hpp"

using namespace tempsum;
using namespace tempsum::nn;
using tempsum::testing::tiny_task;
using tempsum::testing::words;

namespace {

constexpr Family kFamilies[] = {Family::cnn_lstm, Family::tst_transformer, Family::tst_lstm};

Model tiny_model(Family family, const tempsum::testing::TinyTask& task, std::uint64_t seed = 7) {
  auto cfg = miniature_config(family, task.summary_vocab.size(), task.template_vocab.size());
  cfg.seed = seed;
  return Model(cfg, task.summary_vocab, task.template_vocab);
}

Batch full_batch(const Model& model, const tempsum::testing::TinyTask& task) {
  std::vector<const Example*> ptrs;
  for (const auto& e : task.examples) ptrs.push_back(&e);
  return model.make_batch(ptrs);
}

Matrix random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
  return m;
}

}  // namespace

TEST_SUITE("cnn encoder") {
  TEST_CASE("pooling lengths") {
    ModelConfig cfg;
    CHECK(cfg.cnn_output_length(28) == 7);
    CHECK(cfg.cnn_output_length(7) == 1);
    CHECK(cfg.cnn_output_length(3) == 0);
    CHECK(cfg.min_cnn_length() == 4);
  }

  TEST_CASE("too-short input is a shape error") {
    ModelConfig cfg;
    cfg.short_len = 3;
    cfg.summary_vocab = 10;
    cfg.template_vocab = 12;
    CHECK_THROWS_AS(cfg.validate(), ShapeError);
  }

  TEST_CASE("zero input with zero biases gives a zero context") {
    ModelConfig cfg;
    cfg.short_len = 7;
    cfg.long_len = 28;
    ParameterSet params;
    Initializer init(7);
    CnnEncoder enc(params, cfg, init);
    Tape tape(false);
    const RunContext ctx{&tape, nullptr, 0.0};
    const Matrix zeros_short = Matrix::Zero(2, 7);
    const Matrix zeros_long = Matrix::Zero(2, 28);
    const auto out = enc(ctx, zeros_short, zeros_long);
    REQUIRE(out.pooled.valid());
    CHECK(out.pooled.rows() == 2);
    CHECK(out.pooled.cols() == cfg.encoder_output);
    CHECK(out.pooled.value().cwiseAbs().maxCoeff() == 0.0);
    CHECK(out.positions == 1);
  }
}

TEST_SUITE("windowed attention") {
  TEST_CASE("length 24, window 12 is two diagonal blocks") {
    const Matrix m = attention_mask(24, 24, 12, false);
    for (Index i = 0; i < 24; ++i) {
      for (Index j = 0; j < 24; ++j) CHECK(m(i, j) == ((i / 12 == j / 12) ? 1.0 : 0.0));
    }
  }

  TEST_CASE("length 30 leaves a final block of 6") {
    const Matrix m = attention_mask(30, 30, 12, false);
    CHECK(m.row(29).sum() == 6.0);
    CHECK(m(29, 24) == 1.0);
    CHECK(m(29, 23) == 0.0);
    CHECK(m.row(0).sum() == 12.0);
  }

  TEST_CASE("causal windows stop at the diagonal") {
    const Matrix m = attention_mask(8, 8, 4, true);
    CHECK(m(5, 4) == 1.0);
    CHECK(m(5, 5) == 1.0);
    CHECK(m(5, 6) == 0.0);
    CHECK(m(5, 3) == 0.0);
  }

  TEST_CASE("rows are stochastic and a large window equals full attention") {
    std::mt19937_64 rng(3);
    const Matrix q = random_matrix(24, 8, rng);
    const Matrix k = random_matrix(24, 8, rng);
    const Matrix p = attention_probabilities(q, k, 12, false);
    for (Index i = 0; i < 24; ++i) CHECK(std::abs(p.row(i).sum() - 1.0) <= 1e-6);
    const Matrix full = attention_probabilities(q, k, 0, false);
    CHECK((attention_probabilities(q, k, 24, false) - full).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK((attention_probabilities(q, k, 100, false) - full).cwiseAbs().maxCoeff() <= 1e-6);
  }

  TEST_CASE("identical keys within a window give uniform weights") {
    std::mt19937_64 rng(4);
    const Matrix q = random_matrix(12, 4, rng);
    Matrix k(12, 4);
    k.rowwise() = random_matrix(1, 4, rng).row(0);
    const Matrix p = attention_probabilities(q, k, 6, false);
    for (Index i = 0; i < 12; ++i) {
      for (Index j = 0; j < 12; ++j) {
        const double expected = (i / 6 == j / 6) ? 1.0 / 6.0 : 0.0;
        CHECK(std::abs(p(i, j) - expected) <= 1e-12);
      }
    }
  }

  TEST_CASE("multihead attention matches the per-head probabilities") {
    std::mt19937_64 rng(5);
    const Index T = 10, H = 2, D = 3;
    const Matrix q = random_matrix(T, H * D, rng);
    const Matrix k = random_matrix(T, H * D, rng);
    const Matrix v = random_matrix(T, H * D, rng);
    Tape tape(false);
    const auto out = multihead_attention(tape.constant(q), tape.constant(k), tape.constant(v),
                                         {.batch = 1, .query_len = T, .key_len = T, .heads = H, .head_dim = D,
                                          .window = 4});
    for (Index h = 0; h < H; ++h) {
      const Matrix p = attention_probabilities(q.middleCols(h * D, D), k.middleCols(h * D, D), 4, false);
      const Matrix expected = p * v.middleCols(h * D, D);
      CHECK((out.value().middleCols(h * D, D) - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_SUITE("dual loss") {
  const auto task = tiny_task();
  const auto& tv = task.template_vocab;

  TEST_CASE("incorrect blanks") {
    const auto gold = words("In the past week , your A A was S .");
    CHECK(count_incorrect_blanks(gold, gold) == 0);
    CHECK(count_incorrect_blanks(words("In the past week , your A A was Q ."), gold) == 1);
    CHECK(count_incorrect_blanks(words("In the past week , your A"), gold) == 2);
    // Only the S after </s> is cut off.
    CHECK(count_incorrect_blanks(words("In the past week , your A A </s> S ."), gold) == 1);
    CHECK(count_incorrect_blanks(words("x x x x x x x x x x x"), gold) == 3);
  }

  TEST_CASE("perfect predictions give zero blanks and near-zero loss") {
    const std::vector<int> gold_s = {task.summary_vocab.id("intake"), task.summary_vocab.id("high"), text::kEosId};
    const std::vector<int> gold_t = {tv.id("A"), tv.id("S"), text::kEosId};
    Matrix ls = Matrix::Constant(3, task.summary_vocab.size(), -50.0);
    Matrix lt = Matrix::Constant(3, tv.size(), -50.0);
    for (int r = 0; r < 3; ++r) {
      ls(r, gold_s[static_cast<std::size_t>(r)]) = 50.0;
      lt(r, gold_t[static_cast<std::size_t>(r)]) = 50.0;
    }
    CHECK(count_incorrect_blanks(argmax_rows(lt), gold_t, tv) == 0);
    CHECK(dual_loss(ls, lt, gold_s, gold_t, tv) <= 1e-20);
  }

  TEST_CASE("m = 0 is exactly summary cross entropy; monotone in m") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix ls = random_matrix(4, task.summary_vocab.size(), rng);
      const Matrix lt = random_matrix(4, tv.size(), rng);
      const std::vector<int> gs = {4, 5, 6, 2};
      const std::vector<int> gt = {4, 5, tv.id("S"), 2};
      CHECK(dual_loss(ls, lt, gs, gt, 0.0) == sequence_cross_entropy(ls, gs));
      double previous = dual_loss(ls, lt, gs, gt, 0.0);
      CHECK(previous >= 0.0);
      for (double m : {1.0, 2.0, 3.0, 7.0}) {
        const double current = dual_loss(ls, lt, gs, gt, m);
        CHECK(current >= previous);
        previous = current;
      }
    }
  }

  TEST_CASE("two-position hand example") {
    // Uniform logits over V classes: each position costs log V.
    const int vs = task.summary_vocab.size();
    const int vt = tv.size();
    const Matrix ls = Matrix::Zero(2, vs);
    const Matrix lt = Matrix::Zero(2, vt);
    const std::vector<int> g = {4, 2};
    const double expected = 2.0 * std::log(static_cast<double>(vs)) + 3.0 * 2.0 * std::log(static_cast<double>(vt));
    CHECK(dual_loss(ls, lt, g, g, 3.0) == doctest::Approx(expected).epsilon(1e-12));
  }

  TEST_CASE("alignment errors") {
    const Matrix a = Matrix::Zero(2, 8);
    const Matrix b = Matrix::Zero(3, 8);
    const std::vector<int> g = {4, 2};
    CHECK_THROWS_AS(dual_loss(a, b, g, g, 1.0), AlignmentError);
    const std::vector<int> longer = {4, 4, 2};
    CHECK_THROWS_AS(dual_loss(a, a, longer, g, 1.0), AlignmentError);
  }
}

TEST_SUITE("model") {
  const auto task = tiny_task();

  TEST_CASE("gradient check on the miniature config") {
    for (const auto family : kFamilies) {
      CAPTURE(to_string(family));
      auto model = tiny_model(family, task);
      const auto batch = full_batch(model, task);
      const auto r = tempsum::testing::gradient_check(model, batch, 40, 11);
      CHECK(r.max_relative_error <= 1e-3);
    }
  }

  TEST_CASE("greedy decoding terminates, stays in vocabulary and is deterministic") {
    for (const auto family : kFamilies) {
      auto a = tiny_model(family, task);
      auto b = tiny_model(family, task);
      for (const auto& e : task.examples) {
        const auto ga = a.greedy_generate(e.x_short, e.x_long);
        const auto gb = b.greedy_generate(e.x_short, e.x_long);
        CHECK(ga.summary_ids == gb.summary_ids);
        CHECK(ga.template_ids == gb.template_ids);
        CHECK(ga.summary_ids.size() <= static_cast<std::size_t>(a.config().max_decode_len));
        for (int id : ga.summary_ids) CHECK((id >= 0 && id < task.summary_vocab.size()));
        for (int id : ga.template_ids) CHECK((id >= 0 && id < task.template_vocab.size()));
      }
    }
  }

  TEST_CASE("a single pair can be memorized") {
    for (const auto family : kFamilies) {
      CAPTURE(to_string(family));
      auto model = tiny_model(family, task);
      Adam adam(model.parameters(), {.learning_rate = 1e-2});
      const Example* one[] = {&task.examples[1]};
      const auto batch = model.make_batch(one);
      for (int step = 0; step < 300; ++step) {
        Tape tape;
        auto r = model.loss(tape, batch, nullptr);
        tape.backward(r.loss);
        adam.step();
      }
      const auto g = model.greedy_generate(task.examples[1].x_short, task.examples[1].x_long);
      CHECK(g.summary == words("intake low"));
      CHECK(g.template_tokens == words("A S"));
    }
  }

  TEST_CASE("template lookup maps lexicon words to placeholders") {
    const auto lookup = build_template_lookup(task.summary_vocab, task.template_vocab);
    CHECK(lookup[static_cast<std::size_t>(task.summary_vocab.id("high"))] == task.template_vocab.id("S"));
    CHECK(lookup[static_cast<std::size_t>(task.summary_vocab.id("intake"))] == task.template_vocab.id("A"));
    CHECK(lookup[text::kEosId] == text::kEosId);
  }

  TEST_CASE("fit_long pads on the left and keeps the most recent values") {
    const std::vector<double> x = {1, 2, 3};
    CHECK(fit_long(x, 5) == std::vector<double>{0, 0, 1, 2, 3});
    CHECK(fit_long(x, 2) == std::vector<double>{2, 3});
  }

  TEST_CASE("batches reject malformed gold sequences") {
    auto model = tiny_model(Family::cnn_lstm, task);
    Example e = task.examples[0];
    e.summary.pop_back();
    const Example* one[] = {&e};
    CHECK_THROWS_AS(model.make_batch(one), MalformedSequenceError);
    e = task.examples[0];
    e.x_short.pop_back();
    CHECK_THROWS_AS(model.make_batch(one), ShapeError);
  }
}

TEST_SUITE("checkpoint") {
  const auto task = tiny_task();

  TEST_CASE("round trip restores parameters and outputs") {
    for (const auto family : kFamilies) {
      auto model = tiny_model(family, task, 21);
      const auto path = tempsum::testing::scratch_dir("ckpt") / "m.ckpt";
      save_checkpoint(path, model, R"({"note":"x"})");
      const auto loaded = load_checkpoint(path, ExpectedVocabs{task.summary_vocab.hash(), task.template_vocab.hash()});
      CHECK(loaded.config() == model.config());
      REQUIRE(loaded.parameters().all().size() == model.parameters().all().size());
      for (std::size_t i = 0; i < model.parameters().all().size(); ++i) {
        CHECK(loaded.parameters().all()[i]->value == model.parameters().all()[i]->value);
      }
      const auto& e = task.examples[2];
      CHECK(loaded.greedy_generate(e.x_short, e.x_long).summary_ids ==
            model.greedy_generate(e.x_short, e.x_long).summary_ids);
      CHECK(checkpoint_metadata(path).find("\"note\"") != std::string::npos);
    }
  }

  TEST_CASE("vocabulary hash mismatch and corruption are rejected") {
    auto model = tiny_model(Family::cnn_lstm, task);
    const auto dir = tempsum::testing::scratch_dir("ckpt_bad");
    save_checkpoint(dir / "m.ckpt", model);
    CHECK_THROWS_AS(load_checkpoint(dir / "m.ckpt", ExpectedVocabs{std::string(40, 'a'), task.template_vocab.hash()}),
                    CheckpointError);
    auto bytes = tempsum::testing::slurp(dir / "m.ckpt");
    bytes.resize(bytes.size() - 16);
    tempsum::testing::spit(dir / "cut.ckpt", bytes);
    CHECK_THROWS_AS(load_checkpoint(dir / "cut.ckpt"), CheckpointError);
    tempsum::testing::spit(dir / "junk.ckpt", "not a checkpoint");
    CHECK_THROWS_AS(load_checkpoint(dir / "junk.ckpt"), CheckpointError);
  }
}

TEST_SUITE("adam") {
  TEST_CASE("first step moves each weight by the learning rate against its gradient sign") {
    ParameterSet params;
    auto& p = params.add("w", 1, 3);
    p.value << 1.0, -2.0, 0.5;
    p.grad << 0.3, -4.0, 0.0;
    Adam adam(params, {.learning_rate = 0.1, .clip_norm = 0.0});
    adam.step();
    CHECK(p.value(0, 0) == doctest::Approx(0.9));
    CHECK(p.value(0, 1) == doctest::Approx(-1.9));
    CHECK(p.value(0, 2) == doctest::Approx(0.5));
    CHECK(p.grad.cwiseAbs().maxCoeff() == 0.0);
    CHECK(adam.steps() == 1);
  }

  TEST_CASE("clipping reports the pre-clip norm") {
    ParameterSet params;
    auto& p = params.add("w", 1, 2);
    p.grad << 30.0, 40.0;
    Adam adam(params, {.learning_rate = 0.1, .clip_norm = 5.0});
    CHECK(adam.step() == doctest::Approx(50.0));
  }

  TEST_CASE("minimizes a quadratic") {
    ParameterSet params;
    auto& p = params.add("w", 1, 1);
    p.value(0, 0) = 3.0;
    Adam adam(params, {.learning_rate = 0.05});
    for (int i = 0; i < 500; ++i) {
      p.grad(0, 0) = 2.0 * (p.value(0, 0) - 1.0);
      adam.step();
    }
    CHECK(p.value(0, 0) == doctest::Approx(1.0).epsilon(1e-2));
  }
}
