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

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "bleu_oracle.hpp"
#include "gradcheck.hpp"
#include "test_support.hpp"
#include "tempsum/error.hpp"
#include "tempsum/train/bleu.hpp"
#include "tempsum/train/evaluate.hpp"
#include "tempsum/train/report.hpp"
#include "tempsum/train/trainer.hpp"

using namespace tempsum;
using namespace tempsum::train;
using tempsum::testing::tiny_task;
using tempsum::testing::words;

namespace {

nn::Model tiny_model(nn::Family family, const tempsum::testing::TinyTask& task) {
  return nn::Model(nn::miniature_config(family, task.summary_vocab.size(), task.template_vocab.size()),
                   task.summary_vocab, task.template_vocab);
}

std::vector<nn::Matrix> snapshot(const nn::Model& model) {
  std::vector<nn::Matrix> out;
  for (const auto* p : model.parameters().all()) out.push_back(p->value);
  return out;
}

EvalReport report(protoform::SummaryType type, const std::string& model, double em) {
  EvalReport r;
  r.summary_type = type;
  r.model = model;
  r.exact_match = em;
  r.token_accuracy = std::min(1.0, em + 0.05);
  r.bleu = std::min(1.0, em + 0.1);
  r.n_test = 10;
  r.loss_curve = {3.0, 2.0, 1.5};
  return r;
}

}  // namespace

TEST_SUITE("bleu") {
  TEST_CASE("identical corpora score 1") {
    const std::vector<Sentence> c = {words("In the past week , your calorie intake was high ."), words("a b c d e")};
    CHECK(bleu_score(c, c) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("clipped unigram precision is 2/7") {
    const auto cand = words("the the the the the the the");
    const auto ref = words("the cat is on the mat");
    CHECK(std::abs(modified_precision(cand, ref, 1) - 2.0 / 7.0) <= 1e-9);
  }

  TEST_CASE("no overlap falls back to the smoothed precisions") {
    // Zero matches over 4, 3, 2, 1 n-grams: (1/5 * 1/4 * 1/3 * 1/2)^(1/4).
    const std::vector<Sentence> c = {words("a b c d")};
    const std::vector<Sentence> r = {words("w x y z")};
    CHECK(bleu_score(c, r) == doctest::Approx(std::pow(1.0 / 120.0, 0.25)).epsilon(1e-12));
  }

  TEST_CASE("sentence order does not change corpus BLEU") {
    std::vector<Sentence> c = {words("a b c d"), words("the week was high"), words("x y")};
    std::vector<Sentence> r = {words("a b c e"), words("the week was low"), words("x y z")};
    const double before = bleu_score(c, r);
    std::swap(c[0], c[2]);
    std::swap(r[0], r[2]);
    CHECK(bleu_score(c, r) == doctest::Approx(before).epsilon(1e-12));
  }

  TEST_CASE("short candidates skip missing orders") {
    const std::vector<Sentence> c = {words("a b")};
    CHECK(bleu_score(c, c) == doctest::Approx(1.0));
    const std::vector<Sentence> empty_cand = {Sentence{}};
    CHECK(bleu_score(empty_cand, c) == 0.0);
  }

  TEST_CASE("errors") {
    const std::vector<Sentence> none;
    CHECK_THROWS_AS(bleu_score(none, none), DomainError);
    const std::vector<Sentence> one = {words("a")};
    const std::vector<Sentence> two = {words("a"), words("b")};
    CHECK_THROWS_AS(bleu_score(one, two), DomainError);
  }

  TEST_CASE("agrees with a brute-force counter") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 50; ++k) {
      const std::vector<Sentence> c = {tempsum::testing::random_sentence(rng)};
      const std::vector<Sentence> r = {tempsum::testing::random_sentence(rng)};
      CHECK(std::abs(bleu_score(c, r) - tempsum::testing::brute_bleu(c, r)) <= 1e-9);
      for (int n = 1; n <= 4; ++n) {
        const double total = c[0].size() >= static_cast<std::size_t>(n) ? static_cast<double>(c[0].size() - n + 1) : 0;
        const double expected =
            total == 0 ? 0.0 : static_cast<double>(tempsum::testing::brute_clipped_matches(c[0], r[0], n)) / total;
        CHECK(std::abs(modified_precision(c[0], r[0], n) - expected) <= 1e-9);
      }
    }
  }
}

TEST_SUITE("metrics") {
  TEST_CASE("token accuracy") {
    CHECK(token_accuracy(words("a b c"), words("a b c")) == 1.0);
    CHECK(token_accuracy(words("a x c"), words("a b c")) == doctest::Approx(2.0 / 3.0));
    CHECK(token_accuracy(words("a b"), words("a b c d")) == doctest::Approx(0.5));
    CHECK(token_accuracy(Sentence{}, Sentence{}) == 1.0);
  }

  TEST_CASE("evaluation is deterministic and exact match never exceeds token accuracy") {
    const auto task = tiny_task();
    for (const auto family : {nn::Family::cnn_lstm, nn::Family::tst_transformer, nn::Family::tst_lstm}) {
      const auto model = tiny_model(family, task);
      std::vector<Prediction> preds;
      const auto a = evaluate_model(model, task.examples, protoform::SummaryType::standard_eval_tw, &preds, 3);
      const auto b = evaluate_model(model, task.examples, protoform::SummaryType::standard_eval_tw);
      CHECK(a.exact_match == b.exact_match);
      CHECK(a.token_accuracy == b.token_accuracy);
      CHECK(a.bleu == b.bleu);
      CHECK(a.exact_match <= a.token_accuracy);
      CHECK(a.n_test == task.examples.size());
      CHECK(preds.size() == task.examples.size());
      CHECK(a.exact_match == exact_match(model, task.examples));
    }
    const auto model = tiny_model(nn::Family::cnn_lstm, task);
    CHECK_THROWS_AS(evaluate_model(model, {}, protoform::SummaryType::standard_eval_tw), DomainError);
  }
}

TEST_SUITE("train_model") {
  const auto task = tiny_task();

  TEST_CASE("zero epochs leaves the weights untouched") {
    auto model = tiny_model(nn::Family::cnn_lstm, task);
    const auto before = snapshot(model);
    TrainConfig cfg;
    cfg.epochs = 0;
    const auto result = train_model(model, task.examples, cfg);
    CHECK(result.curve.empty());
    CHECK(result.kept_epoch == 0);
    CHECK(snapshot(model) == before);
  }

  TEST_CASE("same seed, same curve and weights") {
    for (const auto family : {nn::Family::cnn_lstm, nn::Family::tst_transformer}) {
      auto a = tiny_model(family, task);
      auto b = tiny_model(family, task);
      TrainConfig cfg;
      cfg.epochs = 3;
      cfg.batch_size = 2;
      cfg.learning_rate = 1e-2;
      const auto ra = train_model(a, task.examples, cfg);
      const auto rb = train_model(b, task.examples, cfg);
      REQUIRE(ra.curve.size() == 3);
      for (std::size_t i = 0; i < 3; ++i) CHECK(ra.curve[i].loss == rb.curve[i].loss);
      CHECK(snapshot(a) == snapshot(b));
    }
  }

  TEST_CASE("loss falls and early stopping keeps the successful weights") {
    auto model = tiny_model(nn::Family::cnn_lstm, task);
    TrainConfig cfg;
    cfg.epochs = 400;
    cfg.batch_size = 4;
    cfg.learning_rate = 1e-2;
    cfg.stop_at_train_accuracy = 1.0;
    const auto result = train_model(model, task.examples, cfg);
    CHECK(result.stopped_early);
    CHECK(result.kept_epoch == result.curve.size());
    CHECK(result.curve.back().loss < result.curve.front().loss);
    CHECK(exact_match(model, task.examples) == 1.0);
  }

  TEST_CASE("a non-finite loss raises a divergence error") {
    auto model = tiny_model(nn::Family::cnn_lstm, task);
    model.parameters().all().front()->value(0, 0) = std::numeric_limits<double>::quiet_NaN();
    TrainConfig cfg;
    cfg.epochs = 1;
    try {
      train_model(model, task.examples, cfg);
      FAIL("expected divergence");
    } catch (const DivergenceError& e) {
      CHECK(std::string(e.what()).find("seed 7") != std::string::npos);
    }
  }

  TEST_CASE("bad configs") {
    TrainConfig cfg;
    cfg.batch_size = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = TrainConfig{};
    cfg.learning_rate = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK(TrainConfig::defaults(nn::Family::cnn_lstm).batch_size == 180);
    CHECK(TrainConfig::defaults(nn::Family::tst_lstm).epochs == 30);
  }
}

TEST_SUITE("report") {
  TEST_CASE("table has one row per type plus the average") {
    std::vector<EvalReport> reports;
    double i = 0.0;
    for (const auto type : protoform::kAllSummaryTypes) {
      reports.push_back(report(type, "cnn_lstm", 0.5 + 0.03 * i));
      reports.push_back(report(type, "tst_lstm", 0.4 + 0.04 * i));
      i += 1.0;
    }
    const auto dir = tempsum::testing::scratch_dir("report");
    const auto files = emit_report(reports, dir);
    const auto table = tempsum::testing::slurp(files.table);
    CHECK(std::count(table.begin(), table.end(), '\n') == 1 + 13 + 1);
    const auto csv = tempsum::testing::slurp(files.csv);
    CHECK(csv.rfind(std::string(kReportHeader), 0) == 0);
    CHECK(std::filesystem::file_size(files.loss_plot) > 0);
    CHECK(std::filesystem::file_size(files.metric_plot) > 0);

    const auto averages = model_averages(reports);
    REQUIRE(averages.size() == 2);
    double sum = 0.0;
    for (const auto& r : reports) {
      if (r.model == "cnn_lstm") sum += r.exact_match;
    }
    CHECK(averages[0].exact_match == doctest::Approx(sum / 13.0));
    CHECK(averages[0].types == 13);

    const auto back = reports_from_json(reports_json(reports));
    REQUIRE(back.size() == reports.size());
    CHECK(back[5].exact_match == reports[5].exact_match);
    CHECK(back[5].loss_curve == reports[5].loss_curve);
    CHECK(reports_json(back) == reports_json(reports));
  }

  TEST_CASE("empty input") {
    CHECK_THROWS_AS(emit_report({}, tempsum::testing::scratch_dir("report_empty")), DomainError);
  }
}
