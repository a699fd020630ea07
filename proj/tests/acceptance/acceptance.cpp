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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bleu_oracle.hpp"
#include "commands.hpp"
#include "gradcheck.hpp"
#include "tempsum/dataset/builder.hpp"
#include "tempsum/ingest/synth.hpp"
#include "tempsum/nn/attention.hpp"
#include "tempsum/nn/loss.hpp"
#include "tempsum/nn/ops.hpp"
#include "tempsum/protoform/generate.hpp"
#include "tempsum/protoform/rules.hpp"
#include "tempsum/text/codec.hpp"
#include "tempsum/train/bleu.hpp"
#include "tempsum/train/evaluate.hpp"
#include "tempsum/train/report.hpp"
#include "tempsum/train/trainer.hpp"

namespace fs = std::filesystem;
using namespace tempsum;
using protoform::SummaryType;

namespace {

// Pinned tolerances and budgets.
constexpr double kOverfitTarget = 1.0;
constexpr std::size_t kOverfitInstances = 64;
constexpr std::size_t kOverfitMaxEpochs = 200;
constexpr double kOverfitBudgetSeconds = 600.0;

constexpr std::size_t kDeskInstances = 2000;
constexpr double kDeskMinExactMatch = 0.90;
constexpr double kDeskMinBleu = 0.97;
constexpr double kDeskBudgetSeconds = 30.0 * 60.0;

constexpr double kGradRelTolerance = 1e-3;
constexpr int kGradProbes = 100;

constexpr double kBleuTolerance = 1e-9;
constexpr int kBleuRandomPairs = 50;

constexpr double kAttentionTolerance = 1e-6;

constexpr std::uint64_t kSeed = 7;
constexpr double kSplitRatio = 0.8;

struct Hyper {
  double learning_rate;
  std::size_t batch_size;
  std::size_t epochs;
};

// Training settings per family for the desk-scale runs.
Hyper desk_hyper(nn::Family family) {
  switch (family) {
    case nn::Family::cnn_lstm: return {1e-3, 32, 60};
    case nn::Family::tst_lstm: return {1e-4, 8, 25};
    case nn::Family::tst_transformer: return {1e-4, 8, 25};
  }
  return {1e-3, 16, 25};
}

// Reduced scale for the 13-type ordering run.
constexpr std::size_t kOrderingInstances = 400;
constexpr std::size_t kOrderingEpochs = 12;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

std::vector<ingest::TimeSeries> synthetic_series(std::size_t users) {
  ingest::SynthConfig cfg;
  cfg.seed = kSeed;
  cfg.n_users = users;
  return ingest::build_series(ingest::synth_generate(cfg), ingest::Attribute::calorie_intake).series;
}

struct TypeRun {
  train::EvalReport report;
  double seconds = 0.0;
};

TypeRun train_and_score(const dataset::Corpus& corpus, nn::Family family, const Hyper& hyper, bool verbose) {
  const auto split = dataset::split_dataset(corpus.instances, kSplitRatio, kSeed);
  const auto train_set = train::to_examples(corpus.instances, corpus.user_stats, split.train);
  const auto test_set = train::to_examples(corpus.instances, corpus.user_stats, split.test);
  auto cfg = train::model_config_for(family, corpus.instances, corpus.summary_vocab, corpus.template_vocab);
  cfg.seed = kSeed;
  nn::Model model(cfg, corpus.summary_vocab, corpus.template_vocab);
  train::TrainConfig tc = train::TrainConfig::defaults(family);
  tc.learning_rate = hyper.learning_rate;
  tc.batch_size = hyper.batch_size;
  tc.epochs = hyper.epochs;
  tc.seed = kSeed;
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = train::train_model(model, train_set, tc, [&](const train::EpochRecord& r) {
    if (verbose) {
      std::cerr << "    " << protoform::to_string(corpus.summary_type) << ' ' << nn::to_string(family) << " epoch "
                << r.epoch << " loss " << fmt(r.loss, 4) << " (" << fmt(seconds_since(t0), 0) << "s)\n";
    }
  });
  TypeRun run;
  run.report = train::evaluate_model(model, test_set, corpus.summary_type);
  run.report.n_train = train_set.size();
  for (const auto& r : result.curve) run.report.loss_curve.push_back(r.loss);
  run.seconds = seconds_since(t0);
  return run;
}

// 1. Overfit sanity on 64 standard-evaluation (TW) instances.
Outcome overfit(bool verbose) {
  dataset::BuildOptions opts;
  opts.max_instances = kOverfitInstances;
  const auto corpus = dataset::build_instances(synthetic_series(20), SummaryType::standard_eval_tw, opts);
  const auto examples = train::to_examples(corpus.instances, corpus.user_stats);
  Outcome out{true, {}};
  for (const auto family : {nn::Family::cnn_lstm, nn::Family::tst_transformer, nn::Family::tst_lstm}) {
    auto cfg = train::model_config_for(family, corpus.instances, corpus.summary_vocab, corpus.template_vocab);
    cfg.seed = kSeed;
    nn::Model model(cfg, corpus.summary_vocab, corpus.template_vocab);
    train::TrainConfig tc;
    tc.learning_rate = 1e-3;
    tc.batch_size = 16;
    tc.epochs = kOverfitMaxEpochs;
    tc.seed = kSeed;
    tc.stop_at_train_accuracy = kOverfitTarget;
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = train::train_model(model, examples, tc, [&](const train::EpochRecord& r) {
      if (verbose) std::cerr << "    " << nn::to_string(family) << " epoch " << r.epoch << " acc "
                             << fmt(r.train_accuracy.value_or(0.0)) << '\n';
    });
    const double secs = seconds_since(t0);
    const double acc = train::exact_match(model, examples);
    const bool ok = examples.size() == kOverfitInstances && acc >= kOverfitTarget && secs < kOverfitBudgetSeconds;
    out.pass = out.pass && ok;
    out.detail += std::string(nn::to_string(family)) + " acc " + fmt(acc) + " @" + std::to_string(result.curve.size()) +
                  "ep " + fmt(secs, 0) + "s; ";
  }
  return out;
}

// 2. Desk-scale generalization on the four simple types.
Outcome desk_scale(bool verbose, const fs::path& out_dir) {
  const auto series = synthetic_series(130);
  Outcome out{true, {}};
  std::vector<train::EvalReport> reports;
  for (const auto type : {SummaryType::standard_eval_tw, SummaryType::standard_eval_stw, SummaryType::day_based_pattern,
                          SummaryType::if_then_pattern}) {
    dataset::BuildOptions opts;
    opts.max_instances = kDeskInstances;
    const auto corpus = dataset::build_instances(series, type, opts);
    double type_seconds = 0.0;
    bool type_ok = corpus.instances.size() == kDeskInstances;
    std::string detail;
    for (const auto family : {nn::Family::cnn_lstm, nn::Family::tst_lstm}) {
      const auto run = train_and_score(corpus, family, desk_hyper(family), verbose);
      type_seconds += run.seconds;
      type_ok = type_ok && run.report.exact_match >= kDeskMinExactMatch && run.report.bleu >= kDeskMinBleu;
      detail += std::string(nn::to_string(family)) + " em " + fmt(run.report.exact_match) + " bleu " +
                fmt(run.report.bleu) + " ";
      reports.push_back(run.report);
    }
    type_ok = type_ok && type_seconds <= kDeskBudgetSeconds;
    out.pass = out.pass && type_ok;
    out.detail += std::string(protoform::to_string(type)) + ": " + detail + fmt(type_seconds, 0) + "s" +
                  (type_ok ? "" : " [miss]") + "; ";
    if (verbose) std::cerr << "  " << out.detail << '\n';
  }
  if (!out_dir.empty()) train::emit_report(reports, out_dir / "desk_scale");
  return out;
}

// 3. TST-LSTM average exact match >= TST-Transformer over all 13 types.
Outcome ordering(bool verbose, const fs::path& out_dir) {
  const auto series = synthetic_series(60);
  std::vector<train::EvalReport> reports;
  for (const auto type : protoform::kAllSummaryTypes) {
    dataset::BuildOptions opts;
    opts.max_instances = kOrderingInstances;
    const auto corpus = dataset::build_instances(series, type, opts);
    for (const auto family : {nn::Family::tst_transformer, nn::Family::tst_lstm}) {
      auto hyper = desk_hyper(family);
      hyper.epochs = kOrderingEpochs;
      const auto run = train_and_score(corpus, family, hyper, false);
      if (verbose) {
        std::cerr << "  " << protoform::to_string(type) << ' ' << nn::to_string(family) << " em "
                  << fmt(run.report.exact_match) << " (" << fmt(run.seconds, 0) << "s)\n";
      }
      reports.push_back(run.report);
    }
  }
  if (!out_dir.empty()) train::emit_report(reports, out_dir / "ordering");
  double lstm = 0.0, transformer = 0.0;
  for (const auto& a : train::model_averages(reports)) {
    if (a.model == "tst_lstm") lstm = a.exact_match;
    if (a.model == "tst_transformer") transformer = a.exact_match;
  }
  return {lstm >= transformer, "tst_lstm " + fmt(lstm) + " vs tst_transformer " + fmt(transformer)};
}

// 4. Loss reductions and the finite-difference gradient check.
Outcome loss_correctness() {
  const auto task = testing::tiny_task();
  std::mt19937_64 rng(kSeed);
  std::normal_distribution<double> normal(0.0, 1.0);
  bool reduces = true, monotone = true;
  for (int trial = 0; trial < 100; ++trial) {
    nn::Matrix ls(4, task.summary_vocab.size()), lt(4, task.template_vocab.size());
    for (Eigen::Index i = 0; i < ls.size(); ++i) ls.data()[i] = 3.0 * normal(rng);
    for (Eigen::Index i = 0; i < lt.size(); ++i) lt.data()[i] = 3.0 * normal(rng);
    const std::vector<int> gs = {4, 5, 6, text::kEosId};
    const std::vector<int> gt = {4, 5, task.template_vocab.id("S"), text::kEosId};
    reduces = reduces && nn::dual_loss(ls, lt, gs, gt, 0.0) == nn::sequence_cross_entropy(ls, gs);
    double previous = nn::dual_loss(ls, lt, gs, gt, 0.0);
    for (double m = 1.0; m <= 6.0; m += 1.0) {
      const double current = nn::dual_loss(ls, lt, gs, gt, m);
      monotone = monotone && current >= previous;
      previous = current;
    }
  }
  double worst = 0.0;
  int probes = 0;
  for (const auto family : {nn::Family::cnn_lstm, nn::Family::tst_transformer, nn::Family::tst_lstm}) {
    auto cfg = nn::miniature_config(family, task.summary_vocab.size(), task.template_vocab.size());
    cfg.seed = kSeed;
    nn::Model model(cfg, task.summary_vocab, task.template_vocab);
    std::vector<const nn::Example*> ptrs;
    for (const auto& e : task.examples) ptrs.push_back(&e);
    const auto r = testing::gradient_check(model, model.make_batch(ptrs), kGradProbes, kSeed);
    worst = std::max(worst, r.max_relative_error);
    probes += r.probes;
  }
  std::ostringstream d;
  d << "m=0 " << (reduces ? "exact" : "differs") << ", monotone " << (monotone ? "yes" : "no") << ", max rel err "
    << std::scientific << std::setprecision(2) << worst << " over " << probes << " probes";
  return {reduces && monotone && worst <= kGradRelTolerance, d.str()};
}

// 5. BLEU against hand and brute-force oracles.
Outcome bleu_oracle() {
  using train::Sentence;
  const std::vector<Sentence> corpus = {{"In", "the", "past", "week", ",", "your", "calorie", "intake", "was", "high", "."}};
  const bool identical = std::abs(train::bleu_score(corpus, corpus) - 1.0) <= kBleuTolerance;
  const Sentence cand(7, "the");
  const Sentence ref = {"the", "cat", "is", "on", "the", "mat"};
  const double p1 = train::modified_precision(cand, ref, 1);
  const bool clipped = std::abs(p1 - 2.0 / 7.0) <= kBleuTolerance;
  std::mt19937_64 rng(kSeed);
  double worst = 0.0;
  for (int k = 0; k < kBleuRandomPairs; ++k) {
    const std::vector<Sentence> c = {testing::random_sentence(rng)};
    const std::vector<Sentence> r = {testing::random_sentence(rng)};
    worst = std::max(worst, std::abs(train::bleu_score(c, r) - testing::brute_bleu(c, r)));
  }
  std::ostringstream d;
  d << "identical " << (identical ? "1.0" : "not 1.0") << ", p1 " << std::setprecision(12) << p1 << ", max |diff| "
    << std::scientific << std::setprecision(2) << worst;
  return {identical && clipped && worst <= kBleuTolerance, d.str()};
}

// 6. Round trip of every generated summary and if-then confidences.
Outcome protoform_consistency() {
  const auto series = synthetic_series(50);
  std::size_t pairs = 0, good = 0, rules = 0, rules_ok = 0;
  for (const auto& s : series) {
    const protoform::SeriesContext ctx(s);
    for (const auto type : protoform::kAllSummaryTypes) {
      const std::size_t min_history = protoform::rule_for(type).min_history_days;
      for (std::size_t as_of = min_history - 1; as_of < s.size(); ++as_of) {
        for (const auto& inst : protoform::generate_summary(type, ctx, as_of)) {
          ++pairs;
          const bool ok = text::instantiate(inst.template_tokens, inst.slot_fills) == inst.summary_tokens &&
                          protoform::templatize(inst) == inst.template_tokens;
          good += ok ? 1 : 0;
        }
      }
    }
    const auto& levels = ctx.levels();
    for (const auto& rule : protoform::mine_if_then_rules(levels, 1, 0.0, 3)) {
      ++rules;
      const std::size_t k = rule.antecedent.size();
      std::size_t occ = 0, sup = 0;
      for (std::size_t i = 0; i + k < levels.size(); ++i) {
        if (!std::equal(rule.antecedent.begin(), rule.antecedent.end(), levels.begin() + static_cast<long>(i))) continue;
        ++occ;
        if (levels[i + k] == rule.consequent) ++sup;
      }
      const double conf = occ ? static_cast<double>(sup) / static_cast<double>(occ) : 0.0;
      rules_ok += (occ == rule.occurrences && sup == rule.support && conf == rule.confidence) ? 1 : 0;
    }
  }
  return {pairs > 0 && good == pairs && rules > 0 && rules_ok == rules,
          std::to_string(good) + "/" + std::to_string(pairs) + " pairs round-trip, " + std::to_string(rules_ok) + "/" +
              std::to_string(rules) + " rule confidences match"};
}

// 7. Windowed attention mask and probabilities.
Outcome windowed_attention() {
  const nn::Matrix mask = nn::attention_mask(24, 24, 12, false);
  bool blocks = true;
  for (Eigen::Index i = 0; i < 24; ++i) {
    for (Eigen::Index j = 0; j < 24; ++j) blocks = blocks && mask(i, j) == ((i / 12 == j / 12) ? 1.0 : 0.0);
  }
  std::mt19937_64 rng(kSeed);
  std::normal_distribution<double> normal(0.0, 1.0);
  nn::Matrix q(24, 8), k(24, 8);
  for (Eigen::Index i = 0; i < q.size(); ++i) q.data()[i] = normal(rng);
  for (Eigen::Index i = 0; i < k.size(); ++i) k.data()[i] = normal(rng);
  const nn::Matrix p = nn::attention_probabilities(q, k, 12, false);
  const double row_err = (p.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double leak = (p.array() * (1.0 - mask.array())).abs().maxCoeff();
  const double full_err =
      (nn::attention_probabilities(q, k, 24, false) - nn::attention_probabilities(q, k, 0, false)).cwiseAbs().maxCoeff();
  std::ostringstream d;
  d << "block-diagonal " << (blocks ? "yes" : "no") << ", row-sum err " << std::scientific << std::setprecision(2)
    << row_err << ", off-block mass " << leak << ", full-window diff " << full_err;
  return {blocks && row_err <= kAttentionTolerance && leak == 0.0 && full_err <= kAttentionTolerance, d.str()};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(std::vector<std::string> args, std::ostream& err) {
  args.insert(args.begin(), "tempsum");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  return cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

// 8. Two seeded smoke pipelines give identical metric files.
Outcome determinism(const fs::path& work) {
  std::vector<std::string> metrics;
  std::ostringstream err;
  for (const char* run : {"run_a", "run_b"}) {
    const auto dir = work / run;
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto s = dir.string();
    const std::vector<std::vector<std::string>> steps = {
        {"synth", "--users", "16", "--days", "84", "--seed", "7", "-o", s + "/logs.csv"},
        {"ingest", s + "/logs.csv", "-o", s + "/store.json"},
        {"dataset", s + "/store.json", "-t", "standard_eval_stw", "--seed", "7", "-o", s + "/data"},
        {"train", s + "/data", "-f", "tst_lstm", "--epochs", "2", "--batch-size", "16", "--lr", "1e-3", "--seed", "7",
         "-o", s + "/model"},
        {"eval", s + "/model/model.ckpt", s + "/data", "-o", s + "/eval"},
        {"report", s + "/eval", "-o", s + "/report"}};
    for (const auto& step : steps) {
      if (cli(step, err) != 0) return {false, "step '" + step.front() + "' failed: " + err.str()};
    }
    metrics.push_back(read_file(dir / "eval" / "eval_report.json") + read_file(dir / "report" / "metrics.json"));
  }
  const bool same = !metrics[0].empty() && metrics[0] == metrics[1];
  return {same, same ? "eval_report.json and metrics.json identical" : "metric files differ"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tempsum acceptance checks"};
  std::vector<int> only;
  bool verbose = false;
  std::string work_dir = (fs::temp_directory_path() / "tempsum_acceptance").string();
  app.add_option("-c,--criterion", only, "Run only these criteria (1-8), repeatable")->check(CLI::Range(1, 8));
  app.add_flag("-v,--verbose", verbose, "Progress on stderr");
  app.add_option("--work-dir", work_dir, "Scratch directory for pipeline runs and reports");
  CLI11_PARSE(app, argc, argv);

  const fs::path work(work_dir);
  fs::create_directories(work);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"overfit sanity", [&] { return overfit(verbose); }},
      {"desk-scale generalization", [&] { return desk_scale(verbose, work); }},
      {"relative ordering", [&] { return ordering(verbose, work); }},
      {"loss correctness", [] { return loss_correctness(); }},
      {"BLEU oracle", [] { return bleu_oracle(); }},
      {"protoform consistency", [] { return protoform_consistency(); }},
      {"windowed attention", [] { return windowed_attention(); }},
      {"determinism", [&] { return determinism(work); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << id << "] " << criteria[i].first << " - " << o.detail << " ("
              << fmt(seconds_since(t0), 1) << "s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
