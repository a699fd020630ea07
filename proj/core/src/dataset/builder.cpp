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

#include "tempsum/dataset/builder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "tempsum/error.hpp"
#include "tempsum/protoform/generate.hpp"

namespace tempsum::dataset {

IndexRange TrainingInstance::window() const {
  if (segments.empty()) return {};
  IndexRange r = segments.front();
  for (const auto& s : segments) {
    r.begin = std::min(r.begin, s.begin);
    r.end = std::max(r.end, s.end);
  }
  return r;
}

UserStats compute_stats(std::span<const double> values) {
  if (values.empty()) return {};
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / n)};
}

namespace {

std::vector<double> zscore(const std::vector<double>& v, const UserStats& s) {
  std::vector<double> out(v.size(), 0.0);
  if (s.sd <= 0.0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - s.mean) / s.sd;
  return out;
}

std::vector<double> unzscore(const std::vector<double>& v, const UserStats& s) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * s.sd + s.mean;
  return out;
}

}  // namespace

TrainingInstance normalize(const TrainingInstance& instance, const UserStats& stats) {
  TrainingInstance out = instance;
  out.x_short = zscore(instance.x_short, stats);
  out.x_long = zscore(instance.x_long, stats);
  return out;
}

TrainingInstance denormalize(const TrainingInstance& instance, const UserStats& stats) {
  TrainingInstance out = instance;
  out.x_short = unzscore(instance.x_short, stats);
  out.x_long = unzscore(instance.x_long, stats);
  return out;
}

Corpus build_instances(std::span<const ingest::TimeSeries> series, SummaryType type, const BuildOptions& options) {
  if (options.stride_days == 0) throw ConfigError("stride_days must be positive");
  const auto& rule = protoform::rule_for(type);
  Corpus corpus;
  corpus.summary_type = type;

  struct Pending {
    TrainingInstance instance;
    std::vector<std::string> summary;
    std::vector<std::string> template_tokens;
  };
  std::vector<Pending> pending;
  std::set<std::tuple<std::string, std::size_t, std::size_t>> seen;

  for (const auto& s : series) {
    if (options.max_instances && pending.size() >= *options.max_instances) break;
    if (s.size() < rule.min_history_days) {
      corpus.warnings.push_back("user " + s.user_id + ": " + std::to_string(s.size()) + " days, " +
                                std::string(protoform::to_string(type)) + " needs " +
                                std::to_string(rule.min_history_days));
      continue;
    }
    const protoform::SeriesContext ctx(s);
    corpus.user_stats[s.user_id] = compute_stats(s.values);
    std::vector<Pending> user_pending;
    for (std::size_t as_of = s.size() - 1;; as_of -= options.stride_days) {
      std::vector<protoform::SummaryInstance> summaries;
      try {
        summaries = protoform::generate_summary(type, ctx, as_of);
      } catch (const InsufficientHistoryError&) {
      }
      for (auto& summary : summaries) {
        Pending p;
        p.instance.user_id = s.user_id;
        p.instance.summary_type = type;
        p.instance.x_long = s.values;
        for (const auto& seg : summary.segments) {
          p.instance.x_short.insert(p.instance.x_short.end(), s.values.begin() + static_cast<long>(seg.begin),
                                    s.values.begin() + static_cast<long>(seg.end));
        }
        p.instance.segments = summary.segments;
        const auto w = p.instance.window();
        if (!seen.emplace(s.user_id, w.begin, w.end).second) continue;
        // Round-trip check: the template must instantiate back to the summary.
        if (text::instantiate(summary.template_tokens, summary.slot_fills) != summary.summary_tokens) {
          throw ConsistencyError("summary/template pair of user " + s.user_id + " does not round-trip");
        }
        p.summary = std::move(summary.summary_tokens);
        p.template_tokens = std::move(summary.template_tokens);
        user_pending.push_back(std::move(p));
      }
      if (as_of < options.stride_days || as_of - options.stride_days + 1 < rule.min_history_days) break;
    }
    if (user_pending.empty()) {
      corpus.warnings.push_back("user " + s.user_id + ": no " + std::string(protoform::to_string(type)) +
                                " summary over " + std::to_string(s.size()) + " days");
    }
    // Oldest window first within a user.
    std::reverse(user_pending.begin(), user_pending.end());
    for (auto& p : user_pending) {
      if (options.max_instances && pending.size() >= *options.max_instances) break;
      pending.push_back(std::move(p));
    }
  }
  if (pending.empty()) {
    corpus.warnings.push_back("no " + std::string(protoform::to_string(type)) + " instance from " +
                              std::to_string(series.size()) + " series");
  }

  std::vector<std::vector<std::string>> sentences;
  sentences.reserve(pending.size());
  for (const auto& p : pending) sentences.push_back(p.summary);
  corpus.summary_vocab = text::Vocab::build(sentences);
  corpus.template_vocab = text::Vocab::template_vocab(corpus.summary_vocab);
  corpus.instances.reserve(pending.size());
  for (auto& p : pending) {
    p.instance.y_summary = text::encode(p.summary, corpus.summary_vocab);
    p.instance.y_template = text::encode(p.template_tokens, corpus.template_vocab);
    corpus.instances.push_back(std::move(p.instance));
  }
  return corpus;
}

DatasetSplit split_dataset(std::span<const TrainingInstance> instances, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw SplitError("split ratio must lie in (0, 1)");
  std::set<std::string> user_set;
  for (const auto& inst : instances) user_set.insert(inst.user_id);
  std::vector<std::string> users(user_set.begin(), user_set.end());
  if (users.size() < 2) throw SplitError("split needs at least 2 users, have " + std::to_string(users.size()));

  std::mt19937_64 rng(seed);
  for (std::size_t i = users.size() - 1; i > 0; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i);
    std::swap(users[i], users[pick(rng)]);
  }
  const auto n = static_cast<long>(users.size());
  const long n_train = std::clamp(std::lround(ratio * static_cast<double>(n)), 1L, n - 1);

  DatasetSplit split;
  split.train_users.assign(users.begin(), users.begin() + n_train);
  split.test_users.assign(users.begin() + n_train, users.end());
  std::sort(split.train_users.begin(), split.train_users.end());
  std::sort(split.test_users.begin(), split.test_users.end());
  const std::set<std::string> train_set(split.train_users.begin(), split.train_users.end());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    (train_set.contains(instances[i].user_id) ? split.train : split.test).push_back(i);
  }
  return split;
}

DatasetManifest make_manifest(const Corpus& corpus, const DatasetSplit& split, double ratio, std::uint64_t seed) {
  DatasetManifest m;
  m.summary_type = corpus.summary_type;
  m.instance_count = corpus.instances.size();
  m.split_seed = seed;
  m.split_ratio = ratio;
  m.train = split.train;
  m.test = split.test;
  m.user_stats = corpus.user_stats;
  m.summary_vocab = corpus.summary_vocab;
  m.template_vocab = corpus.template_vocab;
  m.catalog_hash = protoform::catalog_hash();
  return m;
}

}  // namespace tempsum::dataset
