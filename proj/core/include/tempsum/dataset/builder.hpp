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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempsum/ingest/series.hpp"
#include "tempsum/protoform/catalog.hpp"
#include "tempsum/protoform/similar_weeks.hpp"
#include "tempsum/text/codec.hpp"
#include "tempsum/text/vocab.hpp"

namespace tempsum::dataset {

using protoform::IndexRange;
using protoform::SummaryType;

struct TrainingInstance {
  std::string user_id;
  SummaryType summary_type = SummaryType::standard_eval_tw;
  std::vector<double> x_short;
  std::vector<double> x_long;
  text::TokenSequence y_summary;
  text::TokenSequence y_template;
  /// Pieces of x_long that x_short concatenates, 0-based half-open.
  std::vector<IndexRange> segments;

  /// Covering range of the segments.
  IndexRange window() const;

  friend bool operator==(const TrainingInstance&, const TrainingInstance&) = default;
};

struct UserStats {
  double mean = 0.0;
  double sd = 0.0;

  friend bool operator==(const UserStats&, const UserStats&) = default;
};

struct BuildOptions {
  /// Days between consecutive as-of points, walking back from the last day.
  std::size_t stride_days = 7;
  /// Stop after this many instances (users are visited in input order).
  std::optional<std::size_t> max_instances;
};

/// One summary type's corpus with its vocabularies.
struct Corpus {
  SummaryType summary_type = SummaryType::standard_eval_tw;
  std::vector<TrainingInstance> instances;
  text::Vocab summary_vocab;
  text::Vocab template_vocab;
  std::map<std::string, UserStats> user_stats;
  /// Per-user diagnostics, e.g. users that produced no instance.
  std::vector<std::string> warnings;
};

Corpus build_instances(std::span<const ingest::TimeSeries> series, SummaryType type, const BuildOptions& options = {});

/// Mean and population standard deviation.
UserStats compute_stats(std::span<const double> values);

/// z-scores x_short and x_long with `stats`; sd == 0 maps to zeros.
TrainingInstance normalize(const TrainingInstance& instance, const UserStats& stats);
TrainingInstance denormalize(const TrainingInstance& instance, const UserStats& stats);

struct DatasetSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  std::vector<std::string> train_users;
  std::vector<std::string> test_users;
};

/// Partitions users (not instances) with a seeded shuffle. The train side gets
/// round(ratio * users) users, clamped to [1, users - 1].
/// Throws SplitError with fewer than 2 users or a ratio outside (0, 1).
DatasetSplit split_dataset(std::span<const TrainingInstance> instances, double ratio, std::uint64_t seed);

struct DatasetManifest {
  SummaryType summary_type = SummaryType::standard_eval_tw;
  std::size_t instance_count = 0;
  std::uint64_t split_seed = 0;
  double split_ratio = 0.8;
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  std::map<std::string, UserStats> user_stats;
  text::Vocab summary_vocab;
  text::Vocab template_vocab;
  std::string catalog_hash;

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

DatasetManifest make_manifest(const Corpus& corpus, const DatasetSplit& split, double ratio, std::uint64_t seed);

// JSON-lines instances (windows written 1-based inclusive) and a JSON manifest.
void write_instances(const std::filesystem::path& path, std::span<const TrainingInstance> instances);
std::vector<TrainingInstance> read_instances(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);
DatasetManifest read_manifest(const std::filesystem::path& path);

}  // namespace tempsum::dataset
