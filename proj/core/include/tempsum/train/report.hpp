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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tempsum/train/evaluate.hpp"

namespace tempsum::train {

inline constexpr std::string_view kReportHeader = "summary_type,model,exact_match,token_acc,bleu,n_test";

struct ReportFiles {
  std::filesystem::path csv;         // one row per (type, model)
  std::filesystem::path table;       // types x (model, metric) plus an Average row
  std::filesystem::path json;
  std::filesystem::path loss_plot;
  std::filesystem::path metric_plot;
};

/// Writes the report files into `dir`. Throws DomainError on an empty list.
ReportFiles emit_report(std::span<const EvalReport> reports, const std::filesystem::path& dir);

/// Deterministic JSON (no timestamps) of the reports and per-model averages.
std::string reports_json(std::span<const EvalReport> reports);
std::vector<EvalReport> reports_from_json(std::string_view text);

struct ModelAverage {
  std::string model;
  double exact_match = 0.0;
  double token_accuracy = 0.0;
  double bleu = 0.0;
  std::size_t types = 0;
};

/// Arithmetic mean over summary types, one entry per model (first-seen order).
std::vector<ModelAverage> model_averages(std::span<const EvalReport> reports);

}  // namespace tempsum::train
