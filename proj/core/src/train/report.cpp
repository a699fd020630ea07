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

#include "tempsum/train/report.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include <json.hpp>

#include "tempsum/error.hpp"
#include "tempsum/train/plot.hpp"

namespace tempsum::train {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::string> model_order(std::span<const EvalReport> reports) {
  std::vector<std::string> models;
  for (const auto& r : reports) {
    if (std::find(models.begin(), models.end(), r.model) == models.end()) models.push_back(r.model);
  }
  return models;
}

std::vector<protoform::SummaryType> type_order(std::span<const EvalReport> reports) {
  std::vector<protoform::SummaryType> types;
  for (auto t : protoform::kAllSummaryTypes) {
    if (std::any_of(reports.begin(), reports.end(), [t](const auto& r) { return r.summary_type == t; })) {
      types.push_back(t);
    }
  }
  return types;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace

std::vector<ModelAverage> model_averages(std::span<const EvalReport> reports) {
  std::vector<ModelAverage> out;
  for (const auto& m : model_order(reports)) {
    ModelAverage a;
    a.model = m;
    for (const auto& r : reports) {
      if (r.model != m) continue;
      a.exact_match += r.exact_match;
      a.token_accuracy += r.token_accuracy;
      a.bleu += r.bleu;
      ++a.types;
    }
    const double n = static_cast<double>(a.types);
    a.exact_match /= n;
    a.token_accuracy /= n;
    a.bleu /= n;
    out.push_back(a);
  }
  return out;
}

std::string reports_json(std::span<const EvalReport> reports) {
  nlohmann::ordered_json j;
  j["bleu"] = "corpus BLEU-4, single reference, brevity penalty, 1/(t+1) for zero-match orders";
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    rows.push_back({{"summary_type", protoform::to_string(r.summary_type)},
                    {"model", r.model},
                    {"exact_match", r.exact_match},
                    {"token_acc", r.token_accuracy},
                    {"bleu", r.bleu},
                    {"n_test", r.n_test},
                    {"n_train", r.n_train},
                    {"loss_curve", r.loss_curve}});
  }
  j["reports"] = rows;
  auto avg = nlohmann::ordered_json::array();
  for (const auto& a : model_averages(reports)) {
    avg.push_back({{"model", a.model},
                   {"exact_match", a.exact_match},
                   {"token_acc", a.token_accuracy},
                   {"bleu", a.bleu},
                   {"types", a.types}});
  }
  j["average"] = avg;
  return j.dump(2) + "\n";
}

std::vector<EvalReport> reports_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    std::vector<EvalReport> out;
    for (const auto& r : j.at("reports")) {
      EvalReport e;
      e.summary_type = protoform::summary_type_from_string(r.at("summary_type").get<std::string>());
      e.model = r.at("model").get<std::string>();
      e.exact_match = r.at("exact_match").get<double>();
      e.token_accuracy = r.at("token_acc").get<double>();
      e.bleu = r.at("bleu").get<double>();
      e.n_test = r.at("n_test").get<std::size_t>();
      e.n_train = r.value("n_train", std::size_t{0});
      e.loss_curve = r.value("loss_curve", std::vector<double>{});
      out.push_back(std::move(e));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad metrics json: ") + e.what());
  }
}

ReportFiles emit_report(std::span<const EvalReport> reports, const std::filesystem::path& dir) {
  if (reports.empty()) throw DomainError("report needs at least one evaluation");
  std::filesystem::create_directories(dir);
  ReportFiles files{dir / "report.csv", dir / "table.csv", dir / "metrics.json", dir / "loss_curves.png",
                    dir / "exact_match.png"};

  std::string csv = std::string(kReportHeader) + "\n";
  for (const auto& r : reports) {
    csv += std::string(protoform::to_string(r.summary_type)) + "," + r.model + "," + fmt(r.exact_match) + "," +
           fmt(r.token_accuracy) + "," + fmt(r.bleu) + "," + std::to_string(r.n_test) + "\n";
  }
  write_text(files.csv, csv);

  const auto models = model_order(reports);
  const auto types = type_order(reports);
  std::string table = "summary_type";
  for (const auto& m : models) table += "," + m + "_exact_match," + m + "_bleu";
  table += "\n";
  std::vector<std::vector<double>> bars;
  for (auto t : types) {
    table += std::string(protoform::display_name(t));
    std::vector<double> group;
    for (const auto& m : models) {
      const auto it = std::find_if(reports.begin(), reports.end(),
                                   [&](const auto& r) { return r.summary_type == t && r.model == m; });
      table += it == reports.end() ? ",," : "," + fmt(it->exact_match) + "," + fmt(it->bleu);
      group.push_back(it == reports.end() ? 0.0 : it->exact_match);
    }
    table += "\n";
    bars.push_back(std::move(group));
  }
  table += "Average";
  for (const auto& a : model_averages(reports)) table += "," + fmt(a.exact_match) + "," + fmt(a.bleu);
  table += "\n";
  write_text(files.table, table);
  write_text(files.json, reports_json(reports));

  std::vector<Series> curves;
  for (const auto& r : reports) curves.push_back({r.model, r.loss_curve});
  plot_lines(curves, files.loss_plot);
  plot_bars(bars, files.metric_plot);
  return files;
}

}  // namespace tempsum::train
