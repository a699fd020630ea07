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

#include <fstream>

#include <json.hpp>

#include "tempsum/dataset/builder.hpp"
#include "tempsum/error.hpp"

namespace tempsum::dataset {

using nlohmann::ordered_json;

namespace {

ordered_json range_json(const IndexRange& r) { return ordered_json::array({r.begin + 1, r.end}); }

IndexRange range_from(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2) throw SchemaError("window must be a pair [i, j]");
  const auto i = j[0].get<std::size_t>();
  const auto e = j[1].get<std::size_t>();
  if (i < 1 || e < i) throw SchemaError("window [i, j] needs 1 <= i <= j");
  return {i - 1, e};
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return in;
}

}  // namespace

void write_instances(const std::filesystem::path& path, std::span<const TrainingInstance> instances) {
  auto out = open_out(path);
  for (const auto& inst : instances) {
    ordered_json j;
    j["user_id"] = inst.user_id;
    j["summary_type"] = protoform::to_string(inst.summary_type);
    j["x_short"] = inst.x_short;
    j["x_long"] = inst.x_long;
    j["y_summary"] = inst.y_summary.ids;
    j["y_template"] = inst.y_template.ids;
    j["window"] = range_json(inst.window());
    if (inst.segments.size() > 1) {
      auto segs = ordered_json::array();
      for (const auto& s : inst.segments) segs.push_back(range_json(s));
      j["segments"] = segs;
    }
    out << j.dump() << '\n';
  }
}

std::vector<TrainingInstance> read_instances(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<TrainingInstance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = ordered_json::parse(line);
      TrainingInstance inst;
      inst.user_id = j.at("user_id").get<std::string>();
      inst.summary_type = protoform::summary_type_from_string(j.at("summary_type").get<std::string>());
      inst.x_short = j.at("x_short").get<std::vector<double>>();
      inst.x_long = j.at("x_long").get<std::vector<double>>();
      inst.y_summary.ids = j.at("y_summary").get<std::vector<int>>();
      inst.y_template.ids = j.at("y_template").get<std::vector<int>>();
      if (j.contains("segments")) {
        for (const auto& s : j["segments"]) inst.segments.push_back(range_from(s));
      } else {
        inst.segments.push_back(range_from(j.at("window")));
      }
      out.push_back(std::move(inst));
    } catch (const nlohmann::json::exception& e) {
      throw RowError(line_no, std::string("bad instance: ") + e.what());
    }
  }
  return out;
}

void write_manifest(const std::filesystem::path& path, const DatasetManifest& m) {
  ordered_json j;
  j["summary_type"] = protoform::to_string(m.summary_type);
  j["instance_count"] = m.instance_count;
  j["split_seed"] = m.split_seed;
  j["split_ratio"] = m.split_ratio;
  j["train"] = m.train;
  j["test"] = m.test;
  ordered_json stats = ordered_json::object();
  for (const auto& [user, s] : m.user_stats) stats[user] = {{"mean", s.mean}, {"sd", s.sd}};
  j["user_stats"] = stats;
  j["summary_vocab"] = m.summary_vocab.tokens();
  j["template_vocab"] = m.template_vocab.tokens();
  j["summary_vocab_hash"] = m.summary_vocab.hash();
  j["template_vocab_hash"] = m.template_vocab.hash();
  j["catalog_hash"] = m.catalog_hash;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    const auto j = ordered_json::parse(in);
    DatasetManifest m;
    m.summary_type = protoform::summary_type_from_string(j.at("summary_type").get<std::string>());
    m.instance_count = j.at("instance_count").get<std::size_t>();
    m.split_seed = j.at("split_seed").get<std::uint64_t>();
    m.split_ratio = j.at("split_ratio").get<double>();
    m.train = j.at("train").get<std::vector<std::size_t>>();
    m.test = j.at("test").get<std::vector<std::size_t>>();
    for (const auto& [user, s] : j.at("user_stats").items()) {
      m.user_stats[user] = {s.at("mean").get<double>(), s.at("sd").get<double>()};
    }
    m.summary_vocab = text::Vocab::from_tokens(j.at("summary_vocab").get<std::vector<std::string>>());
    m.template_vocab = text::Vocab::from_tokens(j.at("template_vocab").get<std::vector<std::string>>());
    if (m.summary_vocab.hash() != j.at("summary_vocab_hash").get<std::string>() ||
        m.template_vocab.hash() != j.at("template_vocab_hash").get<std::string>()) {
      throw SchemaError("manifest vocabulary does not match its hash");
    }
    m.catalog_hash = j.at("catalog_hash").get<std::string>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad manifest: ") + e.what());
  }
}

}  // namespace tempsum::dataset
