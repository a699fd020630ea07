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

#include "tempsum/nn/checkpoint.hpp"

#include <fstream>

#include <json.hpp>

#include "tempsum/error.hpp"

namespace tempsum::nn {

namespace {

constexpr std::string_view kMagic = "TEMPSUM-CKPT 1\n";

struct Header {
  nlohmann::ordered_json json;
  std::streamoff data_offset = 0;
};

Header read_header(std::ifstream& in, const std::filesystem::path& path) {
  std::string magic(kMagic.size(), '\0');
  in.read(magic.data(), static_cast<std::streamsize>(magic.size()));
  if (!in || magic != kMagic) throw CheckpointError(path.string() + " is not a checkpoint");
  std::uint64_t size = 0;
  in.read(reinterpret_cast<char*>(&size), sizeof size);
  if (!in || size > (1u << 30)) throw CheckpointError(path.string() + ": bad header size");
  std::string text(size, '\0');
  in.read(text.data(), static_cast<std::streamsize>(size));
  if (!in) throw CheckpointError(path.string() + ": truncated header");
  Header h;
  try {
    h.json = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(path.string() + ": bad header: " + e.what());
  }
  h.data_offset = in.tellg();
  return h;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Model& model, const std::string& metadata_json) {
  nlohmann::ordered_json h;
  h["config"] = nlohmann::ordered_json::parse(model.config().to_json());
  h["summary_vocab"] = model.summary_vocab().tokens();
  h["template_vocab"] = model.template_vocab().tokens();
  h["summary_vocab_hash"] = model.summary_vocab().hash();
  h["template_vocab_hash"] = model.template_vocab().hash();
  h["template_lookup"] = model.template_lookup();
  h["metadata"] = nlohmann::ordered_json::parse(metadata_json);
  auto tensors = nlohmann::ordered_json::array();
  for (const auto* p : model.parameters().all()) {
    tensors.push_back({{"name", p->name}, {"rows", p->value.rows()}, {"cols", p->value.cols()}});
  }
  h["tensors"] = tensors;
  const std::string text = h.dump();

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError("cannot write " + path.string());
  out.write(kMagic.data(), static_cast<std::streamsize>(kMagic.size()));
  const std::uint64_t size = text.size();
  out.write(reinterpret_cast<const char*>(&size), sizeof size);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const auto* p : model.parameters().all()) {
    out.write(reinterpret_cast<const char*>(p->value.data()), static_cast<std::streamsize>(p->value.size() * sizeof(double)));
  }
  if (!out) throw CheckpointError("failed writing " + path.string());
}

Model load_checkpoint(const std::filesystem::path& path, const std::optional<ExpectedVocabs>& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot read " + path.string());
  const Header h = read_header(in, path);
  try {
    auto summary = text::Vocab::from_tokens(h.json.at("summary_vocab").get<std::vector<std::string>>());
    auto tmpl = text::Vocab::from_tokens(h.json.at("template_vocab").get<std::vector<std::string>>());
    if (summary.hash() != h.json.at("summary_vocab_hash").get<std::string>() ||
        tmpl.hash() != h.json.at("template_vocab_hash").get<std::string>()) {
      throw CheckpointError(path.string() + ": stored vocabulary does not match its hash");
    }
    if (expected && (expected->summary_hash != summary.hash() || expected->template_hash != tmpl.hash())) {
      throw CheckpointError(path.string() + ": vocabulary hash mismatch with the dataset");
    }
    Model model(ModelConfig::from_json(h.json.at("config").dump()), std::move(summary), std::move(tmpl));
    const auto& tensors = h.json.at("tensors");
    auto& params = model.parameters().all();
    if (tensors.size() != params.size()) throw CheckpointError(path.string() + ": tensor count mismatch");
    for (std::size_t i = 0; i < params.size(); ++i) {
      Parameter& p = *params[i];
      if (tensors[i].at("name").get<std::string>() != p.name || tensors[i].at("rows").get<Index>() != p.value.rows() ||
          tensors[i].at("cols").get<Index>() != p.value.cols()) {
        throw CheckpointError(path.string() + ": tensor " + p.name + " does not match the model");
      }
      in.read(reinterpret_cast<char*>(p.value.data()), static_cast<std::streamsize>(p.value.size() * sizeof(double)));
      if (!in) throw CheckpointError(path.string() + ": truncated tensor data");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(path.string() + ": bad header: " + e.what());
  } catch (const ConfigError& e) {
    throw CheckpointError(path.string() + ": " + e.what());
  }
}

std::string checkpoint_metadata(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot read " + path.string());
  return read_header(in, path).json.value("metadata", nlohmann::ordered_json::object()).dump();
}

}  // namespace tempsum::nn
