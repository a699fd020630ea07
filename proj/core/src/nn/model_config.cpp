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

#include "tempsum/nn/model_config.hpp"

#include <json.hpp>

#include "tempsum/error.hpp"

namespace tempsum::nn {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::cnn_lstm: return "cnn_lstm";
    case Family::tst_transformer: return "tst_transformer";
    case Family::tst_lstm: return "tst_lstm";
  }
  return "cnn_lstm";
}

Family family_from_string(std::string_view name) {
  if (name == "cnn_lstm") return Family::cnn_lstm;
  if (name == "tst_transformer") return Family::tst_transformer;
  if (name == "tst_lstm") return Family::tst_lstm;
  throw ConfigError("unknown model family '" + std::string(name) + "'");
}

int ModelConfig::cnn_output_length(int length) const {
  for (int stack = 0; stack < 2; ++stack) {
    length = length + 2 * conv_padding - conv_kernel + 1;
    if (length < pool_kernel) return 0;
    length = (length - pool_kernel) / pool_stride + 1;
  }
  return length;
}

int ModelConfig::min_cnn_length() const {
  int length = 1;
  while (cnn_output_length(length) == 0) ++length;
  return length;
}

void ModelConfig::validate() const {
  auto positive = [](int v, const char* name) {
    if (v <= 0) throw ConfigError(std::string(name) + " must be positive");
  };
  positive(hidden_size, "hidden_size");
  positive(encoder_output, "encoder_output");
  positive(embedding_dim, "embedding_dim");
  positive(conv_channels, "conv_channels");
  positive(conv_kernel, "conv_kernel");
  positive(pool_kernel, "pool_kernel");
  positive(pool_stride, "pool_stride");
  positive(d_model, "d_model");
  positive(qkv_dim, "qkv_dim");
  positive(heads, "heads");
  positive(layers, "layers");
  positive(ffn_dim, "ffn_dim");
  positive(window, "window");
  positive(short_len, "short_len");
  positive(long_len, "long_len");
  positive(max_decode_len, "max_decode_len");
  if (conv_padding < 0) throw ConfigError("conv_padding must be nonnegative");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("dropout must lie in [0, 1)");
  if (summary_vocab < 5) throw ConfigError("summary_vocab must hold the reserved tokens and a word");
  if (template_vocab < summary_vocab) throw ConfigError("template_vocab must extend summary_vocab");
  if (family == Family::cnn_lstm) {
    const int need = min_cnn_length();
    if (short_len < need || long_len < need) {
      throw ShapeError("cnn inputs need at least " + std::to_string(need) + " positions");
    }
  }
}

std::string ModelConfig::to_json() const {
  nlohmann::ordered_json j;
  j["family"] = nn::to_string(family);
  j["hidden_size"] = hidden_size;
  j["encoder_output"] = encoder_output;
  j["embedding_dim"] = embedding_dim;
  j["conv_channels"] = conv_channels;
  j["conv_kernel"] = conv_kernel;
  j["conv_padding"] = conv_padding;
  j["pool_kernel"] = pool_kernel;
  j["pool_stride"] = pool_stride;
  j["d_model"] = d_model;
  j["qkv_dim"] = qkv_dim;
  j["heads"] = heads;
  j["layers"] = layers;
  j["ffn_dim"] = ffn_dim;
  j["window"] = window;
  j["positional_encoding"] = positional_encoding;
  j["dropout"] = dropout;
  j["short_len"] = short_len;
  j["long_len"] = long_len;
  j["max_decode_len"] = max_decode_len;
  j["summary_vocab"] = summary_vocab;
  j["template_vocab"] = template_vocab;
  j["seed"] = seed;
  return j.dump();
}

ModelConfig ModelConfig::from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ModelConfig c;
    c.family = family_from_string(j.at("family").get<std::string>());
    c.hidden_size = j.at("hidden_size").get<int>();
    c.encoder_output = j.at("encoder_output").get<int>();
    c.embedding_dim = j.at("embedding_dim").get<int>();
    c.conv_channels = j.at("conv_channels").get<int>();
    c.conv_kernel = j.at("conv_kernel").get<int>();
    c.conv_padding = j.at("conv_padding").get<int>();
    c.pool_kernel = j.at("pool_kernel").get<int>();
    c.pool_stride = j.at("pool_stride").get<int>();
    c.d_model = j.at("d_model").get<int>();
    c.qkv_dim = j.at("qkv_dim").get<int>();
    c.heads = j.at("heads").get<int>();
    c.layers = j.at("layers").get<int>();
    c.ffn_dim = j.at("ffn_dim").get<int>();
    c.window = j.at("window").get<int>();
    c.positional_encoding = j.at("positional_encoding").get<bool>();
    c.dropout = j.at("dropout").get<double>();
    c.short_len = j.at("short_len").get<int>();
    c.long_len = j.at("long_len").get<int>();
    c.max_decode_len = j.at("max_decode_len").get<int>();
    c.summary_vocab = j.at("summary_vocab").get<int>();
    c.template_vocab = j.at("template_vocab").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad model config: ") + e.what());
  }
}

ModelConfig miniature_config(Family family, int summary_vocab, int template_vocab) {
  ModelConfig c;
  c.family = family;
  c.hidden_size = 8;
  c.encoder_output = 8;
  c.embedding_dim = 4;
  c.conv_channels = 3;
  c.d_model = 8;
  c.qkv_dim = 2;
  c.heads = 2;
  c.layers = 1;
  c.ffn_dim = 8;
  c.window = 4;
  c.dropout = 0.0;
  c.short_len = 5;
  c.long_len = 8;
  c.max_decode_len = 5;
  c.summary_vocab = summary_vocab;
  c.template_vocab = template_vocab;
  return c;
}

}  // namespace tempsum::nn
