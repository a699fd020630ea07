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

#include "tempsum/text/vocab.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "tempsum/error.hpp"
#include "tempsum/text/slots.hpp"
#include "tempsum/util/hash.hpp"

namespace tempsum::text {

namespace {

constexpr std::array<std::string_view, 7> kPlaceholders = {"Q", "sTW", "TW", "A", "S", "D", "G"};

}  // namespace

std::string_view placeholder(SlotKind kind) { return kPlaceholders[static_cast<std::size_t>(kind)]; }

std::optional<SlotKind> slot_kind_from_placeholder(std::string_view token) {
  for (std::size_t i = 0; i < kPlaceholders.size(); ++i) {
    if (kPlaceholders[i] == token) return static_cast<SlotKind>(i);
  }
  return std::nullopt;
}

Vocab::Vocab() {
  add(std::string(kPadToken));
  add(std::string(kBosToken));
  add(std::string(kEosToken));
  add(std::string(kUnkToken));
}

void Vocab::add(std::string token) {
  if (index_.count(token)) return;
  index_.emplace(token, static_cast<int>(tokens_.size()));
  tokens_.push_back(std::move(token));
}

Vocab Vocab::build(std::span<const std::vector<std::string>> corpus) {
  std::map<std::string, std::size_t> counts;
  for (const auto& sentence : corpus) {
    for (const auto& word : sentence) ++counts[word];
  }
  std::vector<std::pair<std::string, std::size_t>> ordered(counts.begin(), counts.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocab vocab;
  for (auto& [word, count] : ordered) vocab.add(word);
  return vocab;
}

Vocab Vocab::extend(const Vocab& base, std::span<const std::string> extra) {
  Vocab vocab = base;
  for (const auto& token : extra) vocab.add(token);
  return vocab;
}

Vocab Vocab::template_vocab(const Vocab& summary_vocab) {
  std::vector<std::string> placeholders;
  for (auto kind : kAllSlotKinds) placeholders.emplace_back(placeholder(kind));
  return extend(summary_vocab, placeholders);
}

int Vocab::id(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnkId : it->second;
}

bool Vocab::contains(std::string_view token) const { return index_.count(std::string(token)) != 0; }

const std::string& Vocab::token(int id) const {
  if (id < 0 || id >= size()) throw ConsistencyError("token id " + std::to_string(id) + " outside vocabulary");
  return tokens_[static_cast<std::size_t>(id)];
}

std::string Vocab::to_json() const { return nlohmann::json(tokens_).dump(); }

Vocab Vocab::from_tokens(std::vector<std::string> tokens) {
  if (tokens.size() < 4 || tokens[0] != kPadToken || tokens[1] != kBosToken || tokens[2] != kEosToken ||
      tokens[3] != kUnkToken) {
    throw SchemaError("vocabulary does not start with the reserved tokens");
  }
  Vocab vocab;
  for (std::size_t i = 4; i < tokens.size(); ++i) {
    if (vocab.contains(tokens[i])) throw SchemaError("duplicate vocabulary token '" + tokens[i] + "'");
    vocab.add(std::move(tokens[i]));
  }
  return vocab;
}

Vocab Vocab::from_json(std::string_view json_text) {
  try {
    return from_tokens(nlohmann::json::parse(json_text).get<std::vector<std::string>>());
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("malformed vocabulary JSON: " + std::string(e.what()));
  }
}

std::string Vocab::hash() const { return util::git_blob_hash(to_json()); }

}  // namespace tempsum::text
