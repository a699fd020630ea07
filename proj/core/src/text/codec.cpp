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

#include "tempsum/text/codec.hpp"

#include <algorithm>

#include "tempsum/error.hpp"

namespace tempsum::text {

TokenSequence encode(std::span<const std::string> words, const Vocab& vocab) {
  TokenSequence seq;
  seq.ids.reserve(words.size() + 2);
  seq.ids.push_back(kBosId);
  for (const auto& w : words) seq.ids.push_back(vocab.id(w));
  seq.ids.push_back(kEosId);
  return seq;
}

std::vector<std::string> decode(const TokenSequence& sequence, const Vocab& vocab) {
  std::vector<std::string> words;
  for (int id : sequence.ids) {
    if (id == kEosId) return words;
    if (id == kBosId || id == kPadId) continue;
    words.push_back(vocab.token(id));
  }
  throw MalformedSequenceError("token sequence has no </s> terminator");
}

std::vector<std::string> to_template_tokens(std::span<const std::string> summary_tokens,
                                            std::span<const SlotFill> slot_fills) {
  std::vector<std::string> out(summary_tokens.begin(), summary_tokens.end());
  std::size_t cursor = 0;
  for (const auto& fill : slot_fills) {
    if (fill.surface.empty()) throw ConsistencyError("slot fill with empty surface");
    const auto it = std::search(summary_tokens.begin() + static_cast<std::ptrdiff_t>(cursor), summary_tokens.end(),
                                fill.surface.begin(), fill.surface.end());
    if (it == summary_tokens.end()) {
      std::string words;
      for (const auto& w : fill.surface) words += (words.empty() ? "" : " ") + w;
      throw ConsistencyError("slot fill '" + words + "' not found in summary");
    }
    const auto start = static_cast<std::size_t>(it - summary_tokens.begin());
    for (std::size_t k = 0; k < fill.surface.size(); ++k) out[start + k] = std::string(placeholder(fill.kind));
    cursor = start + fill.surface.size();
  }
  return out;
}

std::vector<std::string> instantiate(std::span<const std::string> template_tokens,
                                     std::span<const SlotFill> slot_fills) {
  std::vector<std::string> out;
  out.reserve(template_tokens.size());
  std::size_t fill = 0;
  std::size_t word = 0;
  for (const auto& token : template_tokens) {
    const auto kind = slot_kind_from_placeholder(token);
    if (!kind) {
      if (word != 0) throw ConsistencyError("slot fill interrupted by literal '" + token + "'");
      out.push_back(token);
      continue;
    }
    if (fill >= slot_fills.size()) throw ConsistencyError("template has more blanks than slot fills");
    if (slot_fills[fill].kind != *kind) {
      throw ConsistencyError("placeholder '" + token + "' does not match slot fill kind");
    }
    out.push_back(slot_fills[fill].surface[word]);
    if (++word == slot_fills[fill].surface.size()) {
      ++fill;
      word = 0;
    }
  }
  if (fill != slot_fills.size() || word != 0) throw ConsistencyError("unused slot fills after instantiation");
  return out;
}

}  // namespace tempsum::text
