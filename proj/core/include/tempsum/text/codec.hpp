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

#include <span>
#include <string>
#include <vector>

#include "tempsum/text/slots.hpp"
#include "tempsum/text/vocab.hpp"

namespace tempsum::text {

/// Ids of one sequence: <s> ... </s>.
struct TokenSequence {
  std::vector<int> ids;

  std::size_t size() const noexcept { return ids.size(); }
  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

TokenSequence encode(std::span<const std::string> words, const Vocab& vocab);

/// Strips specials. Throws MalformedSequenceError when </s> is missing.
std::vector<std::string> decode(const TokenSequence& sequence, const Vocab& vocab);

/// Replaces every surface word of each fill (searched in order) with the fill's
/// placeholder. Throws ConsistencyError when a fill is not found.
std::vector<std::string> to_template_tokens(std::span<const std::string> summary_tokens,
                                            std::span<const SlotFill> slot_fills);

/// Inverse of to_template_tokens: each placeholder consumes one surface word of
/// the next fill of that kind.
std::vector<std::string> instantiate(std::span<const std::string> template_tokens,
                                     std::span<const SlotFill> slot_fills);

}  // namespace tempsum::text
