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

#include "tempsum/text/tokenize.hpp"

#include <cctype>

namespace tempsum::text {

namespace {

bool is_punct(char c) { return c == ',' || c == '.' || c == ';' || c == ':' || c == '!' || c == '?'; }

}  // namespace

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
    std::size_t j = i;
    while (j < sentence.size() && !std::isspace(static_cast<unsigned char>(sentence[j]))) ++j;
    std::string_view word = sentence.substr(i, j - i);
    std::vector<std::string> trailing;
    while (word.size() > 1 && is_punct(word.back())) {
      trailing.insert(trailing.begin(), std::string(1, word.back()));
      word.remove_suffix(1);
    }
    if (!word.empty()) tokens.emplace_back(word);
    for (auto& p : trailing) tokens.push_back(std::move(p));
    i = j;
  }
  return tokens;
}

std::string detokenize(std::span<const std::string> tokens) {
  std::string out;
  for (const auto& token : tokens) {
    const bool attach = token.size() == 1 && is_punct(token[0]);
    if (!out.empty() && !attach) out.push_back(' ');
    out += token;
  }
  return out;
}

}  // namespace tempsum::text
