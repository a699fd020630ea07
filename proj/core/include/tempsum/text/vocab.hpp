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
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tempsum::text {

inline constexpr int kPadId = 0;
inline constexpr int kBosId = 1;
inline constexpr int kEosId = 2;
inline constexpr int kUnkId = 3;
inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kBosToken = "<s>";
inline constexpr std::string_view kEosToken = "</s>";
inline constexpr std::string_view kUnkToken = "<unk>";

/// Bijective token <-> id map with four reserved ids.
class Vocab {
 public:
  Vocab();

  /// Reserved tokens first, then by descending frequency, ties lexicographic.
  static Vocab build(std::span<const std::vector<std::string>> corpus);
  /// Copy of `base` with `extra` tokens appended (existing tokens keep their ids).
  static Vocab extend(const Vocab& base, std::span<const std::string> extra);
  /// Template vocabulary: the summary vocabulary plus every placeholder token.
  static Vocab template_vocab(const Vocab& summary_vocab);

  int id(std::string_view token) const;  // kUnkId when absent
  bool contains(std::string_view token) const;
  const std::string& token(int id) const;
  int size() const noexcept { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  /// JSON array of tokens in id order.
  std::string to_json() const;
  static Vocab from_json(std::string_view json_text);
  static Vocab from_tokens(std::vector<std::string> tokens);
  /// Git-style hash of to_json().
  std::string hash() const;

  friend bool operator==(const Vocab& a, const Vocab& b) { return a.tokens_ == b.tokens_; }

 private:
  void add(std::string token);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace tempsum::text
