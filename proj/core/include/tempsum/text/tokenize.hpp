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
#include <vector>

namespace tempsum::text {

/// Whitespace tokenization with sentence punctuation split off:
/// "week," -> "week", ",".
std::vector<std::string> tokenize(std::string_view sentence);

/// Joins tokens with spaces and re-attaches punctuation to the previous word.
std::string detokenize(std::span<const std::string> tokens);

}  // namespace tempsum::text
