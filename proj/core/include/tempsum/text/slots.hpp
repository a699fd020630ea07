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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tempsum::text {

/// Kinds of protoform blanks.
enum class SlotKind { Q, sTW, TW, A, S, D, G };

inline constexpr std::array<SlotKind, 7> kAllSlotKinds = {SlotKind::Q, SlotKind::sTW, SlotKind::TW, SlotKind::A,
                                                          SlotKind::S, SlotKind::D,   SlotKind::G};

/// The placeholder token written into templates ("Q", "sTW", ...).
std::string_view placeholder(SlotKind kind);
std::optional<SlotKind> slot_kind_from_placeholder(std::string_view token);
inline bool is_placeholder(std::string_view token) { return slot_kind_from_placeholder(token).has_value(); }

struct SlotFill {
  SlotKind kind;
  std::vector<std::string> surface;  // e.g. {"calorie", "intake"}

  friend bool operator==(const SlotFill&, const SlotFill&) = default;
};

}  // namespace tempsum::text
