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

#include <filesystem>
#include <optional>
#include <string>

#include "tempsum/nn/model.hpp"

namespace tempsum::nn {

/// Binary archive: magic line, JSON header (config, vocabularies and their
/// hashes, tensor table), then the parameter values as little-endian doubles.
void save_checkpoint(const std::filesystem::path& path, const Model& model, const std::string& metadata_json = "{}");

struct ExpectedVocabs {
  std::string summary_hash;
  std::string template_hash;
};

/// Throws CheckpointError on a corrupt file or when `expected` hashes differ
/// from the stored vocabularies.
Model load_checkpoint(const std::filesystem::path& path, const std::optional<ExpectedVocabs>& expected = std::nullopt);

/// The metadata JSON stored with the checkpoint.
std::string checkpoint_metadata(const std::filesystem::path& path);

}  // namespace tempsum::nn
