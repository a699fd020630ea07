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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace tempsum::cli {

/// Record of one subcommand run. Holds no timestamps so reruns are byte-identical.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string catalog_hash;
};

/// Writes `run_manifest.json` into an output directory, or `<file>.manifest.json`
/// next to a single output file.
std::filesystem::path write_run_manifest(const RunManifest& manifest, const std::filesystem::path& output,
                                         bool output_is_directory);

}  // namespace tempsum::cli
