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

#include "run_manifest.hpp"

#include <fstream>

#include <json.hpp>

#include "tempsum/error.hpp"

namespace tempsum::cli {

std::filesystem::path write_run_manifest(const RunManifest& m, const std::filesystem::path& output,
                                         bool output_is_directory) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [k, v] : m.config) config[k] = v;
  j["config"] = config;
  j["seed"] = m.seed;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["catalog_hash"] = m.catalog_hash;
  j["version"] = "0.1.0";
  const auto path = output_is_directory ? output / "run_manifest.json"
                                        : std::filesystem::path(output.string() + ".manifest.json");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  return path;
}

}  // namespace tempsum::cli
