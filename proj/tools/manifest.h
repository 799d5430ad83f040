// Copyright 2026 The Whodunit Authors.
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

#ifndef WHODUNIT_TOOLS_MANIFEST_H_
#define WHODUNIT_TOOLS_MANIFEST_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "settings.h"

namespace whodunit::cli {

// Lowercase hex SHA-256 of a file's bytes.
std::string Sha256File(const std::filesystem::path& path);

// Digest of every regular file under `path` (or of `path` itself), keyed by
// the path relative to it ("." for a single file).
std::map<std::string, std::string> DigestTree(const std::filesystem::path& path);

struct InputDigest {
  std::string key;
  std::filesystem::path path;
  std::map<std::string, std::string> files;
};

// Records the config echo, tool version and input digests as manifest.json
// in `dir`.
void WriteManifest(const std::filesystem::path& dir, const std::string& command,
                   const Settings& settings, const std::vector<InputDigest>& inputs);

}  // namespace whodunit::cli

#endif  // WHODUNIT_TOOLS_MANIFEST_H_
