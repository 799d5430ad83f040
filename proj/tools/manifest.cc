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

#include "manifest.h"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <memory>

#include "json.hpp"
#include "whodunit/error.h"

namespace whodunit::cli {

std::string Sha256File(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 unavailable");
  }
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  static const char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 15];
  }
  return hex;
}

std::map<std::string, std::string> DigestTree(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::map<std::string, std::string> out;
  if (fs::is_regular_file(path)) {
    out["."] = Sha256File(path);
    return out;
  }
  for (const auto& entry : fs::recursive_directory_iterator(path)) {
    if (!entry.is_regular_file()) continue;
    // Our own manifest changes with every run; it is not an input.
    if (entry.path().filename() == "manifest.json") continue;
    out[fs::relative(entry.path(), path).generic_string()] = Sha256File(entry.path());
  }
  return out;
}

void WriteManifest(const std::filesystem::path& dir, const std::string& command,
                   const Settings& settings, const std::vector<InputDigest>& inputs) {
  nlohmann::ordered_json j;
  j["tool"] = "whodunit";
  j["version"] = WHODUNIT_VERSION;
  j["command"] = command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [k, v] : settings.values) config[k] = v;
  j["config"] = config;
  nlohmann::ordered_json in = nlohmann::ordered_json::object();
  for (const auto& d : inputs) {
    nlohmann::ordered_json e;
    e["path"] = d.path.generic_string();
    e["sha256"] = d.files;
    in[d.key] = e;
  }
  j["inputs"] = in;
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw Error("cannot write manifest in " + dir.string());
  out << j.dump(2) << '\n';
}

}  // namespace whodunit::cli
