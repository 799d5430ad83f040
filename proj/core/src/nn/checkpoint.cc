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

#include "whodunit/nn/checkpoint.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "binary_io.h"
#include "whodunit/error.h"

namespace whodunit::nn {
namespace {

constexpr char kMagic[] = "WDNN";
constexpr uint32_t kVersion = 1;

}  // namespace

void WriteCheckpoint(std::ostream& out, const Checkpoint& checkpoint) {
  internal::BinaryWriter w(out);
  w.Bytes(kMagic);
  w.U32(kVersion);
  std::string echo;
  for (const auto& [k, v] : checkpoint.config) {
    if (k.find_first_of("=\n") != std::string::npos || v.find('\n') != std::string::npos) {
      throw Error("config entry '" + k + "' cannot be echoed");
    }
    echo += k + "=" + v + "\n";
  }
  w.String(echo);
  const ParamSet& p = checkpoint.params;
  w.U32(static_cast<uint32_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) {
    const Eigen::MatrixXd& t = p[i];
    w.String(p.name(i));
    w.U32(static_cast<uint32_t>(p.rank(i)));
    w.U64(static_cast<uint64_t>(t.rows()));
    if (p.rank(i) == 2) w.U64(static_cast<uint64_t>(t.cols()));
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
      for (Eigen::Index c = 0; c < t.cols(); ++c) w.F64(t(r, c));
    }
  }
  if (!out) throw Error("failed writing checkpoint");
}

Checkpoint ReadCheckpoint(std::istream& in) {
  internal::BinaryReader r(in, "checkpoint");
  if (r.Bytes(4) != kMagic) throw Error("not a checkpoint (bad magic)");
  const uint32_t version = r.U32();
  if (version != kVersion) throw Error("unsupported checkpoint version " + std::to_string(version));
  Checkpoint cp;
  std::istringstream echo(r.String());
  std::string line;
  while (std::getline(echo, line)) {
    const size_t eq = line.find('=');
    if (eq == std::string::npos) throw Error("corrupt checkpoint config line '" + line + "'");
    cp.config[line.substr(0, eq)] = line.substr(eq + 1);
  }
  const uint32_t n = r.U32();
  for (uint32_t i = 0; i < n; ++i) {
    std::string name = r.String(4096);
    const uint32_t rank = r.U32();
    if (rank != 1 && rank != 2) throw Error("tensor '" + name + "' has unsupported rank");
    const uint64_t rows = r.U64();
    const uint64_t cols = rank == 2 ? r.U64() : 1;
    if (rows > (1u << 28) || cols > (1u << 28) || rows * cols > (uint64_t{1} << 30)) {
      throw Error("tensor '" + name + "' is implausibly large");
    }
    const int idx = cp.params.Add(name, static_cast<Eigen::Index>(rows),
                                  rank == 2 ? static_cast<Eigen::Index>(cols) : 0);
    Eigen::MatrixXd& t = cp.params[idx];
    for (Eigen::Index row = 0; row < t.rows(); ++row) {
      for (Eigen::Index c = 0; c < t.cols(); ++c) t(row, c) = r.F64();
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) throw Error("trailing bytes after checkpoint");
  return cp;
}

void WriteCheckpointFile(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  WriteCheckpoint(out, checkpoint);
}

Checkpoint ReadCheckpointFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint " + path.string());
  return ReadCheckpoint(in);
}

void CopyParams(const ParamSet& from, ParamSet* to) {
  if (!from.SameLayout(*to)) throw Error("checkpoint tensors do not match the model layout");
  for (int i = 0; i < from.size(); ++i) (*to)[i] = from[i];
}

}  // namespace whodunit::nn
