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

#ifndef WHODUNIT_NN_CHECKPOINT_H_
#define WHODUNIT_NN_CHECKPOINT_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "whodunit/nn/param_set.h"

namespace whodunit::nn {

// Binary model container, little-endian:
//   "WDNN" u32 version, u32 length + config echo ("key=value\n" lines,
//   sorted by key), u32 n_tensors, then per tensor u32 length + name,
//   u32 rank, u64 dims[rank], f64 values in row-major order.
struct Checkpoint {
  std::map<std::string, std::string> config;
  ParamSet params;
};

void WriteCheckpoint(std::ostream& out, const Checkpoint& checkpoint);
Checkpoint ReadCheckpoint(std::istream& in);
void WriteCheckpointFile(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint ReadCheckpointFile(const std::filesystem::path& path);

// Copies tensors into `params`; names and shapes must match exactly.
void CopyParams(const ParamSet& from, ParamSet* to);

}  // namespace whodunit::nn

#endif  // WHODUNIT_NN_CHECKPOINT_H_
