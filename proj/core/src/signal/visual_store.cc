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

#include "whodunit/signal/visual_store.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "whodunit/error.h"

namespace whodunit::signal {

void VisualStore::Add(int64_t t_ms, std::span<const double> vector) {
  if (static_cast<int>(vector.size()) != dim_) {
    throw Error("visual vector has dimension " + std::to_string(vector.size()) + ", expected " +
                std::to_string(dim_));
  }
  if (!keys_.empty() && t_ms <= keys_.back()) throw Error("visual keys must increase");
  keys_.push_back(t_ms);
  data_.insert(data_.end(), vector.begin(), vector.end());
}

std::span<const double> VisualStore::Lookup(int64_t t_ms) const {
  if (keys_.empty()) throw Error("visual store is empty");
  auto it = std::lower_bound(keys_.begin(), keys_.end(), t_ms);
  size_t idx;
  if (it == keys_.end()) {
    idx = keys_.size() - 1;
  } else if (it == keys_.begin()) {
    idx = 0;
  } else {
    const size_t hi = static_cast<size_t>(it - keys_.begin());
    idx = (t_ms - keys_[hi - 1] <= keys_[hi] - t_ms) ? hi - 1 : hi;
  }
  return std::span<const double>(data_).subspan(idx * dim_, dim_);
}

VisualStore VisualStore::Read(std::istream& in, int expected_dim) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line) || !line.starts_with("dim=")) {
    throw ParseError("visual store must start with 'dim=<D>'", 1);
  }
  int dim = 0;
  const char* begin = line.data() + 4;
  const char* end = line.data() + line.size();
  while (end > begin && (end[-1] == '\r' || end[-1] == ' ')) --end;
  if (auto [p, ec] = std::from_chars(begin, end, dim); ec != std::errc() || p != end || dim <= 0) {
    throw ParseError("bad visual store header '" + line + "'", 1);
  }
  if (expected_dim > 0 && dim != expected_dim) {
    throw ParseError("visual store dimension " + std::to_string(dim) + ", expected " +
                         std::to_string(expected_dim),
                     1);
  }
  VisualStore store(dim);
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    int64_t t = 0;
    if (!(row >> t)) throw ParseError("missing timestamp", line_no);
    values.clear();
    double v;
    while (row >> v) values.push_back(v);
    if (!row.eof()) throw ParseError("non-numeric visual value", line_no);
    if (static_cast<int>(values.size()) != dim) {
      throw ParseError("visual vector has dimension " + std::to_string(values.size()) +
                           ", expected " + std::to_string(dim),
                       line_no);
    }
    try {
      store.Add(t, values);
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return store;
}

VisualStore VisualStore::ReadFile(const std::filesystem::path& path, int expected_dim) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return Read(in, expected_dim);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void VisualStore::Write(std::ostream& out) const {
  out << "dim=" << dim_ << '\n';
  char buf[32];
  for (size_t i = 0; i < keys_.size(); ++i) {
    out << keys_[i];
    for (int d = 0; d < dim_; ++d) {
      std::snprintf(buf, sizeof buf, " %.9g", data_[i * dim_ + d]);
      out << buf;
    }
    out << '\n';
  }
}

void VisualStore::WriteFile(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  Write(out);
}

}  // namespace whodunit::signal
