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

#include "whodunit/nn/param_set.h"

#include "whodunit/error.h"

namespace whodunit::nn {

int ParamSet::Add(std::string name, Eigen::Index rows, Eigen::Index cols) {
  if (Find(name) >= 0) throw Error("duplicate parameter '" + name + "'");
  names_.push_back(std::move(name));
  ranks_.push_back(cols == 0 ? 1 : 2);
  tensors_.push_back(Eigen::MatrixXd::Zero(rows, cols == 0 ? 1 : cols));
  return size() - 1;
}

int ParamSet::Find(std::string_view name) const {
  for (int i = 0; i < size(); ++i) {
    if (names_[i] == name) return i;
  }
  return -1;
}

ParamSet ParamSet::ZerosLike() const {
  ParamSet out = *this;
  out.SetZero();
  return out;
}

void ParamSet::SetZero() {
  for (auto& t : tensors_) t.setZero();
}

bool ParamSet::SameLayout(const ParamSet& other) const {
  if (size() != other.size()) return false;
  for (int i = 0; i < size(); ++i) {
    if (names_[i] != other.names_[i] || tensors_[i].rows() != other.tensors_[i].rows() ||
        tensors_[i].cols() != other.tensors_[i].cols()) {
      return false;
    }
  }
  return true;
}

Eigen::Index ParamSet::NumValues() const {
  Eigen::Index n = 0;
  for (const auto& t : tensors_) n += t.size();
  return n;
}

bool ParamSet::AllFinite() const {
  for (const auto& t : tensors_) {
    if (!t.allFinite()) return false;
  }
  return true;
}

double ParamSet::SquaredNorm() const {
  double s = 0;
  for (const auto& t : tensors_) s += t.squaredNorm();
  return s;
}

bool ParamSet::operator==(const ParamSet& other) const {
  if (!SameLayout(other)) return false;
  for (int i = 0; i < size(); ++i) {
    if (tensors_[i] != other.tensors_[i]) return false;
  }
  return true;
}

}  // namespace whodunit::nn
