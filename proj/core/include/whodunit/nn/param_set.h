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

#ifndef WHODUNIT_NN_PARAM_SET_H_
#define WHODUNIT_NN_PARAM_SET_H_

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace whodunit::nn {

// An ordered collection of named dense tensors. Rank-1 tensors are stored as
// single-column matrices. Gradients and optimizer moments use ParamSets with
// the same layout as the parameters they belong to.
class ParamSet {
 public:
  // Registers a tensor and returns its index. `cols` == 0 declares a vector.
  int Add(std::string name, Eigen::Index rows, Eigen::Index cols = 0);

  int size() const { return static_cast<int>(tensors_.size()); }
  Eigen::MatrixXd& operator[](int i) { return tensors_[i]; }
  const Eigen::MatrixXd& operator[](int i) const { return tensors_[i]; }
  const std::string& name(int i) const { return names_[i]; }
  int rank(int i) const { return ranks_[i]; }
  // Index of `name`, or -1.
  int Find(std::string_view name) const;

  ParamSet ZerosLike() const;
  void SetZero();
  bool SameLayout(const ParamSet& other) const;
  Eigen::Index NumValues() const;
  bool AllFinite() const;
  // Sum of squared values over every tensor.
  double SquaredNorm() const;

  bool operator==(const ParamSet& other) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> ranks_;
  std::vector<Eigen::MatrixXd> tensors_;
};

}  // namespace whodunit::nn

#endif  // WHODUNIT_NN_PARAM_SET_H_
