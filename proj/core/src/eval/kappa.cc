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

#include "whodunit/eval/kappa.h"

#include <map>

#include "whodunit/error.h"

namespace whodunit::eval {

double CohenKappa(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw Error("annotation sequences differ in length");
  if (a.empty()) throw Error("annotation sequences are empty");
  const double n = static_cast<double>(a.size());
  std::map<int, double> count_a, count_b;
  double agree = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    count_a[a[i]] += 1;
    count_b[b[i]] += 1;
    if (a[i] == b[i]) agree += 1;
  }
  const double p_o = agree / n;
  double p_e = 0;
  for (const auto& [label, ca] : count_a) {
    auto it = count_b.find(label);
    if (it != count_b.end()) p_e += (ca / n) * (it->second / n);
  }
  if (p_e >= 1.0) {
    if (agree == n) return 1.0;
    throw Error("kappa is undefined when chance agreement is 1");
  }
  return (p_o - p_e) / (1.0 - p_e);
}

}  // namespace whodunit::eval
