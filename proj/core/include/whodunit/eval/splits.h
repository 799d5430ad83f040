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

#ifndef WHODUNIT_EVAL_SPLITS_H_
#define WHODUNIT_EVAL_SPLITS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace whodunit::eval {

struct Fold {
  std::vector<std::string> train;
  std::vector<std::string> test;
};

struct SplitPlan {
  std::vector<std::string> held_out;
  std::vector<Fold> folds;
};

struct SplitSizes {
  int held_out = 6;
  int test_per_fold = 6;
  int folds = 5;
};

// Sorts the ids, shuffles them with `seed`, takes the held-out cases first and
// then one disjoint test block per fold; each fold trains on the remainder
// minus its test block. Member lists are sorted.
SplitPlan MakeSplits(std::span<const std::string> case_ids, uint64_t seed, SplitSizes sizes = {});

}  // namespace whodunit::eval

#endif  // WHODUNIT_EVAL_SPLITS_H_
