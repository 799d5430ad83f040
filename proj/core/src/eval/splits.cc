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

#include "whodunit/eval/splits.h"

#include <algorithm>
#include <set>

#include "whodunit/error.h"
#include "whodunit/random.h"

namespace whodunit::eval {

SplitPlan MakeSplits(std::span<const std::string> case_ids, uint64_t seed, SplitSizes sizes) {
  if (sizes.held_out < 0 || sizes.test_per_fold <= 0 || sizes.folds <= 0) {
    throw ConfigError("split sizes must be positive");
  }
  std::vector<std::string> ids(case_ids.begin(), case_ids.end());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) throw Error("duplicate case id");
  const size_t needed =
      static_cast<size_t>(sizes.held_out) + static_cast<size_t>(sizes.folds) * sizes.test_per_fold;
  if (ids.size() < needed) {
    throw Error("need at least " + std::to_string(needed) + " cases for the split, have " +
                std::to_string(ids.size()));
  }
  Rng rng(DeriveSeed(seed, {0x5711}));
  rng.Shuffle(std::span<std::string>(ids));

  SplitPlan plan;
  auto next = ids.begin();
  plan.held_out.assign(next, next + sizes.held_out);
  next += sizes.held_out;
  const std::vector<std::string> remainder(next, ids.end());
  for (int f = 0; f < sizes.folds; ++f) {
    Fold fold;
    auto begin = remainder.begin() + static_cast<ptrdiff_t>(f) * sizes.test_per_fold;
    fold.test.assign(begin, begin + sizes.test_per_fold);
    const std::set<std::string> test(fold.test.begin(), fold.test.end());
    for (const auto& id : remainder) {
      if (!test.count(id)) fold.train.push_back(id);
    }
    std::sort(fold.test.begin(), fold.test.end());
    std::sort(fold.train.begin(), fold.train.end());
    plan.folds.push_back(std::move(fold));
  }
  std::sort(plan.held_out.begin(), plan.held_out.end());
  return plan;
}

}  // namespace whodunit::eval
