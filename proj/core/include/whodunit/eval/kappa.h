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

#ifndef WHODUNIT_EVAL_KAPPA_H_
#define WHODUNIT_EVAL_KAPPA_H_

#include <span>

namespace whodunit::eval {

// Cohen's kappa between two annotators' categorical labels. When chance
// agreement is 1 the statistic is undefined: identical sequences give 1,
// anything else throws.
double CohenKappa(std::span<const int> a, std::span<const int> b);

}  // namespace whodunit::eval

#endif  // WHODUNIT_EVAL_KAPPA_H_
