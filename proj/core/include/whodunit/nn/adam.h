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

#ifndef WHODUNIT_NN_ADAM_H_
#define WHODUNIT_NN_ADAM_H_

#include <cstdint>

#include "whodunit/nn/model_config.h"
#include "whodunit/nn/param_set.h"

namespace whodunit::nn {

struct AdamMoments {
  ParamSet first;
  ParamSet second;
};

// One bias-corrected ADAM update; `step` counts from 1.
void AdamStep(ParamSet& params, const ParamSet& grads, AdamMoments& moments, int64_t step,
              const TrainConfig& config);

// Owns the moments and the step counter.
class Adam {
 public:
  Adam(const ParamSet& layout, const TrainConfig& config);
  void Step(ParamSet& params, const ParamSet& grads);
  int64_t steps() const { return step_; }

 private:
  TrainConfig config_;
  AdamMoments moments_;
  int64_t step_ = 0;
};

}  // namespace whodunit::nn

#endif  // WHODUNIT_NN_ADAM_H_
