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

#include "whodunit/nn/adam.h"

#include <cmath>

#include "whodunit/error.h"

namespace whodunit::nn {

void AdamStep(ParamSet& params, const ParamSet& grads, AdamMoments& moments, int64_t step,
              const TrainConfig& config) {
  if (step < 1) throw Error("ADAM step index starts at 1");
  if (!params.SameLayout(grads) || !params.SameLayout(moments.first) ||
      !params.SameLayout(moments.second)) {
    throw Error("ADAM tensors do not share the parameter layout");
  }
  const double b1 = config.beta1;
  const double b2 = config.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(step));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(step));
  for (int i = 0; i < params.size(); ++i) {
    auto m = moments.first[i].array();
    auto v = moments.second[i].array();
    const auto g = grads[i].array();
    m = b1 * m + (1 - b1) * g;
    v = b2 * v + (1 - b2) * g.square();
    params[i].array() -= config.learning_rate * (m / c1) / ((v / c2).sqrt() + config.epsilon);
  }
}

Adam::Adam(const ParamSet& layout, const TrainConfig& config)
    : config_(config), moments_{layout.ZerosLike(), layout.ZerosLike()} {}

void Adam::Step(ParamSet& params, const ParamSet& grads) {
  AdamStep(params, grads, moments_, ++step_, config_);
}

}  // namespace whodunit::nn
