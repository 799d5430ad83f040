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

#ifndef WHODUNIT_SYNTH_BAYES_H_
#define WHODUNIT_SYNTH_BAYES_H_

#include <span>

#include "whodunit/synth/generator.h"

namespace whodunit::synth {

// Best pooled f1 any deterministic labelling policy can reach on the dataset
// when it reads the channels perfectly. A memoryless policy sees the current
// sentence only: the cue when some channel is enabled and the trigger when
// text is. A full-history policy also sees the trigger k sentences back and
// whether the case has reached position k. The maximum is taken over every
// mapping from observations to labels.
double BayesRate(std::span<const LatentRow> rows, const SynthSpec& spec, bool memoryless);
double BayesRate(const SynthDataset& dataset, bool memoryless);

}  // namespace whodunit::synth

#endif  // WHODUNIT_SYNTH_BAYES_H_
