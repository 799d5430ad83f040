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

#ifndef WHODUNIT_NN_TRAINER_H_
#define WHODUNIT_NN_TRAINER_H_

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "whodunit/eval/metrics.h"
#include "whodunit/nn/labeler.h"
#include "whodunit/nn/model_config.h"
#include "whodunit/nn/param_set.h"

namespace whodunit::nn {

struct EpochRecord {
  int run = 0;
  int epoch = 0;  // from 1
  double loss = 0;  // mean batch objective over the epoch
  eval::Prf test;
};

struct RunResult {
  int run = 0;
  int best_epoch = 0;
  eval::Prf best;
  ParamSet best_params;
};

struct TrainResult {
  std::vector<EpochRecord> epochs;
  std::vector<RunResult> runs;
  double mean_best_f1 = 0;
};

// Deterministic inference over cases; traces carry the case keys.
std::vector<eval::PredictionTrace> PredictTraces(const SequenceLabeler& model,
                                                 std::span<const CaseSequence> cases);

using EpochCallback = std::function<void(const EpochRecord&)>;

// For each run: re-initialize from a run-derived seed, then per epoch shuffle
// the training cases, take mini-batches of batch_cases cases with one ADAM
// step each, and score minority-class f1 on the test cases. Each run keeps
// the parameters of its best epoch (earliest on ties). On return the model
// holds the best parameters of the last run.
TrainResult Train(SequenceLabeler& model, std::span<const CaseSequence> train,
                  std::span<const CaseSequence> test, const TrainConfig& config,
                  const EpochCallback& on_epoch = {});

// CSV with header run,epoch,loss,precision,recall,f1.
void WriteEpochCsv(std::ostream& out, std::span<const EpochRecord> epochs);

}  // namespace whodunit::nn

#endif  // WHODUNIT_NN_TRAINER_H_
