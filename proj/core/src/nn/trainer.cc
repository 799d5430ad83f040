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

#include "whodunit/nn/trainer.h"

#include <cstdio>
#include <numeric>
#include <ostream>

#include "whodunit/error.h"
#include "whodunit/nn/adam.h"
#include "whodunit/random.h"

namespace whodunit::nn {

std::vector<eval::PredictionTrace> PredictTraces(const SequenceLabeler& model,
                                                 std::span<const CaseSequence> cases) {
  std::vector<eval::PredictionTrace> traces;
  traces.reserve(cases.size());
  for (const auto& seq : cases) {
    const Prediction p = model.Predict(seq);
    eval::PredictionTrace trace;
    trace.case_id = seq.key;
    for (size_t t = 0; t < seq.size(); ++t) {
      trace.records.push_back(
          {seq.seq_indices[t], p.probability[t], p.label[t], seq.steps[t].gold_label});
    }
    traces.push_back(std::move(trace));
  }
  return traces;
}

TrainResult Train(SequenceLabeler& model, std::span<const CaseSequence> train,
                  std::span<const CaseSequence> test, const TrainConfig& config,
                  const EpochCallback& on_epoch) {
  config.Validate();
  if (train.empty()) throw Error("empty training set");
  if (test.empty()) throw Error("empty test set");
  for (const auto& a : train) {
    for (const auto& b : test) {
      if (a.key == b.key) throw Error("case " + a.key + " is in both train and test");
    }
  }
  TrainResult result;
  ParamSet grads = model.params().ZerosLike();
  for (int run = 0; run < config.runs; ++run) {
    const uint64_t run_seed = DeriveSeed(config.seed, {static_cast<uint64_t>(run)});
    model.Initialize(DeriveSeed(run_seed, {0}));
    Adam adam(model.params(), config);
    RunResult best;
    best.run = run;
    double best_f1 = -1;
    std::vector<const CaseSequence*> order;
    for (const auto& c : train) order.push_back(&c);
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
      const uint64_t e = static_cast<uint64_t>(epoch);
      Rng shuffle(DeriveSeed(run_seed, {e, 1}));
      shuffle.Shuffle(std::span<const CaseSequence*>(order));
      double loss_sum = 0;
      int batches = 0;
      for (size_t start = 0; start < order.size(); start += config.batch_cases) {
        const size_t end = std::min(order.size(), start + config.batch_cases);
        grads.SetZero();
        loss_sum += model.LossAndGrads(
            std::span<const CaseSequence* const>(order.data() + start, end - start),
            config.dropout, DeriveSeed(run_seed, {e, 2, static_cast<uint64_t>(batches)}), &grads);
        adam.Step(model.params(), grads);
        ++batches;
      }
      if (!model.params().AllFinite()) {
        throw Error("parameters diverged in run " + std::to_string(run) + " epoch " +
                    std::to_string(epoch));
      }
      EpochRecord rec;
      rec.run = run;
      rec.epoch = epoch;
      rec.loss = loss_sum / batches;
      rec.test = eval::PrfMinority(PredictTraces(model, test));
      if (rec.test.f1 > best_f1) {
        best_f1 = rec.test.f1;
        best.best_epoch = epoch;
        best.best = rec.test;
        best.best_params = model.params();
      }
      result.epochs.push_back(rec);
      if (on_epoch) on_epoch(rec);
    }
    model.params() = best.best_params;
    result.runs.push_back(std::move(best));
  }
  double total = 0;
  for (const auto& r : result.runs) total += r.best.f1;
  result.mean_best_f1 = total / static_cast<double>(result.runs.size());
  return result;
}

void WriteEpochCsv(std::ostream& out, std::span<const EpochRecord> epochs) {
  out << "run,epoch,loss,precision,recall,f1\n";
  char buf[160];
  for (const auto& e : epochs) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.9g,%.6f,%.6f,%.6f\n", e.run, e.epoch, e.loss,
                  e.test.precision, e.test.recall, e.test.f1);
    out << buf;
  }
}

}  // namespace whodunit::nn
