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

#ifndef WHODUNIT_NN_LABELER_H_
#define WHODUNIT_NN_LABELER_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "whodunit/nn/model_config.h"
#include "whodunit/nn/param_set.h"
#include "whodunit/random.h"
#include "whodunit/signal/feature_cache.h"

namespace whodunit::nn {

// The sentences of one case in screenplay order.
struct CaseSequence {
  std::string key;  // "<episode>#<case>"
  std::vector<int> seq_indices;
  std::vector<signal::FeatureBundle> steps;

  size_t size() const { return steps.size(); }
};

// Groups records with a case id into per-case sequences ordered by
// seq_index; the result is sorted by key.
std::vector<CaseSequence> GroupCaseSequences(std::span<const signal::FeatureRecord> records);

struct Prediction {
  std::vector<double> probability;  // p(l = 1) per sentence
  std::vector<int> label;
};

// Common surface of the trainable sequence labelers (LSTM, MLP, CRF).
class SequenceLabeler {
 public:
  virtual ~SequenceLabeler() = default;

  virtual std::string_view kind() const = 0;
  virtual const ModelConfig& config() const = 0;
  virtual ParamSet& params() = 0;
  virtual const ParamSet& params() const = 0;

  // Re-draws every parameter from `seed` (pretrained embeddings are copied,
  // not drawn).
  virtual void Initialize(uint64_t seed) = 0;

  // Mean per-sentence training objective over the batch. Gradients of that
  // objective are added into `grads`, which must share the params layout.
  // `dropout_seed` fixes the dropout masks so repeated calls are identical.
  virtual double LossAndGrads(std::span<const CaseSequence* const> batch, double dropout,
                              uint64_t dropout_seed, ParamSet* grads) const = 0;

  // Deterministic inference.
  virtual Prediction Predict(const CaseSequence& sequence) const = 0;
};

// Two-class softmax helpers over a 2 x T logit matrix.
// p(l = 1) per column.
Eigen::VectorXd PositiveProbability(const Eigen::MatrixXd& logits);
// Summed cross-entropy against the gold labels of `sequence`; the gradient of
// scale * loss with respect to the logits is written to d_logits. Throws when
// the loss is not finite.
double SoftmaxCrossEntropy(const Eigen::MatrixXd& logits, const CaseSequence& sequence,
                           double scale, Eigen::MatrixXd* d_logits);

// Inverted-dropout mask: entries are 0 with probability `rate`, otherwise
// 1 / (1 - rate). Empty when rate is 0.
Eigen::MatrixXd DropoutMask(Rng& rng, Eigen::Index rows, Eigen::Index cols, double rate);

Prediction MakePrediction(const Eigen::VectorXd& probability);

}  // namespace whodunit::nn

#endif  // WHODUNIT_NN_LABELER_H_
