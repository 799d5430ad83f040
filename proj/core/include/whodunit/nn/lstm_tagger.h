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

#ifndef WHODUNIT_NN_LSTM_TAGGER_H_
#define WHODUNIT_NN_LSTM_TAGGER_H_

#include <optional>

#include <Eigen/Core>

#include "whodunit/nn/fusion_encoder.h"
#include "whodunit/nn/labeler.h"

namespace whodunit::nn {

struct LstmState {
  Eigen::VectorXd h;
  Eigen::VectorXd c;

  static LstmState Zero(int dim) {
    return {Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Zero(dim)};
  }
};

// One step of the recurrence. `w` maps [h_prev; x] to the four gate blocks
// (input, forget, output, candidate), each hidden-size columns wide.
LstmState LstmStep(const Eigen::VectorXd& x, const LstmState& prev, const Eigen::MatrixXd& w,
                   const Eigen::VectorXd& b);

// Incremental perpetrator tagger: fusion encoder, one-layer LSTM over the
// sentences of a case, 2-way softmax per step. Dropout (training only) hits
// the LSTM input and the emitted state.
class LstmTagger : public SequenceLabeler {
 public:
  explicit LstmTagger(const ModelConfig& config,
                      std::optional<Eigen::MatrixXd> pretrained_embeddings = std::nullopt);

  std::string_view kind() const override { return "lstm"; }
  const ModelConfig& config() const override { return config_; }
  ParamSet& params() override { return params_; }
  const ParamSet& params() const override { return params_; }

  void Initialize(uint64_t seed) override;
  double LossAndGrads(std::span<const CaseSequence* const> batch, double dropout,
                      uint64_t dropout_seed, ParamSet* grads) const override;
  Prediction Predict(const CaseSequence& sequence) const override;

  // Forward pass with the given dropout rate and mask seed; rate 0 is the
  // evaluation forward.
  Eigen::VectorXd Probabilities(const CaseSequence& sequence, double dropout,
                                uint64_t dropout_seed) const;

  const FusionEncoder& encoder() const { return encoder_; }

 private:
  struct Trace;
  void Forward(const CaseSequence& sequence, double dropout, uint64_t dropout_seed,
               Trace* trace) const;

  ModelConfig config_;
  std::optional<Eigen::MatrixXd> pretrained_;
  ParamSet params_;
  FusionEncoder encoder_;
  int lstm_w_ = -1;
  int lstm_b_ = -1;
  int out_w_ = -1;
  int out_b_ = -1;
};

}  // namespace whodunit::nn

#endif  // WHODUNIT_NN_LSTM_TAGGER_H_
