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

#ifndef WHODUNIT_BASELINES_MLP_TAGGER_H_
#define WHODUNIT_BASELINES_MLP_TAGGER_H_

#include <optional>

#include <Eigen/Core>

#include "whodunit/nn/fusion_encoder.h"
#include "whodunit/nn/labeler.h"

namespace whodunit::baselines {

inline constexpr double kMlpLearningRate = 0.0001;

// Per-sentence classifier on the same fusion front end as the LSTM tagger:
// x_h -> ReLU(hidden) -> ReLU(hidden) -> softmax. Each sentence is labelled
// independently of the rest of the case. Dropout hits x_h and the second
// hidden layer.
class MlpTagger : public nn::SequenceLabeler {
 public:
  explicit MlpTagger(const nn::ModelConfig& config,
                     std::optional<Eigen::MatrixXd> pretrained_embeddings = std::nullopt);

  std::string_view kind() const override { return "mlp"; }
  const nn::ModelConfig& config() const override { return config_; }
  nn::ParamSet& params() override { return params_; }
  const nn::ParamSet& params() const override { return params_; }

  void Initialize(uint64_t seed) override;
  double LossAndGrads(std::span<const nn::CaseSequence* const> batch, double dropout,
                      uint64_t dropout_seed, nn::ParamSet* grads) const override;
  nn::Prediction Predict(const nn::CaseSequence& sequence) const override;

  Eigen::VectorXd Probabilities(const nn::CaseSequence& sequence, double dropout,
                                uint64_t dropout_seed) const;

 private:
  struct Trace;
  void Forward(const nn::CaseSequence& sequence, double dropout, uint64_t dropout_seed,
               Trace* trace) const;

  nn::ModelConfig config_;
  std::optional<Eigen::MatrixXd> pretrained_;
  nn::ParamSet params_;
  nn::FusionEncoder encoder_;
  int w1_ = -1;
  int b1_ = -1;
  int w2_ = -1;
  int b2_ = -1;
  int out_w_ = -1;
  int out_b_ = -1;
};

}  // namespace whodunit::baselines

#endif  // WHODUNIT_BASELINES_MLP_TAGGER_H_
