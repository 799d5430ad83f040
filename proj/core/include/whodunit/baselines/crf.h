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

#ifndef WHODUNIT_BASELINES_CRF_H_
#define WHODUNIT_BASELINES_CRF_H_

#include <vector>

#include <Eigen/Core>

#include "whodunit/nn/labeler.h"

namespace whodunit::baselines {

// Potentials of one binary linear chain: unary(y, t) and transition[prev][next].
struct CrfScores {
  Eigen::MatrixXd unary;  // 2 x T
  Eigen::Matrix2d transition = Eigen::Matrix2d::Zero();

  Eigen::Index length() const { return unary.cols(); }
};

struct CrfMarginals {
  double log_z = 0;
  Eigen::MatrixXd node;               // 2 x T, columns sum to 1
  std::vector<Eigen::Matrix2d> edge;  // T-1 pairwise marginals [prev][next]
};

// Unnormalized score of a labelling.
double CrfScore(const CrfScores& scores, const std::vector<int>& labels);
// Log partition function by the forward and by the backward recursion.
double CrfLogPartitionForward(const CrfScores& scores);
double CrfLogPartitionBackward(const CrfScores& scores);
CrfMarginals CrfForwardBackward(const CrfScores& scores);
// Highest-scoring labelling; among equal scores the lexicographically
// smallest one (ties resolve toward label 0). Empty chain -> empty result.
std::vector<int> CrfDecode(const CrfScores& scores);

// Linear-chain CRF over per-sentence features: the embeddings of the first
// crf_tokens token positions (zero when padded), the visual and acoustic
// vectors when those modalities are enabled, and a constant 1. Embeddings are
// frozen and are not part of params().
class CrfTagger : public nn::SequenceLabeler {
 public:
  CrfTagger(const nn::ModelConfig& config, Eigen::MatrixXd embeddings);

  std::string_view kind() const override { return "crf"; }
  const nn::ModelConfig& config() const override { return config_; }
  nn::ParamSet& params() override { return params_; }
  const nn::ParamSet& params() const override { return params_; }

  // All-zero weights; the objective is convex so the seed is unused.
  void Initialize(uint64_t seed) override;
  // Mean negative log-likelihood per sentence plus (crf_l2 / 2) * |params|^2.
  double LossAndGrads(std::span<const nn::CaseSequence* const> batch, double dropout,
                      uint64_t dropout_seed, nn::ParamSet* grads) const override;
  // Probabilities are node marginals; labels come from Viterbi decoding.
  nn::Prediction Predict(const nn::CaseSequence& sequence) const override;

  int feature_dim() const { return feature_dim_; }
  Eigen::MatrixXd Features(const nn::CaseSequence& sequence) const;  // D x T
  CrfScores Scores(const Eigen::MatrixXd& features) const;
  // Log-likelihood of the gold labels; gradient of it is added to `grads`
  // when non-null.
  double LogLikelihood(const nn::CaseSequence& sequence, nn::ParamSet* grads) const;

 private:
  nn::ModelConfig config_;
  Eigen::MatrixXd embeddings_;
  nn::ParamSet params_;
  int feature_dim_ = 0;
  int unary_ = -1;
  int transition_ = -1;
};

}  // namespace whodunit::baselines

#endif  // WHODUNIT_BASELINES_CRF_H_
