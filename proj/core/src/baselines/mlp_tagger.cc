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

#include "whodunit/baselines/mlp_tagger.h"

#include <utility>

#include "whodunit/error.h"

namespace whodunit::baselines {

struct MlpTagger::Trace {
  nn::FusionEncoder::Cache enc;
  Eigen::MatrixXd mask_x;
  Eigen::MatrixXd mask_h;
  Eigen::MatrixXd x;
  Eigen::MatrixXd h1;
  Eigen::MatrixXd h2;
  Eigen::MatrixXd h2_out;
  Eigen::MatrixXd logits;
};

MlpTagger::MlpTagger(const nn::ModelConfig& config, std::optional<Eigen::MatrixXd> pretrained)
    : config_(config), pretrained_(std::move(pretrained)), encoder_(config_, &params_) {
  const int hd = config_.hidden_dim;
  w1_ = params_.Add("mlp1_w", config_.fusion_dim, hd);
  b1_ = params_.Add("mlp1_b", hd);
  w2_ = params_.Add("mlp2_w", hd, hd);
  b2_ = params_.Add("mlp2_b", hd);
  out_w_ = params_.Add("out_w", hd, 2);
  out_b_ = params_.Add("out_b", 2);
}

void MlpTagger::Initialize(uint64_t seed) {
  Rng rng(seed);
  encoder_.Initialize(rng, params_, pretrained_ ? &*pretrained_ : nullptr);
  for (int i : {w1_, w2_, out_w_}) nn::FillUniform(rng, params_[i], nn::kInitScale);
  for (int i : {b1_, b2_, out_b_}) params_[i].setZero();
}

void MlpTagger::Forward(const nn::CaseSequence& sequence, double dropout, uint64_t dropout_seed,
                        Trace* tr) const {
  const Eigen::Index t_len = static_cast<Eigen::Index>(sequence.size());
  encoder_.Forward(params_, sequence.steps, &tr->enc);
  Rng rng(dropout_seed);
  tr->mask_x = nn::DropoutMask(rng, config_.fusion_dim, t_len, dropout);
  tr->mask_h = nn::DropoutMask(rng, config_.hidden_dim, t_len, dropout);
  tr->x = tr->mask_x.size() ? Eigen::MatrixXd(tr->enc.x_h.cwiseProduct(tr->mask_x)) : tr->enc.x_h;
  tr->h1 = params_[b1_].col(0).replicate(1, t_len);
  tr->h1.noalias() += params_[w1_].transpose() * tr->x;
  tr->h1 = tr->h1.cwiseMax(0.0);
  tr->h2 = params_[b2_].col(0).replicate(1, t_len);
  tr->h2.noalias() += params_[w2_].transpose() * tr->h1;
  tr->h2 = tr->h2.cwiseMax(0.0);
  tr->h2_out = tr->mask_h.size() ? Eigen::MatrixXd(tr->h2.cwiseProduct(tr->mask_h)) : tr->h2;
  tr->logits = params_[out_b_].col(0).replicate(1, t_len);
  tr->logits.noalias() += params_[out_w_].transpose() * tr->h2_out;
}

Eigen::VectorXd MlpTagger::Probabilities(const nn::CaseSequence& sequence, double dropout,
                                         uint64_t dropout_seed) const {
  if (sequence.size() == 0) return {};
  Trace tr;
  Forward(sequence, dropout, dropout_seed, &tr);
  return nn::PositiveProbability(tr.logits);
}

nn::Prediction MlpTagger::Predict(const nn::CaseSequence& sequence) const {
  return nn::MakePrediction(Probabilities(sequence, 0.0, 0));
}

double MlpTagger::LossAndGrads(std::span<const nn::CaseSequence* const> batch, double dropout,
                               uint64_t dropout_seed, nn::ParamSet* grads) const {
  if (batch.empty()) throw Error("empty training batch");
  size_t total = 0;
  for (const auto* s : batch) total += s->size();
  if (total == 0) throw Error("training batch has no sentences");
  const double scale = 1.0 / static_cast<double>(total);
  double loss = 0;
  Trace tr;
  for (size_t k = 0; k < batch.size(); ++k) {
    const nn::CaseSequence& seq = *batch[k];
    if (seq.size() == 0) continue;
    Forward(seq, dropout, DeriveSeed(dropout_seed, {k}), &tr);
    Eigen::MatrixXd d_logits;
    loss += nn::SoftmaxCrossEntropy(tr.logits, seq, scale, &d_logits);
    (*grads)[out_w_].noalias() += tr.h2_out * d_logits.transpose();
    (*grads)[out_b_].col(0) += d_logits.rowwise().sum();
    Eigen::MatrixXd d_h2 = params_[out_w_] * d_logits;
    if (tr.mask_h.size()) d_h2.array() *= tr.mask_h.array();
    d_h2.array() *= (tr.h2.array() > 0).cast<double>();
    (*grads)[w2_].noalias() += tr.h1 * d_h2.transpose();
    (*grads)[b2_].col(0) += d_h2.rowwise().sum();
    Eigen::MatrixXd d_h1 = params_[w2_] * d_h2;
    d_h1.array() *= (tr.h1.array() > 0).cast<double>();
    (*grads)[w1_].noalias() += tr.x * d_h1.transpose();
    (*grads)[b1_].col(0) += d_h1.rowwise().sum();
    Eigen::MatrixXd d_x = params_[w1_] * d_h1;
    if (tr.mask_x.size()) d_x.array() *= tr.mask_x.array();
    encoder_.Backward(params_, seq.steps, tr.enc, d_x, grads);
  }
  return loss * scale;
}

}  // namespace whodunit::baselines
