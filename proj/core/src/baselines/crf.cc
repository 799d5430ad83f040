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

#include "whodunit/baselines/crf.h"

#include <cmath>
#include <string>
#include <utility>

#include "whodunit/error.h"

namespace whodunit::baselines {
namespace {

double LogSumExp(double a, double b) {
  const double hi = std::max(a, b);
  if (hi == -INFINITY) return hi;
  return hi + std::log(std::exp(a - hi) + std::exp(b - hi));
}

// alpha(y, t): log-sum of scores of prefixes ending in y at t.
Eigen::MatrixXd ForwardMessages(const CrfScores& s) {
  const Eigen::Index t_len = s.length();
  Eigen::MatrixXd alpha(2, t_len);
  alpha.col(0) = s.unary.col(0);
  for (Eigen::Index t = 1; t < t_len; ++t) {
    for (int y = 0; y < 2; ++y) {
      alpha(y, t) = s.unary(y, t) + LogSumExp(alpha(0, t - 1) + s.transition(0, y),
                                              alpha(1, t - 1) + s.transition(1, y));
    }
  }
  return alpha;
}

// beta(y, t): log-sum of scores of suffixes after t given y at t.
Eigen::MatrixXd BackwardMessages(const CrfScores& s) {
  const Eigen::Index t_len = s.length();
  Eigen::MatrixXd beta(2, t_len);
  beta.col(t_len - 1).setZero();
  for (Eigen::Index t = t_len - 2; t >= 0; --t) {
    for (int y = 0; y < 2; ++y) {
      beta(y, t) = LogSumExp(s.transition(y, 0) + s.unary(0, t + 1) + beta(0, t + 1),
                             s.transition(y, 1) + s.unary(1, t + 1) + beta(1, t + 1));
    }
  }
  return beta;
}

void CheckScores(const CrfScores& s) {
  if (s.unary.rows() != 2) throw Error("CRF unary scores must have two rows");
  if (!s.unary.allFinite() || !s.transition.allFinite()) throw Error("non-finite CRF potentials");
}

}  // namespace

double CrfScore(const CrfScores& scores, const std::vector<int>& labels) {
  if (static_cast<Eigen::Index>(labels.size()) != scores.length()) {
    throw Error("label sequence length differs from the chain length");
  }
  double total = 0;
  for (size_t t = 0; t < labels.size(); ++t) {
    total += scores.unary(labels[t], t);
    if (t > 0) total += scores.transition(labels[t - 1], labels[t]);
  }
  return total;
}

double CrfLogPartitionForward(const CrfScores& scores) {
  CheckScores(scores);
  if (scores.length() == 0) return 0;
  const Eigen::MatrixXd alpha = ForwardMessages(scores);
  const Eigen::Index last = scores.length() - 1;
  return LogSumExp(alpha(0, last), alpha(1, last));
}

double CrfLogPartitionBackward(const CrfScores& scores) {
  CheckScores(scores);
  if (scores.length() == 0) return 0;
  const Eigen::MatrixXd beta = BackwardMessages(scores);
  return LogSumExp(scores.unary(0, 0) + beta(0, 0), scores.unary(1, 0) + beta(1, 0));
}

CrfMarginals CrfForwardBackward(const CrfScores& scores) {
  CheckScores(scores);
  CrfMarginals m;
  const Eigen::Index t_len = scores.length();
  m.node.resize(2, t_len);
  if (t_len == 0) return m;
  const Eigen::MatrixXd alpha = ForwardMessages(scores);
  const Eigen::MatrixXd beta = BackwardMessages(scores);
  m.log_z = LogSumExp(alpha(0, t_len - 1), alpha(1, t_len - 1));
  if (!std::isfinite(m.log_z)) throw Error("non-finite CRF partition function");
  for (Eigen::Index t = 0; t < t_len; ++t) {
    for (int y = 0; y < 2; ++y) m.node(y, t) = std::exp(alpha(y, t) + beta(y, t) - m.log_z);
  }
  for (Eigen::Index t = 1; t < t_len; ++t) {
    Eigen::Matrix2d e;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        e(a, b) = std::exp(alpha(a, t - 1) + scores.transition(a, b) + scores.unary(b, t) +
                           beta(b, t) - m.log_z);
      }
    }
    m.edge.push_back(e);
  }
  return m;
}

std::vector<int> CrfDecode(const CrfScores& scores) {
  CheckScores(scores);
  const Eigen::Index t_len = scores.length();
  if (t_len == 0) return {};
  // best(y, t): best suffix score after t given y at t.
  Eigen::MatrixXd best(2, t_len);
  best.col(t_len - 1).setZero();
  for (Eigen::Index t = t_len - 2; t >= 0; --t) {
    for (int y = 0; y < 2; ++y) {
      best(y, t) = std::max(scores.transition(y, 0) + scores.unary(0, t + 1) + best(0, t + 1),
                            scores.transition(y, 1) + scores.unary(1, t + 1) + best(1, t + 1));
    }
  }
  std::vector<int> labels(t_len);
  for (Eigen::Index t = 0; t < t_len; ++t) {
    double v[2];
    for (int y = 0; y < 2; ++y) {
      v[y] = scores.unary(y, t) + best(y, t) + (t > 0 ? scores.transition(labels[t - 1], y) : 0.0);
    }
    labels[t] = v[1] > v[0] ? 1 : 0;
  }
  return labels;
}

CrfTagger::CrfTagger(const nn::ModelConfig& config, Eigen::MatrixXd embeddings)
    : config_(config), embeddings_(std::move(embeddings)) {
  config_.Validate();
  if (embeddings_.rows() != config_.vocab_size || embeddings_.cols() != config_.embedding_dim) {
    throw Error("CRF embedding table does not match the model vocabulary");
  }
  feature_dim_ = config_.crf_tokens * config_.embedding_dim +
                 (config_.modalities.visual ? config_.visual_dim : 0) +
                 (config_.modalities.audio ? config_.acoustic_dim : 0) + 1;
  unary_ = params_.Add("crf_unary", feature_dim_, 2);
  transition_ = params_.Add("crf_transition", 2, 2);
}

void CrfTagger::Initialize(uint64_t) { params_.SetZero(); }

Eigen::MatrixXd CrfTagger::Features(const nn::CaseSequence& sequence) const {
  const int e = config_.embedding_dim;
  const int k = config_.crf_tokens;
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(feature_dim_, static_cast<Eigen::Index>(sequence.size()));
  for (size_t t = 0; t < sequence.size(); ++t) {
    const signal::FeatureBundle& b = sequence.steps[t];
    if (b.token_ids.size() != b.mask.size()) throw Error("token ids and mask differ in length");
    const int limit = std::min<int>(k, static_cast<int>(b.token_ids.size()));
    for (int p = 0; p < limit; ++p) {
      if (!b.mask[p]) continue;
      const int id = b.token_ids[p];
      if (id < 0 || id >= embeddings_.rows()) throw Error("token id outside the vocabulary");
      f.col(t).segment(p * e, e) = embeddings_.row(id).transpose();
    }
    int offset = k * e;
    if (config_.modalities.visual) {
      if (b.x_v.size() != config_.visual_dim) throw Error("visual vector has the wrong size");
      f.col(t).segment(offset, config_.visual_dim) = b.x_v;
      offset += config_.visual_dim;
    }
    if (config_.modalities.audio) {
      if (b.x_a.size() != config_.acoustic_dim) throw Error("acoustic vector has the wrong size");
      f.col(t).segment(offset, config_.acoustic_dim) = b.x_a;
      offset += config_.acoustic_dim;
    }
    f(offset, t) = 1.0;
  }
  return f;
}

CrfScores CrfTagger::Scores(const Eigen::MatrixXd& features) const {
  CrfScores s;
  s.unary = params_[unary_].transpose() * features;
  s.transition = params_[transition_];
  return s;
}

double CrfTagger::LogLikelihood(const nn::CaseSequence& sequence, nn::ParamSet* grads) const {
  if (sequence.size() == 0) throw Error("CRF chain must have at least one sentence");
  const Eigen::MatrixXd f = Features(sequence);
  const CrfScores s = Scores(f);
  std::vector<int> gold;
  for (const auto& b : sequence.steps) gold.push_back(b.gold_label);
  const CrfMarginals m = CrfForwardBackward(s);
  const double ll = CrfScore(s, gold) - m.log_z;
  if (!std::isfinite(ll)) throw Error("non-finite CRF likelihood on case " + sequence.key);
  if (grads != nullptr) {
    Eigen::MatrixXd residual = -m.node;  // observed - expected, 2 x T
    for (size_t t = 0; t < gold.size(); ++t) residual(gold[t], t) += 1.0;
    (*grads)[unary_].noalias() += f * residual.transpose();
    Eigen::MatrixXd& d_trans = (*grads)[transition_];
    for (size_t t = 1; t < gold.size(); ++t) {
      d_trans(gold[t - 1], gold[t]) += 1.0;
      d_trans -= m.edge[t - 1];
    }
  }
  return ll;
}

double CrfTagger::LossAndGrads(std::span<const nn::CaseSequence* const> batch, double,
                               uint64_t, nn::ParamSet* grads) const {
  if (batch.empty()) throw Error("empty training batch");
  size_t total = 0;
  for (const auto* s : batch) total += s->size();
  if (total == 0) throw Error("training batch has no sentences");
  const double scale = 1.0 / static_cast<double>(total);
  nn::ParamSet local = params_.ZerosLike();
  double ll = 0;
  for (const auto* s : batch) {
    if (s->size() > 0) ll += LogLikelihood(*s, &local);
  }
  for (int i = 0; i < params_.size(); ++i) {
    (*grads)[i] += -scale * local[i] + config_.crf_l2 * params_[i];
  }
  return -ll * scale + 0.5 * config_.crf_l2 * params_.SquaredNorm();
}

nn::Prediction CrfTagger::Predict(const nn::CaseSequence& sequence) const {
  nn::Prediction p;
  if (sequence.size() == 0) return p;
  const CrfScores s = Scores(Features(sequence));
  const CrfMarginals m = CrfForwardBackward(s);
  p.probability.assign(m.node.cols(), 0.0);
  for (Eigen::Index t = 0; t < m.node.cols(); ++t) p.probability[t] = m.node(1, t);
  p.label = CrfDecode(s);
  return p;
}

}  // namespace whodunit::baselines
