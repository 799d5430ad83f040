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

#include "whodunit/nn/lstm_tagger.h"

#include <cmath>
#include <utility>

#include "whodunit/error.h"

namespace whodunit::nn {
namespace {

double Sigmoid(double x) {
  return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

}  // namespace

LstmState LstmStep(const Eigen::VectorXd& x, const LstmState& prev, const Eigen::MatrixXd& w,
                   const Eigen::VectorXd& b) {
  const Eigen::Index h = prev.h.size();
  if (prev.c.size() != h || w.rows() != h + x.size() || w.cols() != 4 * h || b.size() != 4 * h) {
    throw Error("LSTM step shape mismatch");
  }
  Eigen::VectorXd a = b;
  a.noalias() += w.topRows(h).transpose() * prev.h;
  a.noalias() += w.bottomRows(x.size()).transpose() * x;
  LstmState next{Eigen::VectorXd(h), Eigen::VectorXd(h)};
  for (Eigen::Index j = 0; j < h; ++j) {
    const double i = Sigmoid(a(j));
    const double f = Sigmoid(a(h + j));
    const double o = Sigmoid(a(2 * h + j));
    const double g = std::tanh(a(3 * h + j));
    next.c(j) = f * prev.c(j) + i * g;
    next.h(j) = o * std::tanh(next.c(j));
  }
  return next;
}

struct LstmTagger::Trace {
  FusionEncoder::Cache enc;
  Eigen::MatrixXd mask_x;  // empty without dropout
  Eigen::MatrixXd mask_h;
  Eigen::MatrixXd x;       // dropped-out LSTM input, n x T
  Eigen::MatrixXd gates;   // activated i, f, o, candidate; 4H x T
  Eigen::MatrixXd c;       // H x T
  Eigen::MatrixXd h;       // H x T
  Eigen::MatrixXd h_out;   // h after dropout
  Eigen::MatrixXd logits;  // 2 x T
};

LstmTagger::LstmTagger(const ModelConfig& config, std::optional<Eigen::MatrixXd> pretrained)
    : config_(config), pretrained_(std::move(pretrained)), encoder_(config_, &params_) {
  const int hd = config_.hidden_dim;
  lstm_w_ = params_.Add("lstm_w", hd + config_.fusion_dim, 4 * hd);
  lstm_b_ = params_.Add("lstm_b", 4 * hd);
  out_w_ = params_.Add("out_w", hd, 2);
  out_b_ = params_.Add("out_b", 2);
}

void LstmTagger::Initialize(uint64_t seed) {
  Rng rng(seed);
  encoder_.Initialize(rng, params_, pretrained_ ? &*pretrained_ : nullptr);
  FillUniform(rng, params_[lstm_w_], kInitScale);
  params_[lstm_b_].setZero();
  FillUniform(rng, params_[out_w_], kInitScale);
  params_[out_b_].setZero();
}

void LstmTagger::Forward(const CaseSequence& sequence, double dropout, uint64_t dropout_seed,
                         Trace* tr) const {
  const int hd = config_.hidden_dim;
  const int n = config_.fusion_dim;
  const Eigen::Index t_len = static_cast<Eigen::Index>(sequence.size());
  encoder_.Forward(params_, sequence.steps, &tr->enc);
  Rng rng(dropout_seed);
  tr->mask_x = DropoutMask(rng, n, t_len, dropout);
  tr->mask_h = DropoutMask(rng, hd, t_len, dropout);
  tr->x = tr->mask_x.size() ? Eigen::MatrixXd(tr->enc.x_h.cwiseProduct(tr->mask_x)) : tr->enc.x_h;

  const Eigen::MatrixXd& w = params_[lstm_w_];
  Eigen::MatrixXd a = params_[lstm_b_].col(0).replicate(1, t_len);
  a.noalias() += w.bottomRows(n).transpose() * tr->x;
  tr->gates.resize(4 * hd, t_len);
  tr->c.resize(hd, t_len);
  tr->h.resize(hd, t_len);
  Eigen::VectorXd h_prev = Eigen::VectorXd::Zero(hd);
  Eigen::VectorXd c_prev = Eigen::VectorXd::Zero(hd);
  Eigen::VectorXd at(4 * hd);
  for (Eigen::Index t = 0; t < t_len; ++t) {
    at = a.col(t);
    at.noalias() += w.topRows(hd).transpose() * h_prev;
    for (int j = 0; j < hd; ++j) {
      const double i = Sigmoid(at(j));
      const double f = Sigmoid(at(hd + j));
      const double o = Sigmoid(at(2 * hd + j));
      const double g = std::tanh(at(3 * hd + j));
      tr->gates(j, t) = i;
      tr->gates(hd + j, t) = f;
      tr->gates(2 * hd + j, t) = o;
      tr->gates(3 * hd + j, t) = g;
      const double c = f * c_prev(j) + i * g;
      tr->c(j, t) = c;
      tr->h(j, t) = o * std::tanh(c);
    }
    h_prev = tr->h.col(t);
    c_prev = tr->c.col(t);
  }
  tr->h_out = tr->mask_h.size() ? Eigen::MatrixXd(tr->h.cwiseProduct(tr->mask_h)) : tr->h;
  tr->logits = params_[out_b_].col(0).replicate(1, t_len);
  tr->logits.noalias() += params_[out_w_].transpose() * tr->h_out;
}

Eigen::VectorXd LstmTagger::Probabilities(const CaseSequence& sequence, double dropout,
                                          uint64_t dropout_seed) const {
  if (sequence.size() == 0) return {};
  Trace tr;
  Forward(sequence, dropout, dropout_seed, &tr);
  return PositiveProbability(tr.logits);
}

Prediction LstmTagger::Predict(const CaseSequence& sequence) const {
  return MakePrediction(Probabilities(sequence, 0.0, 0));
}

double LstmTagger::LossAndGrads(std::span<const CaseSequence* const> batch, double dropout,
                                uint64_t dropout_seed, ParamSet* grads) const {
  if (batch.empty()) throw Error("empty training batch");
  size_t total = 0;
  for (const auto* s : batch) total += s->size();
  if (total == 0) throw Error("training batch has no sentences");
  const double scale = 1.0 / static_cast<double>(total);
  const int hd = config_.hidden_dim;
  const int n = config_.fusion_dim;
  const Eigen::MatrixXd& w = params_[lstm_w_];
  double loss = 0;
  Trace tr;
  for (size_t k = 0; k < batch.size(); ++k) {
    const CaseSequence& seq = *batch[k];
    const Eigen::Index t_len = static_cast<Eigen::Index>(seq.size());
    if (t_len == 0) continue;
    Forward(seq, dropout, DeriveSeed(dropout_seed, {k}), &tr);
    Eigen::MatrixXd d_logits;
    loss += SoftmaxCrossEntropy(tr.logits, seq, scale, &d_logits);

    (*grads)[out_w_].noalias() += tr.h_out * d_logits.transpose();
    (*grads)[out_b_].col(0) += d_logits.rowwise().sum();
    Eigen::MatrixXd d_h = params_[out_w_] * d_logits;
    if (tr.mask_h.size()) d_h.array() *= tr.mask_h.array();

    Eigen::MatrixXd d_a(4 * hd, t_len);
    Eigen::VectorXd dh_next = Eigen::VectorXd::Zero(hd);
    Eigen::VectorXd dc_next = Eigen::VectorXd::Zero(hd);
    for (Eigen::Index t = t_len - 1; t >= 0; --t) {
      for (int j = 0; j < hd; ++j) {
        const double i = tr.gates(j, t);
        const double f = tr.gates(hd + j, t);
        const double o = tr.gates(2 * hd + j, t);
        const double g = tr.gates(3 * hd + j, t);
        const double c_prev = t > 0 ? tr.c(j, t - 1) : 0.0;
        const double tc = std::tanh(tr.c(j, t));
        const double dh = d_h(j, t) + dh_next(j);
        const double dc = dh * o * (1 - tc * tc) + dc_next(j);
        d_a(j, t) = dc * g * i * (1 - i);
        d_a(hd + j, t) = dc * c_prev * f * (1 - f);
        d_a(2 * hd + j, t) = dh * tc * o * (1 - o);
        d_a(3 * hd + j, t) = dc * i * (1 - g * g);
        dc_next(j) = dc * f;
      }
      dh_next.noalias() = w.topRows(hd) * d_a.col(t);
    }
    Eigen::MatrixXd& d_w = (*grads)[lstm_w_];
    if (t_len > 1) {
      d_w.topRows(hd).noalias() +=
          tr.h.leftCols(t_len - 1) * d_a.rightCols(t_len - 1).transpose();
    }
    d_w.bottomRows(n).noalias() += tr.x * d_a.transpose();
    (*grads)[lstm_b_].col(0) += d_a.rowwise().sum();
    Eigen::MatrixXd d_x = w.bottomRows(n) * d_a;
    if (tr.mask_x.size()) d_x.array() *= tr.mask_x.array();
    encoder_.Backward(params_, seq.steps, tr.enc, d_x, grads);
  }
  return loss * scale;
}

}  // namespace whodunit::nn
