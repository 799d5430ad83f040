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

#include "whodunit/nn/fusion_encoder.h"

#include <limits>
#include <string>

#include "whodunit/error.h"
#include "whodunit/signal/vocab.h"

namespace whodunit::nn {

void FillUniform(Rng& rng, Eigen::MatrixXd& m, double scale) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = rng.Uniform(-scale, scale);
  }
}

FusionEncoder::FusionEncoder(const ModelConfig& config, ParamSet* params) : config_(config) {
  config_.Validate();
  const int e = config_.embedding_dim;
  const int c = config_.conv_channels;
  const int n = config_.fusion_dim;
  embedding_ = params->Add("embedding", config_.vocab_size, e);
  for (int w : config_.conv_widths) {
    conv_w_.push_back(params->Add("conv" + std::to_string(w) + "_w", w * e, c));
    conv_b_.push_back(params->Add("conv" + std::to_string(w) + "_b", c));
  }
  fusion_text_ = params->Add("fusion_text", config_.SentenceDim(), n);
  if (config_.modalities.visual) fusion_visual_ = params->Add("fusion_visual", config_.visual_dim, n);
  if (config_.modalities.audio) fusion_audio_ = params->Add("fusion_audio", config_.acoustic_dim, n);
  fusion_bias_ = params->Add("fusion_bias", n);
}

void FusionEncoder::Initialize(Rng& rng, ParamSet& params,
                               const Eigen::MatrixXd* embeddings) const {
  Eigen::MatrixXd& emb = params[embedding_];
  if (embeddings != nullptr) {
    if (embeddings->rows() != emb.rows() || embeddings->cols() != emb.cols()) {
      throw Error("pretrained embedding table is " + std::to_string(embeddings->rows()) + "x" +
                  std::to_string(embeddings->cols()) + ", model expects " +
                  std::to_string(emb.rows()) + "x" + std::to_string(emb.cols()));
    }
    emb = *embeddings;
  } else {
    FillUniform(rng, emb, kInitScale);
  }
  emb.row(signal::Vocab::kPadId).setZero();
  for (size_t b = 0; b < conv_w_.size(); ++b) {
    FillUniform(rng, params[conv_w_[b]], kInitScale);
    params[conv_b_[b]].setZero();
  }
  FillUniform(rng, params[fusion_text_], kInitScale);
  if (fusion_visual_ >= 0) FillUniform(rng, params[fusion_visual_], kInitScale);
  if (fusion_audio_ >= 0) FillUniform(rng, params[fusion_audio_], kInitScale);
  params[fusion_bias_].setZero();
}

void FusionEncoder::CheckBundle(const signal::FeatureBundle& bundle) const {
  if (static_cast<int>(bundle.token_ids.size()) != config_.max_tokens ||
      bundle.mask.size() != bundle.token_ids.size()) {
    throw Error("sentence has " + std::to_string(bundle.token_ids.size()) +
                " token slots, model expects " + std::to_string(config_.max_tokens));
  }
  for (size_t p = 0; p < bundle.token_ids.size(); ++p) {
    if (bundle.mask[p] && (bundle.token_ids[p] < 0 || bundle.token_ids[p] >= config_.vocab_size)) {
      throw Error("token id " + std::to_string(bundle.token_ids[p]) + " outside the vocabulary");
    }
  }
  if (config_.modalities.visual && bundle.x_v.size() != config_.visual_dim) {
    throw Error("visual vector has " + std::to_string(bundle.x_v.size()) + " values, model expects " +
                std::to_string(config_.visual_dim));
  }
  if (config_.modalities.audio && bundle.x_a.size() != config_.acoustic_dim) {
    throw Error("acoustic vector has " + std::to_string(bundle.x_a.size()) +
                " values, model expects " + std::to_string(config_.acoustic_dim));
  }
}

Eigen::MatrixXd FusionEncoder::Embed(const ParamSet& params,
                                     const signal::FeatureBundle& bundle) const {
  const Eigen::MatrixXd& emb = params[embedding_];
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(config_.max_tokens, config_.embedding_dim);
  for (int p = 0; p < config_.max_tokens; ++p) {
    if (bundle.mask[p]) x.row(p) = emb.row(bundle.token_ids[p]);
  }
  return x;
}

namespace {

// Prefix counts of real tokens, so window [s, s+w) is valid when
// prefix[s+w] > prefix[s].
std::vector<int> MaskPrefix(const std::vector<uint8_t>& mask) {
  std::vector<int> prefix(mask.size() + 1, 0);
  for (size_t p = 0; p < mask.size(); ++p) prefix[p + 1] = prefix[p] + (mask[p] ? 1 : 0);
  return prefix;
}

}  // namespace

void FusionEncoder::EncodeInto(const ParamSet& params, const signal::FeatureBundle& bundle,
                               Eigen::Ref<Eigen::VectorXd> x_s, SentenceCache* cache) const {
  const int e = config_.embedding_dim;
  const int c = config_.conv_channels;
  const int len = config_.max_tokens;
  const Eigen::MatrixXd x = Embed(params, bundle);
  const std::vector<int> prefix = MaskPrefix(bundle.mask);
  cache->window_lo.assign(conv_w_.size(), 0);
  cache->argmax.assign(conv_w_.size() * c, -1);
  x_s.setZero();
  for (size_t b = 0; b < conv_w_.size(); ++b) {
    const int w = config_.conv_widths[b];
    int lo = -1;
    int hi = -1;
    for (int s = 0; s + w <= len; ++s) {
      if (prefix[s + w] > prefix[s]) {
        if (lo < 0) lo = s;
        hi = s;
      }
    }
    if (lo < 0) continue;
    cache->window_lo[b] = lo;
    const int nw = hi - lo + 1;
    const Eigen::MatrixXd& weight = params[conv_w_[b]];
    Eigen::MatrixXd z = Eigen::VectorXd::Ones(nw) * params[conv_b_[b]].col(0).transpose();
    for (int k = 0; k < w; ++k) {
      z.noalias() += x.middleRows(lo + k, nw) * weight.middleRows(k * e, e);
    }
    for (int ch = 0; ch < c; ++ch) {
      double best = -std::numeric_limits<double>::infinity();
      int arg = -1;
      for (int s = lo; s <= hi; ++s) {
        if (prefix[s + w] == prefix[s]) continue;
        if (z(s - lo, ch) > best) {
          best = z(s - lo, ch);
          arg = s;
        }
      }
      if (best > 0) {
        x_s(b * c + ch) = best;
        cache->argmax[b * c + ch] = arg;
      }
    }
  }
}

Eigen::VectorXd FusionEncoder::EncodeSentence(const ParamSet& params,
                                              const signal::FeatureBundle& bundle) const {
  CheckBundle(bundle);
  Eigen::VectorXd x_s(config_.SentenceDim());
  SentenceCache cache;
  EncodeInto(params, bundle, x_s, &cache);
  return x_s;
}

Eigen::VectorXd FusionEncoder::Fuse(const ParamSet& params, const Eigen::VectorXd& x_s,
                                    const Eigen::VectorXd& x_v, const Eigen::VectorXd& x_a) const {
  if (x_s.size() != config_.SentenceDim()) throw Error("sentence vector has the wrong size");
  Eigen::VectorXd pre = params[fusion_bias_].col(0);
  pre.noalias() += params[fusion_text_].transpose() * x_s;
  if (fusion_visual_ >= 0) {
    if (x_v.size() != config_.visual_dim) throw Error("visual vector has the wrong size");
    pre.noalias() += params[fusion_visual_].transpose() * x_v;
  }
  if (fusion_audio_ >= 0) {
    if (x_a.size() != config_.acoustic_dim) throw Error("acoustic vector has the wrong size");
    pre.noalias() += params[fusion_audio_].transpose() * x_a;
  }
  return pre.cwiseMax(0.0);
}

void FusionEncoder::Forward(const ParamSet& params, std::span<const signal::FeatureBundle> steps,
                            Cache* cache) const {
  const Eigen::Index t_len = static_cast<Eigen::Index>(steps.size());
  cache->sentences.resize(steps.size());
  cache->x_s.resize(config_.SentenceDim(), t_len);
  if (fusion_visual_ >= 0) cache->x_v.resize(config_.visual_dim, t_len);
  if (fusion_audio_ >= 0) cache->x_a.resize(config_.acoustic_dim, t_len);
  for (Eigen::Index t = 0; t < t_len; ++t) {
    CheckBundle(steps[t]);
    EncodeInto(params, steps[t], cache->x_s.col(t), &cache->sentences[t]);
    if (fusion_visual_ >= 0) cache->x_v.col(t) = steps[t].x_v;
    if (fusion_audio_ >= 0) cache->x_a.col(t) = steps[t].x_a;
  }
  cache->pre = params[fusion_bias_].col(0).replicate(1, t_len);
  cache->pre.noalias() += params[fusion_text_].transpose() * cache->x_s;
  if (fusion_visual_ >= 0) cache->pre.noalias() += params[fusion_visual_].transpose() * cache->x_v;
  if (fusion_audio_ >= 0) cache->pre.noalias() += params[fusion_audio_].transpose() * cache->x_a;
  cache->x_h = cache->pre.cwiseMax(0.0);
}

void FusionEncoder::Backward(const ParamSet& params, std::span<const signal::FeatureBundle> steps,
                             const Cache& cache, const Eigen::MatrixXd& d_xh,
                             ParamSet* grads) const {
  const int e = config_.embedding_dim;
  const int c = config_.conv_channels;
  const Eigen::MatrixXd d_pre = (cache.pre.array() > 0).cast<double>() * d_xh.array();
  (*grads)[fusion_bias_].col(0) += d_pre.rowwise().sum();
  (*grads)[fusion_text_].noalias() += cache.x_s * d_pre.transpose();
  if (fusion_visual_ >= 0) (*grads)[fusion_visual_].noalias() += cache.x_v * d_pre.transpose();
  if (fusion_audio_ >= 0) (*grads)[fusion_audio_].noalias() += cache.x_a * d_pre.transpose();
  const Eigen::MatrixXd d_xs = params[fusion_text_] * d_pre;

  Eigen::MatrixXd& d_emb = (*grads)[embedding_];
  for (size_t t = 0; t < steps.size(); ++t) {
    const SentenceCache& sc = cache.sentences[t];
    const signal::FeatureBundle& bundle = steps[t];
    Eigen::MatrixXd x;  // built lazily; most sentences have some active channel
    Eigen::MatrixXd d_x;
    for (size_t b = 0; b < conv_w_.size(); ++b) {
      const int w = config_.conv_widths[b];
      int lo = sc.window_lo[b];
      int hi = -1;
      for (int ch = 0; ch < c; ++ch) hi = std::max(hi, sc.argmax[b * c + ch]);
      if (hi < 0) continue;
      const int nw = hi - lo + 1;
      Eigen::MatrixXd d_z = Eigen::MatrixXd::Zero(nw, c);
      for (int ch = 0; ch < c; ++ch) {
        const int arg = sc.argmax[b * c + ch];
        if (arg < 0) continue;
        const double g = d_xs(b * c + ch, t);
        d_z(arg - lo, ch) = g;
        (*grads)[conv_b_[b]](ch, 0) += g;
      }
      if (x.size() == 0) {
        x = Embed(params, bundle);
        d_x = Eigen::MatrixXd::Zero(x.rows(), x.cols());
      }
      const Eigen::MatrixXd& weight = params[conv_w_[b]];
      Eigen::MatrixXd& d_weight = (*grads)[conv_w_[b]];
      for (int k = 0; k < w; ++k) {
        d_weight.middleRows(k * e, e).noalias() += x.middleRows(lo + k, nw).transpose() * d_z;
        d_x.middleRows(lo + k, nw).noalias() += d_z * weight.middleRows(k * e, e).transpose();
      }
    }
    if (d_x.size() == 0) continue;
    for (int p = 0; p < config_.max_tokens; ++p) {
      if (bundle.mask[p]) d_emb.row(bundle.token_ids[p]) += d_x.row(p);
    }
  }
}

}  // namespace whodunit::nn
