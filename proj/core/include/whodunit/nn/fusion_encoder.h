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

#ifndef WHODUNIT_NN_FUSION_ENCODER_H_
#define WHODUNIT_NN_FUSION_ENCODER_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "whodunit/nn/model_config.h"
#include "whodunit/nn/param_set.h"
#include "whodunit/random.h"
#include "whodunit/signal/feature_cache.h"

namespace whodunit::nn {

// Shared front end of the neural taggers: a convolutional sentence encoder
// (embedding lookup, one filter bank per width, ReLU, max-pool over valid
// windows) followed by modality fusion x_h = ReLU([x_s; x_v; x_a] W^h + b^h).
//
// A convolution window is valid when it covers at least one real token. A
// sentence without real tokens encodes to zeros. Fusion weights are kept as
// one block per modality (rows of W^h); a disabled modality has no block.
class FusionEncoder {
 public:
  // Registers the encoder tensors in `params`.
  FusionEncoder(const ModelConfig& config, ParamSet* params);

  // Uniform(-0.08, 0.08) weights, zero biases. `embeddings` (vocab x dim),
  // when given, initializes the table; the padding row is always zero.
  void Initialize(Rng& rng, ParamSet& params, const Eigen::MatrixXd* embeddings) const;

  struct SentenceCache {
    std::vector<int> window_lo;  // per bank
    std::vector<int> argmax;     // per bank * channel; -1 when the pooled value is 0
  };
  struct Cache {
    std::vector<SentenceCache> sentences;
    Eigen::MatrixXd x_s;  // sentence_dim x T
    Eigen::MatrixXd x_v;  // visual_dim x T (empty when disabled)
    Eigen::MatrixXd x_a;  // acoustic_dim x T (empty when disabled)
    Eigen::MatrixXd pre;  // fusion_dim x T
    Eigen::MatrixXd x_h;  // fusion_dim x T
  };

  void Forward(const ParamSet& params, std::span<const signal::FeatureBundle> steps,
               Cache* cache) const;
  // Adds the gradient of the upstream loss into `grads` given d loss / d x_h.
  void Backward(const ParamSet& params, std::span<const signal::FeatureBundle> steps,
                const Cache& cache, const Eigen::MatrixXd& d_xh, ParamSet* grads) const;

  // Sentence representation x_s alone.
  Eigen::VectorXd EncodeSentence(const ParamSet& params, const signal::FeatureBundle& bundle) const;
  // Fusion of precomputed modality vectors. Disabled modalities are ignored
  // (pass empty vectors); enabled ones must have the configured sizes.
  Eigen::VectorXd Fuse(const ParamSet& params, const Eigen::VectorXd& x_s,
                       const Eigen::VectorXd& x_v, const Eigen::VectorXd& x_a) const;

  int embedding_index() const { return embedding_; }

 private:
  Eigen::MatrixXd Embed(const ParamSet& params, const signal::FeatureBundle& bundle) const;
  void EncodeInto(const ParamSet& params, const signal::FeatureBundle& bundle,
                  Eigen::Ref<Eigen::VectorXd> x_s, SentenceCache* cache) const;
  void CheckBundle(const signal::FeatureBundle& bundle) const;

  ModelConfig config_;
  int embedding_ = -1;
  std::vector<int> conv_w_;
  std::vector<int> conv_b_;
  int fusion_text_ = -1;
  int fusion_visual_ = -1;
  int fusion_audio_ = -1;
  int fusion_bias_ = -1;
};

// Draws every entry of `m` from Uniform(-scale, scale).
void FillUniform(Rng& rng, Eigen::MatrixXd& m, double scale);

inline constexpr double kInitScale = 0.08;

}  // namespace whodunit::nn

#endif  // WHODUNIT_NN_FUSION_ENCODER_H_
