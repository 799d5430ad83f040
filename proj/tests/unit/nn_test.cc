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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "../support/model_fixtures.h"
#include "whodunit/error.h"
#include "whodunit/nn/adam.h"
#include "whodunit/nn/checkpoint.h"
#include "whodunit/nn/fusion_encoder.h"
#include "whodunit/nn/lstm_tagger.h"
#include "whodunit/nn/trainer.h"
#include "whodunit/synth/generator.h"

namespace whodunit::nn {
namespace {

using testing::MiniConfig;
using testing::RandomCase;

ModelConfig Default() {
  ModelConfig c;
  c.vocab_size = 20;
  return c;
}

TEST(EncoderTest, ZeroEmbeddingsGiveZeros) {
  ModelConfig c = Default();
  LstmTagger model(c);
  model.Initialize(1);
  Rng rng(2);
  auto bundle = testing::RandomBundle(c, rng, 0);
  const int emb = model.params().Find("embedding");
  model.params()[emb].setZero();
  for (int w : c.conv_widths) model.params()[model.params().Find("conv" + std::to_string(w) + "_b")].setZero();
  Eigen::VectorXd x_s = model.encoder().EncodeSentence(model.params(), bundle);
  EXPECT_EQ(x_s.size(), 225);
  EXPECT_TRUE(x_s.isZero(0));
}

TEST(EncoderTest, ShortSentenceAndAllPad) {
  ModelConfig c = Default();
  c.max_tokens = 6;
  LstmTagger model(c);
  model.Initialize(3);
  Rng rng(4);
  auto bundle = testing::RandomBundle(c, rng, 0);
  bundle.token_ids = {5, 7, 0, 0, 0, 0};
  bundle.mask = {1, 1, 0, 0, 0, 0};
  Eigen::VectorXd x_s = model.encoder().EncodeSentence(model.params(), bundle);
  EXPECT_EQ(x_s.size(), 225);
  EXPECT_TRUE(x_s.allFinite());
  EXPECT_GT(x_s.head(75).maxCoeff(), 0.0);  // width-3 windows still pool
  bundle.mask.assign(6, 0);
  bundle.token_ids.assign(6, 0);
  EXPECT_TRUE(model.encoder().EncodeSentence(model.params(), bundle).isZero(0));
}

TEST(FusionTest, ZeroWeightsPassBiasThroughRelu) {
  ModelConfig c = Default();
  LstmTagger model(c);
  model.Initialize(5);
  ParamSet& p = model.params();
  for (const char* name : {"fusion_text", "fusion_visual", "fusion_audio"}) p[p.Find(name)].setZero();
  Rng rng(6);
  Eigen::VectorXd b(300);
  for (auto& x : b) x = rng.Normal();
  p[p.Find("fusion_bias")] = b;
  Eigen::VectorXd x_h = model.encoder().Fuse(p, Eigen::VectorXd::Ones(225), Eigen::VectorXd::Ones(1536),
                                             Eigen::VectorXd::Ones(65));
  EXPECT_EQ(x_h, b.cwiseMax(0.0));
  EXPECT_THROW(model.encoder().Fuse(p, Eigen::VectorXd::Ones(225), Eigen::VectorXd::Ones(10),
                                    Eigen::VectorXd::Ones(65)),
               Error);
}

TEST(FusionTest, NegativePreActivationsAreZero) {
  ModelConfig c = Default();
  LstmTagger model(c);
  model.Initialize(7);
  Rng rng(8);
  Eigen::VectorXd xs(225), xv(1536), xa(65);
  for (auto* v : {&xs, &xv, &xa}) for (auto& x : *v) x = rng.Normal();
  Eigen::VectorXd x_h = model.encoder().Fuse(model.params(), xs, xv, xa);
  EXPECT_GE(x_h.minCoeff(), 0.0);
  EXPECT_GT((x_h.array() == 0).count(), 0);
}

TEST(FusionTest, ModalityFlagsRemoveOnlyTheirSlice) {
  ModelConfig all = Default();
  EXPECT_EQ(all.FusionInputDim(), 1826);
  LstmTagger full(all);
  for (auto [flags, dropped] : std::vector<std::pair<const char*, const char*>>{
           {"T+A", "fusion_visual"}, {"T+V", "fusion_audio"}}) {
    ModelConfig c = all;
    c.modalities = Modalities::Parse(flags);
    LstmTagger part(c);
    EXPECT_EQ(part.params().Find(dropped), -1);
    EXPECT_EQ(part.params().size(), full.params().size() - 1);
    for (int i = 0; i < part.params().size(); ++i) {
      const int j = full.params().Find(part.params().name(i));
      ASSERT_GE(j, 0);
      EXPECT_EQ(part.params()[i].rows(), full.params()[j].rows());
      EXPECT_EQ(part.params()[i].cols(), full.params()[j].cols());
    }
  }
  ModelConfig text = all;
  text.modalities = Modalities::Parse("T");
  EXPECT_EQ(text.FusionInputDim(), 225);
  EXPECT_EQ(Modalities::Parse("tva"), Modalities{});
  EXPECT_THROW(Modalities::Parse("T+X"), ConfigError);
}

TEST(LstmStepTest, ZeroWeightsHalveCell) {
  const int h = 128;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(h + 300, 4 * h);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(4 * h);
  Rng rng(1);
  LstmState prev = LstmState::Zero(h);
  for (auto& x : prev.c) x = rng.Normal();
  for (auto& x : prev.h) x = rng.Normal();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(300);
  LstmState next = LstmStep(x, prev, w, b);
  ASSERT_EQ(next.h.size(), h);
  for (int i = 0; i < h; ++i) {
    EXPECT_EQ(next.c[i], 0.5 * prev.c[i]);
    EXPECT_EQ(next.h[i], 0.5 * std::tanh(0.5 * prev.c[i]));
  }
  LstmState zero = LstmStep(x, LstmState::Zero(h), w, b);
  EXPECT_TRUE(zero.h.isZero(0));
}

TEST(LstmTaggerTest, ProbabilitiesAndDeterminism) {
  Rng rng(9);
  ModelConfig c = MiniConfig(rng);
  LstmTagger model(c);
  model.Initialize(10);
  CaseSequence seq = RandomCase(c, rng, 7);
  Prediction a = model.Predict(seq);
  Prediction b = model.Predict(seq);
  ASSERT_EQ(a.probability.size(), 7u);
  EXPECT_EQ(a.probability, b.probability);
  for (size_t t = 0; t < 7; ++t) {
    EXPECT_GE(a.probability[t], 0.0);
    EXPECT_LE(a.probability[t], 1.0);
    EXPECT_EQ(a.label[t], a.probability[t] >= 0.5 ? 1 : 0);
  }
  Eigen::VectorXd p = model.Probabilities(seq, 0.0, 77);
  for (size_t t = 0; t < 7; ++t) EXPECT_EQ(p[t], a.probability[t]);
  Eigen::VectorXd dropped = model.Probabilities(seq, 0.5, 77);
  EXPECT_NE(dropped, p);
  EXPECT_EQ(dropped, model.Probabilities(seq, 0.5, 77));
  EXPECT_TRUE(model.Predict(CaseSequence{}).probability.empty());
}

TEST(LstmTaggerTest, Causality) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    ModelConfig c = MiniConfig(rng);
    LstmTagger model(c);
    model.Initialize(seed);
    CaseSequence seq = RandomCase(c, rng, 9);
    Prediction before = model.Predict(seq);
    const int t = rng.UniformRange(0, 8);
    seq.steps[t] = testing::RandomBundle(c, rng, 1);
    for (int k = t + 1; k < 9; ++k) seq.steps[k].x_v *= -3;
    Prediction after = model.Predict(seq);
    for (int k = 0; k < t; ++k) EXPECT_EQ(after.probability[k], before.probability[k]);
  }
}

TEST(LossTest, PerfectAndUniform) {
  CaseSequence seq;
  for (int g : {1, 0, 0}) {
    signal::FeatureBundle b;
    b.gold_label = g;
    seq.steps.push_back(b);
  }
  Eigen::MatrixXd d;
  Eigen::MatrixXd uniform = Eigen::MatrixXd::Zero(2, 3);
  EXPECT_NEAR(SoftmaxCrossEntropy(uniform, seq, 1.0, &d), 3 * std::log(2.0), 1e-12);
  Eigen::MatrixXd perfect(2, 3);
  perfect << -800, 800, 800, 800, -800, -800;
  EXPECT_EQ(SoftmaxCrossEntropy(perfect, seq, 1.0, &d), 0.0);
  perfect(0, 0) = std::nan("");
  EXPECT_THROW(SoftmaxCrossEntropy(perfect, seq, 1.0, &d), Error);

  Rng rng(3);
  ModelConfig c = MiniConfig(rng);
  LstmTagger model(c);
  model.params().SetZero();
  CaseSequence a = RandomCase(c, rng, 4), b = RandomCase(c, rng, 6, "ep#1");
  std::vector<const CaseSequence*> batch = {&a, &b};
  ParamSet grads = model.params().ZerosLike();
  EXPECT_NEAR(model.LossAndGrads(batch, 0.0, 0, &grads), std::log(2.0), 1e-12);
}

TEST(GradientTest, MatchesFiniteDifferences) {
  for (uint64_t seed = 0; seed < 6; ++seed) {
    Rng rng(100 + seed);
    ModelConfig c = MiniConfig(rng);
    if (seed % 3 == 1) c.modalities = Modalities::Parse("T+A");
    LstmTagger model(c);
    testing::Perturb(model.params(), rng, 0.5);
    CaseSequence a = RandomCase(c, rng, 4), b = RandomCase(c, rng, 3, "ep#1");
    std::vector<const CaseSequence*> batch = {&a, &b};
    auto result = testing::GradCheck(model, batch, seed % 2 ? 0.3 : 0.0, seed);
    EXPECT_LE(result.max_relative_error, 1e-4) << "worst tensor " << result.worst;
  }
}

TEST(AdamTest, ZeroGradientKeepsParameters) {
  ParamSet p;
  p.Add("w", 3, 2);
  p[0].setConstant(0.7);
  ParamSet g = p.ZerosLike();
  TrainConfig tc;
  Adam adam(p, tc);
  ParamSet before = p;
  for (int i = 0; i < 3; ++i) adam.Step(p, g);
  EXPECT_TRUE(p == before);
  EXPECT_EQ(adam.steps(), 3);
}

TEST(AdamTest, FirstStepMovesByLearningRate) {
  ParamSet p;
  p.Add("w", 4);
  ParamSet g = p.ZerosLike();
  g[0] << 3.0, -0.02, 1e3, -7;
  TrainConfig tc;
  AdamMoments m{p.ZerosLike(), p.ZerosLike()};
  AdamStep(p, g, m, 1, tc);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(p[0](i, 0), -0.001 * (g[0](i, 0) > 0 ? 1 : -1), 1e-8);
  }
  EXPECT_EQ(tc.learning_rate, 0.001);
  EXPECT_THROW(AdamStep(p, g, m, 0, tc), Error);
}

TEST(CheckpointTest, RoundTripIsBitExact) {
  Rng rng(4);
  ModelConfig c = MiniConfig(rng);
  LstmTagger model(c);
  model.Initialize(12);
  Checkpoint ck{c.ToKeyValues(), model.params()};
  std::stringstream a;
  WriteCheckpoint(a, ck);
  EXPECT_EQ(a.str().substr(0, 4), "WDNN");
  Checkpoint back = ReadCheckpoint(a);
  EXPECT_TRUE(back.params == model.params());
  EXPECT_EQ(back.config, ck.config);
  std::stringstream b;
  WriteCheckpoint(b, back);
  EXPECT_EQ(a.str(), b.str());
  std::istringstream extra(a.str() + "x");
  EXPECT_THROW(ReadCheckpoint(extra), Error);
  std::istringstream cut(a.str().substr(0, a.str().size() - 5));
  EXPECT_THROW(ReadCheckpoint(cut), Error);
}

// Cases of a lag-free synthetic dataset, where the cue is visible in every
// channel of the sentence itself.
struct Separable {
  std::vector<CaseSequence> train, test;
  ModelConfig config;
  Eigen::MatrixXd embeddings;
};

Separable MakeSeparable() {
  synth::SynthSpec spec;
  spec.n_episodes = 24;
  spec.min_sentences = spec.max_sentences = 20;
  spec.visual_dim = 16;
  spec.vocab_size = 10;
  spec.seed = 21;
  auto ds = synth::Generate(spec);
  auto f = synth::Featurize(ds, 8, 21);
  auto cases = GroupCaseSequences(f.records);
  Separable s;
  for (size_t i = 0; i < cases.size(); ++i) (i % 4 == 0 ? s.test : s.train).push_back(cases[i]);
  s.config.vocab_size = f.vocab.vocab.size();
  s.config.max_tokens = 8;
  s.config.visual_dim = 16;
  s.config.conv_channels = 8;
  s.config.fusion_dim = 16;
  s.config.hidden_dim = 8;
  s.embeddings = f.vocab.table;
  return s;
}

TEST(TrainTest, SeparableSetIsLearned) {
  Separable s = MakeSeparable();
  LstmTagger model(s.config, s.embeddings);
  TrainConfig tc;
  tc.runs = 1;
  tc.epochs = 15;
  tc.learning_rate = 0.005;
  tc.seed = 1;
  TrainResult r = Train(model, s.train, s.test, tc);
  EXPECT_GE(r.mean_best_f1, 0.95);
  EXPECT_EQ(r.epochs.size(), 15u);
}

TEST(TrainTest, LossDecreasesEarly) {
  Separable s = MakeSeparable();
  int decreasing = 0;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    LstmTagger model(s.config, s.embeddings);
    TrainConfig tc;
    tc.runs = 1;
    tc.epochs = 5;
    tc.seed = seed;
    TrainResult r = Train(model, s.train, s.test, tc);
    if (r.epochs.back().loss < r.epochs.front().loss) ++decreasing;
  }
  EXPECT_GE(decreasing, 4);
}

TEST(TrainTest, DeterministicCheckpoints) {
  Separable s = MakeSeparable();
  std::string bytes[2];
  for (auto& out : bytes) {
    LstmTagger model(s.config, s.embeddings);
    TrainConfig tc;
    tc.runs = 2;
    tc.epochs = 2;
    tc.seed = 5;
    Train(model, s.train, s.test, tc);
    std::stringstream buf;
    WriteCheckpoint(buf, Checkpoint{s.config.ToKeyValues(), model.params()});
    out = buf.str();
  }
  EXPECT_EQ(bytes[0], bytes[1]);
}

TEST(TrainTest, RejectsBadSplits) {
  Separable s = MakeSeparable();
  LstmTagger model(s.config, s.embeddings);
  TrainConfig tc;
  tc.epochs = 1;
  EXPECT_THROW(Train(model, {}, s.test, tc), Error);
  std::vector<CaseSequence> overlap = s.test;
  EXPECT_THROW(Train(model, overlap, s.test, tc), Error);
}

TEST(TrainTest, EpochCsv) {
  EpochRecord r{1, 2, 0.25, eval::PrfFromCounts(1, 1, 0)};
  std::ostringstream out;
  WriteEpochCsv(out, std::vector{r});
  EXPECT_EQ(out.str(), "run,epoch,loss,precision,recall,f1\n1,2,0.25,0.500000,1.000000,0.666667\n");
}

}  // namespace
}  // namespace whodunit::nn
