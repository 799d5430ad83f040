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

#include "../support/crf_oracle.h"
#include "../support/model_fixtures.h"
#include "whodunit/baselines/crf.h"
#include "whodunit/baselines/mlp_tagger.h"
#include "whodunit/baselines/models.h"
#include "whodunit/baselines/pronoun.h"
#include "whodunit/corpus/tokenize.h"
#include "whodunit/error.h"

namespace whodunit::baselines {
namespace {

TEST(PronounTest, Examples) {
  PronounLexicon lex;
  EXPECT_EQ(lex.words().size(), 31u);
  EXPECT_EQ(ProLabel(corpus::Tokenize("I was everywhere"), lex), 1);
  EXPECT_EQ(ProLabel(corpus::Tokenize("Tooth filling 0857"), lex), 0);
  EXPECT_EQ(ProLabel(std::vector<std::string>{}, lex), 0);
  for (const auto& w : lex.words()) {
    for (char c : w) EXPECT_FALSE(std::isupper(static_cast<unsigned char>(c)));
  }
}

TEST(PronounTest, OrderAndDuplicationInvariant) {
  PronounLexicon lex;
  std::vector<std::string> a = {"the", "gun", "was", "hers"};
  std::vector<std::string> b = {"hers", "hers", "was", "gun", "the"};
  EXPECT_EQ(ProLabel(a, lex), ProLabel(b, lex));
  std::vector<std::string> c = {"nothing", "here", "nothing"};
  std::vector<std::string> d = {"here", "nothing"};
  EXPECT_EQ(ProLabel(c, lex), ProLabel(d, lex));
  EXPECT_EQ(ProLabel(c, lex), 0);
}

TEST(PronounTest, LexiconOverride) {
  std::string text;
  for (int i = 0; i < 31; ++i) text += "  p" + std::to_string(i) + "\n\n";
  std::istringstream in(text);
  PronounLexicon lex = PronounLexicon::Read(in);
  EXPECT_TRUE(lex.Contains("p30"));
  EXPECT_FALSE(lex.Contains("he"));
  std::istringstream short_list("a\nb\n");
  EXPECT_THROW(PronounLexicon::Read(short_list), ConfigError);
  std::istringstream upper(text + "X\n");
  EXPECT_THROW(PronounLexicon::Read(upper), ConfigError);
}

TEST(MlpTest, ZeroWeightsGiveHalf) {
  Rng rng(1);
  nn::ModelConfig c = testing::MiniConfig(rng);
  MlpTagger model(c);
  model.params().SetZero();
  auto seq = testing::RandomCase(c, rng, 5);
  for (double p : model.Predict(seq).probability) EXPECT_EQ(p, 0.5);
  EXPECT_EQ(kMlpLearningRate, 0.0001);
}

TEST(MlpTest, SentencesAreIndependent) {
  Rng rng(2);
  nn::ModelConfig c = testing::MiniConfig(rng);
  MlpTagger model(c);
  model.Initialize(3);
  auto seq = testing::RandomCase(c, rng, 6);
  auto before = model.Predict(seq).probability;
  nn::CaseSequence shuffled = seq;
  std::swap(shuffled.steps[0], shuffled.steps[5]);
  std::swap(shuffled.steps[1], shuffled.steps[3]);
  auto after = model.Predict(shuffled).probability;
  EXPECT_EQ(after[5], before[0]);
  EXPECT_EQ(after[0], before[5]);
  EXPECT_EQ(after[3], before[1]);
  EXPECT_EQ(after[2], before[2]);
}

TEST(MlpTest, GradientsMatchFiniteDifferences) {
  for (uint64_t seed = 0; seed < 4; ++seed) {
    Rng rng(30 + seed);
    nn::ModelConfig c = testing::MiniConfig(rng);
    MlpTagger model(c);
    testing::Perturb(model.params(), rng, 0.5);
    auto a = testing::RandomCase(c, rng, 3), b = testing::RandomCase(c, rng, 2, "ep#1");
    std::vector<const nn::CaseSequence*> batch = {&a, &b};
    auto r = testing::GradCheck(model, batch, seed % 2 ? 0.4 : 0.0, seed);
    EXPECT_LE(r.max_relative_error, 1e-4) << r.worst;
  }
}

CrfScores RandomScores(Rng& rng, int t_len, bool integral) {
  CrfScores s;
  s.unary.resize(2, t_len);
  auto draw = [&] { return integral ? static_cast<double>(rng.UniformRange(-2, 2)) : rng.Normal(0, 2); };
  for (auto& x : s.unary.reshaped()) x = draw();
  for (auto& x : s.transition.reshaped()) x = draw();
  return s;
}

TEST(CrfTest, LengthOneUniform) {
  CrfScores s;
  s.unary = Eigen::MatrixXd::Zero(2, 1);
  EXPECT_NEAR(CrfScore(s, {1}) - CrfLogPartitionForward(s), -std::log(2.0), 1e-15);
}

TEST(CrfTest, MatchesEnumeration) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int t_len = rng.UniformRange(1, 10);
    CrfScores s = RandomScores(rng, t_len, trial % 3 == 0);
    auto oracle = testing::EnumerateCrf(s);
    CrfMarginals m = CrfForwardBackward(s);
    EXPECT_NEAR(m.log_z, oracle.log_z, 1e-9);
    EXPECT_NEAR(CrfLogPartitionBackward(s), CrfLogPartitionForward(s), 1e-9);
    for (int t = 0; t < t_len; ++t) {
      EXPECT_NEAR(m.node(0, t) + m.node(1, t), 1.0, 1e-9);
      EXPECT_NEAR(m.node(1, t), oracle.node(1, t), 1e-9);
    }
    for (const auto& e : m.edge) EXPECT_NEAR(e.sum(), 1.0, 1e-9);
    EXPECT_EQ(CrfDecode(s), oracle.best) << "trial " << trial;
  }
}

TEST(CrfTest, DecodeSpecialCases) {
  Rng rng(4);
  CrfScores s = RandomScores(rng, 8, false);
  s.transition.setZero();
  auto labels = CrfDecode(s);
  for (int t = 0; t < 8; ++t) EXPECT_EQ(labels[t], s.unary(1, t) > s.unary(0, t) ? 1 : 0);
  CrfScores tie;
  tie.unary = Eigen::MatrixXd::Zero(2, 4);
  EXPECT_EQ(CrfDecode(tie), std::vector<int>(4, 0));
  CrfScores empty;
  empty.unary.resize(2, 0);
  EXPECT_TRUE(CrfDecode(empty).empty());
}

struct CrfFixture {
  nn::ModelConfig config;
  Eigen::MatrixXd embeddings;
  std::vector<nn::CaseSequence> cases;
};

CrfFixture MakeCrf(uint64_t seed, const char* modalities) {
  Rng rng(seed);
  CrfFixture f;
  f.config = testing::MiniConfig(rng);
  f.config.modalities = nn::Modalities::Parse(modalities);
  f.embeddings = Eigen::MatrixXd(f.config.vocab_size, f.config.embedding_dim);
  for (auto& x : f.embeddings.reshaped()) x = rng.Normal();
  f.embeddings.row(0).setZero();
  for (int i = 0; i < 3; ++i) {
    f.cases.push_back(testing::RandomCase(f.config, rng, rng.UniformRange(1, 6), "ep#" + std::to_string(i)));
  }
  return f;
}

TEST(CrfTaggerTest, LogLikelihoodMatchesEnumeration) {
  for (const char* mods : {"T", "T+V+A"}) {
    CrfFixture f = MakeCrf(8, mods);
    CrfTagger crf(f.config, f.embeddings);
    Rng rng(9);
    testing::Perturb(crf.params(), rng, 0.3);
    EXPECT_EQ(crf.feature_dim(), f.config.crf_tokens * f.config.embedding_dim + 1 +
                                     (f.config.modalities.visual ? f.config.visual_dim : 0) +
                                     (f.config.modalities.audio ? f.config.acoustic_dim : 0));
    for (const auto& seq : f.cases) {
      CrfScores s = crf.Scores(crf.Features(seq));
      std::vector<int> gold;
      for (const auto& b : seq.steps) gold.push_back(b.gold_label);
      auto oracle = testing::EnumerateCrf(s);
      EXPECT_NEAR(crf.LogLikelihood(seq, nullptr), CrfScore(s, gold) - oracle.log_z, 1e-9);
      nn::Prediction p = crf.Predict(seq);
      EXPECT_EQ(p.label, oracle.best);
      for (size_t t = 0; t < seq.size(); ++t) EXPECT_NEAR(p.probability[t], oracle.node(1, t), 1e-9);
    }
  }
}

TEST(CrfTaggerTest, GradientsMatchFiniteDifferences) {
  CrfFixture f = MakeCrf(10, "T+V+A");
  CrfTagger crf(f.config, f.embeddings);
  Rng rng(11);
  testing::Perturb(crf.params(), rng, 0.3);
  std::vector<const nn::CaseSequence*> batch;
  for (const auto& c : f.cases) batch.push_back(&c);
  auto r = testing::GradCheck(crf, batch, 0.0, 0);
  EXPECT_LE(r.max_relative_error, 1e-4) << r.worst;
}

TEST(CrfTaggerTest, ZeroInitAndL2) {
  CrfFixture f = MakeCrf(12, "T");
  CrfTagger crf(f.config, f.embeddings);
  crf.Initialize(5);
  EXPECT_EQ(crf.params().SquaredNorm(), 0.0);
  std::vector<const nn::CaseSequence*> batch = {&f.cases[0]};
  nn::ParamSet g = crf.params().ZerosLike();
  EXPECT_NEAR(crf.LossAndGrads(batch, 0, 0, &g), std::log(2.0), 1e-12);
}

TEST(ModelsTest, SnapshotAndReload) {
  CrfFixture f = MakeCrf(13, "T+V+A");
  for (const char* kind : {"lstm", "mlp", "crf"}) {
    nn::ModelConfig c = f.config;
    if (std::string(kind) == "crf") c.modalities = nn::Modalities::Parse("T");
    auto model = MakeLabeler(kind, c, &f.embeddings);
    model->Initialize(2);
    Rng rng(3);
    testing::Perturb(model->params(), rng, 0.2);
    nn::Checkpoint ck = SnapshotLabeler(*model, {{"fold", "0"}});
    EXPECT_EQ(ck.config.at("kind"), kind);
    EXPECT_EQ(ck.config.at("fold"), "0");
    auto back = LoadLabeler(ck, &f.embeddings);
    EXPECT_EQ(back->kind(), kind);
    EXPECT_EQ(back->config(), c);
    EXPECT_EQ(back->Predict(f.cases[1]).probability, model->Predict(f.cases[1]).probability);
  }
  EXPECT_THROW(MakeLabeler("svm", f.config, &f.embeddings), ConfigError);
}

}  // namespace
}  // namespace whodunit::baselines
