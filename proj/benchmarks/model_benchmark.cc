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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "whodunit/baselines/crf.h"
#include "whodunit/baselines/models.h"
#include "whodunit/random.h"

namespace whodunit {
namespace {

nn::CaseSequence RandomCase(const nn::ModelConfig& c, Rng& rng, int length) {
  nn::CaseSequence s;
  s.key = "ep#0";
  for (int t = 0; t < length; ++t) {
    signal::FeatureBundle b;
    b.token_ids.assign(c.max_tokens, 0);
    b.mask.assign(c.max_tokens, 0);
    const int len = rng.UniformRange(3, c.max_tokens);
    for (int i = 0; i < len; ++i) {
      b.token_ids[i] = rng.UniformRange(1, c.vocab_size - 1);
      b.mask[i] = 1;
    }
    b.x_v = Eigen::VectorXd(c.visual_dim);
    b.x_a = Eigen::VectorXd(c.acoustic_dim);
    for (auto& x : b.x_v) x = rng.Normal();
    for (auto& x : b.x_a) x = rng.Normal();
    b.gold_label = rng.Bernoulli(0.2);
    s.seq_indices.push_back(t);
    s.steps.push_back(std::move(b));
  }
  return s;
}

// One mini-batch of six 60-sentence cases at the full architecture size.
void BM_LossAndGrads(benchmark::State& state, const char* kind) {
  Rng rng(3);
  nn::ModelConfig c;
  c.vocab_size = 5000;
  const auto model = baselines::MakeLabeler(kind, c, nullptr);
  model->Initialize(4);
  std::vector<nn::CaseSequence> cases;
  for (int i = 0; i < 6; ++i) cases.push_back(RandomCase(c, rng, 60));
  std::vector<const nn::CaseSequence*> batch;
  for (const auto& s : cases) batch.push_back(&s);
  nn::ParamSet grads = model->params().ZerosLike();
  for (auto _ : state) benchmark::DoNotOptimize(model->LossAndGrads(batch, 0.5, 5, &grads));
  state.SetItemsProcessed(state.iterations() * 360);
}
BENCHMARK_CAPTURE(BM_LossAndGrads, lstm, "lstm")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_LossAndGrads, mlp, "mlp")->Unit(benchmark::kMillisecond);

void BM_CrfForwardBackward(benchmark::State& state) {
  Rng rng(6);
  baselines::CrfScores s;
  s.unary.resize(2, state.range(0));
  for (auto& x : s.unary.reshaped()) x = rng.Normal();
  for (auto& x : s.transition.reshaped()) x = rng.Normal();
  for (auto _ : state) benchmark::DoNotOptimize(baselines::CrfForwardBackward(s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CrfForwardBackward)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oN);

}  // namespace
}  // namespace whodunit
