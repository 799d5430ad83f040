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

#include "whodunit/align/dtw.h"
#include "whodunit/random.h"

namespace whodunit {
namespace {

std::vector<align::TokenList> RandomLists(Rng& rng, int n) {
  std::vector<align::TokenList> out(n);
  for (auto& l : out) {
    const int len = rng.UniformRange(1, 12);
    for (int k = 0; k < len; ++k) l.push_back("w" + std::to_string(rng.UniformInt(300)));
  }
  return out;
}

// An episode has a few hundred utterances and caption cues.
void BM_DtwAlign(benchmark::State& state) {
  Rng rng(1);
  const int n = static_cast<int>(state.range(0));
  const auto utterances = RandomLists(rng, n);
  const auto cues = RandomLists(rng, n + n / 10);
  for (auto _ : state) benchmark::DoNotOptimize(align::DtwAlign(utterances, cues));
  state.SetComplexityN(n);
}
BENCHMARK(BM_DtwAlign)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

}  // namespace
}  // namespace whodunit
