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

#include "whodunit/random.h"
#include "whodunit/signal/mfcc.h"

namespace whodunit {
namespace {

void BM_MfccFrames(benchmark::State& state) {
  Rng rng(2);
  signal::AudioTrack track;
  track.samples.resize(static_cast<size_t>(state.range(0)) * track.sample_rate);
  for (auto& s : track.samples) s = static_cast<float>(rng.Uniform(-0.5, 0.5));
  const signal::MfccComputer mfcc;
  for (auto _ : state) benchmark::DoNotOptimize(mfcc.Frames(track));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.SetLabel("items = seconds of audio");
}
BENCHMARK(BM_MfccFrames)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace whodunit
