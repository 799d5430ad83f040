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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "../support/crf_oracle.h"
#include "../support/dtw_oracle.h"
#include "../support/mfcc_oracle.h"
#include "../support/model_fixtures.h"
#include "criteria.h"
#include "whodunit/align/dtw.h"
#include "whodunit/baselines/crf.h"
#include "whodunit/baselines/models.h"
#include "whodunit/random.h"
#include "whodunit/signal/mfcc.h"

namespace whodunit::acceptance {
namespace {

std::string Format(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

}  // namespace

Verdict CheckGradients() {
  constexpr double kTolerance = 1e-4;
  double worst = 0;
  std::string where;
  long entries = 0;
  for (int i = 0; i < 20; ++i) {
    Rng rng(DeriveSeed(101, {static_cast<uint64_t>(i)}));
    const nn::ModelConfig config = testing::MiniConfig(rng);
    Eigen::MatrixXd embeddings(config.vocab_size, config.embedding_dim);
    for (auto& x : embeddings.reshaped()) x = rng.Normal();
    embeddings.row(0).setZero();
    std::vector<nn::CaseSequence> cases;
    for (int c = 0; c < 2; ++c) {
      cases.push_back(testing::RandomCase(config, rng, rng.UniformRange(1, 5), "ep#" + std::to_string(c)));
    }
    const std::vector<const nn::CaseSequence*> batch = {&cases[0], &cases[1]};
    for (const char* kind : {"lstm", "mlp", "crf"}) {
      auto model = baselines::MakeLabeler(kind, config, &embeddings);
      testing::Perturb(model->params(), rng, 0.5);
      const double dropout = i % 2 == 0 ? 0.0 : 0.5;
      const auto r = testing::GradCheck(*model, batch, dropout, DeriveSeed(7, {static_cast<uint64_t>(i)}));
      entries += r.entries;
      if (r.max_relative_error > worst) {
        worst = r.max_relative_error;
        where = Format("config %d %s %s", i, kind, r.worst.c_str());
      }
    }
  }
  return {worst <= kTolerance,
          Format("max relative error %.2e over %ld entries (%s)", worst, entries, where.c_str())};
}

Verdict CheckDtwOracle() {
  static const char* kWords[] = {"a", "b", "c", "d", "e"};
  Rng rng(202);
  auto lists = [&](int n) {
    std::vector<align::TokenList> out(n);
    for (auto& l : out) {
      const int len = rng.UniformRange(0, 3);
      for (int k = 0; k < len; ++k) l.push_back(kWords[rng.UniformInt(5)]);
    }
    return out;
  };
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto u = lists(rng.UniformRange(1, 8));
    const auto c = lists(rng.UniformRange(1, 8));
    const double skip = rng.Uniform(0, 1.2);
    mismatches += align::DtwAlign(u, c, skip).total_cost != testing::BruteForceDtwCost(u, c, skip);
  }
  return {mismatches == 0, Format("%d of 1000 costs differ from the exhaustive minimum", mismatches)};
}

Verdict CheckCrfOracle() {
  Rng rng(303);
  double worst_loglik = 0, worst_marginal = 0;
  int viterbi_mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int t_len = rng.UniformRange(1, 10);
    baselines::CrfScores s;
    s.unary.resize(2, t_len);
    // Every fourth chain uses small integers so that ties occur.
    const bool integral = trial % 4 == 0;
    auto draw = [&] { return integral ? static_cast<double>(rng.UniformRange(-2, 2)) : rng.Normal(0, 2); };
    for (auto& x : s.unary.reshaped()) x = draw();
    for (auto& x : s.transition.reshaped()) x = draw();
    std::vector<int> gold(t_len);
    long code = 0;
    for (int t = 0; t < t_len; ++t) {
      gold[t] = rng.Bernoulli(0.5);
      code = code * 2 + gold[t];
    }

    const auto oracle = testing::EnumerateCrf(s);
    const auto m = baselines::CrfForwardBackward(s);
    const double loglik = baselines::CrfScore(s, gold) - m.log_z;
    worst_loglik = std::max(worst_loglik, std::abs(loglik - (oracle.scores[code] - oracle.log_z)));
    for (int t = 0; t < t_len; ++t) {
      for (int y = 0; y < 2; ++y) worst_marginal = std::max(worst_marginal, std::abs(m.node(y, t) - oracle.node(y, t)));
    }
    viterbi_mismatches += baselines::CrfDecode(s) != oracle.best;
  }
  const bool pass = worst_loglik <= 1e-9 && worst_marginal <= 1e-9 && viterbi_mismatches == 0;
  return {pass, Format("max log-likelihood error %.1e, max marginal error %.1e, %d Viterbi mismatches",
                       worst_loglik, worst_marginal, viterbi_mismatches)};
}

Verdict CheckMfccOracle() {
  const signal::MfccComputer mfcc;
  const testing::MfccOracle oracle;
  Rng rng(404);
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    signal::AudioTrack track;
    track.samples.resize(1600);  // 100 ms
    const int partials = rng.UniformRange(0, 3);
    std::vector<std::pair<double, double>> tones;
    for (int p = 0; p < partials; ++p) tones.emplace_back(rng.Uniform(50, 7900), rng.Uniform(0, 0.5));
    const double noise = rng.Uniform(0, 0.5);
    for (size_t n = 0; n < track.samples.size(); ++n) {
      double x = noise * rng.Uniform(-1, 1);
      for (const auto& [hz, amp] : tones) x += amp * std::sin(2 * std::numbers::pi * hz * n / track.sample_rate);
      track.samples[n] = static_cast<float>(x);
    }
    const auto frames = mfcc.Frames(track);
    for (size_t f = 0; f < frames.size(); ++f) {
      const auto ref = oracle.Coefficients(std::span(track.samples).subspan(f * 80, 400));
      for (int i = 0; i < 13; ++i) worst = std::max(worst, std::abs(frames[f][i] - ref[i]));
    }
  }

  // A 1 kHz tone peaks in the filter whose centre is nearest to 1 kHz.
  signal::AudioTrack tone;
  tone.samples.resize(1600);
  for (size_t n = 0; n < tone.samples.size(); ++n) {
    tone.samples[n] = static_cast<float>(0.5 * std::sin(2 * std::numbers::pi * 1000 * n / tone.sample_rate));
  }
  const auto energies = mfcc.FilterbankEnergies(tone.samples, 3);
  int nearest = 0;
  for (int m = 0; m < 26; ++m) {
    if (std::abs(oracle.Center(m) - 1000) < std::abs(oracle.Center(nearest) - 1000)) nearest = m;
  }
  const int peak = static_cast<int>(std::max_element(energies.begin(), energies.end()) - energies.begin());
  return {worst <= 1e-6 && peak == nearest,
          Format("max coefficient error %.2e over 50 signals; 1 kHz tone peaks in filter %d, nearest centre %d",
                 worst, peak, nearest)};
}

}  // namespace whodunit::acceptance
