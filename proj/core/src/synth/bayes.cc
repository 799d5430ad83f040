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

#include "whodunit/synth/bayes.h"

#include <map>
#include <string>
#include <vector>

#include "whodunit/corpus/sentence.h"
#include "whodunit/error.h"
#include "whodunit/eval/metrics.h"

namespace whodunit::synth {

double BayesRate(std::span<const LatentRow> rows, const SynthSpec& spec, bool memoryless) {
  if (rows.empty()) throw Error("no latents");
  const int k = spec.history_lag;
  const bool cue_seen = spec.channels.text || spec.channels.visual || spec.channels.audio;
  const bool trigger_seen = spec.channels.text;

  std::map<std::string, std::map<int, SentenceLatent>> cases;
  for (const auto& r : rows) {
    if (!cases[r.case_key].emplace(r.latent.position, r.latent).second) {
      throw Error("duplicate latent position in case " + r.case_key);
    }
  }
  // observation key -> (positives, negatives)
  std::map<int, std::pair<int64_t, int64_t>> groups;
  int64_t positives = 0;
  for (const auto& [key, seq] : cases) {
    for (const auto& [t, lat] : seq) {
      int obs = 0;
      if (cue_seen) obs |= lat.cue;
      if (trigger_seen) obs |= lat.trigger << 1;
      if (!memoryless) {
        if (t >= k) obs |= 1 << 2;
        if (trigger_seen && k > 0 && t >= k) {
          auto back = seq.find(t - k);
          if (back == seq.end()) throw Error("missing latent position in case " + key);
          obs |= back->second.trigger << 3;
        }
      }
      auto& g = groups[obs];
      (lat.label ? g.first : g.second) += 1;
      positives += lat.label;
    }
  }
  std::vector<std::pair<int64_t, int64_t>> counts;
  for (const auto& [obs, c] : groups) counts.push_back(c);
  double best = 0;
  for (uint32_t subset = 0; subset < (1u << counts.size()); ++subset) {
    int64_t tp = 0, fp = 0;
    for (size_t i = 0; i < counts.size(); ++i) {
      if (subset >> i & 1) {
        tp += counts[i].first;
        fp += counts[i].second;
      }
    }
    best = std::max(best, eval::PrfFromCounts(tp, fp, positives - tp).f1);
  }
  return best;
}

double BayesRate(const SynthDataset& dataset, bool memoryless) {
  std::vector<LatentRow> rows;
  for (const auto& ep : dataset.episodes) {
    for (size_t i = 0; i < ep.units.size(); ++i) {
      rows.push_back({corpus::CaseKey(ep.units[i].episode_id, *ep.units[i].case_id), ep.latents[i]});
    }
  }
  return BayesRate(rows, dataset.spec, memoryless);
}

}  // namespace whodunit::synth
