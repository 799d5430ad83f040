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

#include "whodunit/nn/labeler.h"

#include <cmath>
#include <algorithm>
#include <map>
#include <utility>

#include "whodunit/corpus/sentence.h"
#include "whodunit/error.h"

namespace whodunit::nn {

std::vector<CaseSequence> GroupCaseSequences(std::span<const signal::FeatureRecord> records) {
  std::map<std::pair<std::string, int>, std::vector<const signal::FeatureRecord*>> groups;
  for (const auto& r : records) {
    if (r.case_id >= 0) groups[{r.episode_id, r.case_id}].push_back(&r);
  }
  std::vector<CaseSequence> out;
  for (auto& [key, members] : groups) {
    std::stable_sort(members.begin(), members.end(),
                     [](const auto* a, const auto* b) { return a->seq_index < b->seq_index; });
    CaseSequence seq;
    seq.key = corpus::CaseKey(key.first, key.second);
    for (const auto* r : members) {
      seq.seq_indices.push_back(r->seq_index);
      seq.steps.push_back(r->bundle);
    }
    out.push_back(std::move(seq));
  }
  std::sort(out.begin(), out.end(),
            [](const CaseSequence& a, const CaseSequence& b) { return a.key < b.key; });
  return out;
}

Eigen::VectorXd PositiveProbability(const Eigen::MatrixXd& logits) {
  Eigen::VectorXd p(logits.cols());
  for (Eigen::Index t = 0; t < logits.cols(); ++t) {
    const double d = logits(1, t) - logits(0, t);
    p(t) = d >= 0 ? 1.0 / (1.0 + std::exp(-d)) : std::exp(d) / (1.0 + std::exp(d));
  }
  return p;
}

double SoftmaxCrossEntropy(const Eigen::MatrixXd& logits, const CaseSequence& sequence,
                           double scale, Eigen::MatrixXd* d_logits) {
  d_logits->resize(2, logits.cols());
  double loss = 0;
  for (Eigen::Index t = 0; t < logits.cols(); ++t) {
    const double hi = std::max(logits(0, t), logits(1, t));
    const double lse = hi + std::log(std::exp(logits(0, t) - hi) + std::exp(logits(1, t) - hi));
    const int gold = sequence.steps[t].gold_label;
    loss += lse - logits(gold, t);
    for (int k = 0; k < 2; ++k) {
      (*d_logits)(k, t) = scale * (std::exp(logits(k, t) - lse) - (k == gold ? 1.0 : 0.0));
    }
  }
  if (!std::isfinite(loss)) throw Error("non-finite loss on case " + sequence.key);
  return loss;
}

Eigen::MatrixXd DropoutMask(Rng& rng, Eigen::Index rows, Eigen::Index cols, double rate) {
  if (rate == 0) return {};
  const double keep = 1.0 / (1.0 - rate);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = rng.Uniform() < rate ? 0.0 : keep;
  }
  return m;
}

Prediction MakePrediction(const Eigen::VectorXd& probability) {
  Prediction p;
  p.probability.assign(probability.data(), probability.data() + probability.size());
  for (double v : p.probability) p.label.push_back(v >= 0.5 ? 1 : 0);
  return p;
}

}  // namespace whodunit::nn
