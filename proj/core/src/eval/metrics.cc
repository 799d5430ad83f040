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

#include "whodunit/eval/metrics.h"

#include <algorithm>

#include "whodunit/error.h"

namespace whodunit::eval {
namespace {

void Count(const TraceRecord& r, int64_t* tp, int64_t* fp, int64_t* fn) {
  if (r.predicted == 1 && r.gold == 1) ++*tp;
  if (r.predicted == 1 && r.gold != 1) ++*fp;
  if (r.predicted != 1 && r.gold == 1) ++*fn;
}

}  // namespace

Prf PrfFromCounts(int64_t tp, int64_t fp, int64_t fn) {
  Prf p;
  p.tp = tp;
  p.fp = fp;
  p.fn = fn;
  if (tp + fp == 0) {
    p.precision_undefined = true;
  } else {
    p.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  }
  if (tp + fn == 0) {
    p.recall_undefined = true;
  } else {
    p.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  }
  if (p.precision + p.recall > 0) {
    p.f1 = 2 * p.precision * p.recall / (p.precision + p.recall);
  }
  return p;
}

Prf PrfMinority(std::span<const PredictionTrace> traces) {
  int64_t tp = 0, fp = 0, fn = 0;
  for (const auto& t : traces) {
    for (const auto& r : t.records) Count(r, &tp, &fp, &fn);
  }
  return PrfFromCounts(tp, fp, fn);
}

Prf PrfMinority(const PredictionTrace& trace) {
  return PrfMinority(std::span<const PredictionTrace>(&trace, 1));
}

std::optional<double> FinalDecilePrecision(const PredictionTrace& trace) {
  const size_t n = trace.size();
  // ceil(0.9 n) in integer arithmetic
  const size_t start = (9 * n + 9) / 10;
  int64_t tp = 0, fp = 0;
  for (size_t i = start; i < n; ++i) {
    if (trace.records[i].predicted != 1) continue;
    (trace.records[i].gold == 1 ? tp : fp) += 1;
  }
  if (tp + fp == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

std::vector<IntervalPoint> IntervalCurves(const PredictionTrace& trace, int n_intervals) {
  if (n_intervals <= 0) throw Error("interval count must be positive");
  const int64_t n = static_cast<int64_t>(trace.size());
  std::vector<IntervalPoint> out;
  int64_t tp = 0, fp = 0, fn = 0;
  for (int k = 0; k < n_intervals; ++k) {
    const int64_t lo = k * n / n_intervals;
    const int64_t hi = (k + 1) * n / n_intervals;
    const int64_t tp_before = tp;
    for (int64_t i = lo; i < hi; ++i) Count(trace.records[i], &tp, &fp, &fn);
    IntervalPoint p;
    p.interval = k;
    p.tp = tp - tp_before;
    p.cum_tp = tp;
    p.cum_f1 = PrfFromCounts(tp, fp, fn).f1;
    out.push_back(p);
  }
  return out;
}

std::optional<int> FirstCorrectIndex(const PredictionTrace& trace) {
  std::optional<int> best;
  for (const auto& r : trace.records) {
    if (r.predicted == 1 && r.gold == 1 && (!best || r.seq_index < *best)) best = r.seq_index;
  }
  return best;
}

FirstCorrectSummary SummarizeFirstCorrect(std::span<const PredictionTrace> traces) {
  FirstCorrectSummary s;
  double total = 0;
  for (const auto& t : traces) {
    const auto first = FirstCorrectIndex(t);
    if (!first) {
      ++s.missing;
      continue;
    }
    s.min = s.cases == 0 ? *first : std::min(s.min, *first);
    s.max = s.cases == 0 ? *first : std::max(s.max, *first);
    total += *first;
    ++s.cases;
  }
  if (s.cases > 0) s.mean = total / s.cases;
  return s;
}

}  // namespace whodunit::eval
