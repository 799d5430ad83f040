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

#ifndef WHODUNIT_EVAL_METRICS_H_
#define WHODUNIT_EVAL_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace whodunit::eval {

struct TraceRecord {
  int seq_index = 0;
  double probability = 0;
  int predicted = 0;
  int gold = 0;
};

// Per-sentence predictions for one case, in screenplay order.
struct PredictionTrace {
  std::string case_id;
  std::vector<TraceRecord> records;

  size_t size() const { return records.size(); }
};

// Minority-class scores. A zero denominator yields 0 with its flag set.
struct Prf {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  bool precision_undefined = false;
  bool recall_undefined = false;
};

Prf PrfFromCounts(int64_t tp, int64_t fp, int64_t fn);
// Pooled over every sentence of every trace.
Prf PrfMinority(std::span<const PredictionTrace> traces);
Prf PrfMinority(const PredictionTrace& trace);

// Precision over the last tenth of the trace: positions >= ceil(0.9 T).
// Empty when the window holds no positive prediction.
std::optional<double> FinalDecilePrecision(const PredictionTrace& trace);

struct IntervalPoint {
  int interval = 0;
  int64_t tp = 0;
  int64_t cum_tp = 0;
  double cum_f1 = 0;
};

// Splits positions [0, T) into n intervals [floor(kT/n), floor((k+1)T/n)).
// cum_f1 at k scores every sentence before the end of interval k.
std::vector<IntervalPoint> IntervalCurves(const PredictionTrace& trace, int n_intervals = 100);

// seq_index of the first sentence predicted 1 with gold 1.
std::optional<int> FirstCorrectIndex(const PredictionTrace& trace);

struct FirstCorrectSummary {
  int cases = 0;     // traces with a correct guess
  int missing = 0;   // traces without one
  int min = 0;
  int max = 0;
  double mean = 0;
};
FirstCorrectSummary SummarizeFirstCorrect(std::span<const PredictionTrace> traces);

}  // namespace whodunit::eval

#endif  // WHODUNIT_EVAL_METRICS_H_
