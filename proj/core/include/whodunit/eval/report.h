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

#ifndef WHODUNIT_EVAL_REPORT_H_
#define WHODUNIT_EVAL_REPORT_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "whodunit/eval/metrics.h"

namespace whodunit::eval {

inline constexpr char kCrossValidation[] = "cv";
inline constexpr char kHeldOut[] = "ho";

// A prediction trace tagged with where it came from.
struct EvalTrace {
  std::string model;       // lstm, mlp, crf, pro
  std::string modalities;  // e.g. T+V+A
  std::string partition;   // kCrossValidation or kHeldOut
  int fold = 0;
  int run = 0;
  PredictionTrace trace;
};

// One row per sentence:
// model,modalities,partition,fold,run,case,seq_index,probability,predicted,gold
void WriteTracesCsv(std::ostream& out, std::span<const EvalTrace> traces);
std::vector<EvalTrace> ReadTracesCsv(std::istream& in);

// Averaged scores for one model/modality setting and partition: pooled
// scores per (fold, run), averaged over runs within a fold, then over folds.
struct PartitionScore {
  int folds = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Writes into `dir`:
//   per_case.csv   metrics per trace
//   folds.csv      run-averaged scores per fold
//   summary.csv    model,T,V,A,cv_pr,cv_re,cv_f1,ho_pr,ho_re,ho_f1
//   curves.csv     case,interval,tp,cum_tp,cum_f1 for the lowest-numbered
//                  run of each cross-validation case
//   detective.csv  first-correct statistics and mean final-decile precision
void WriteReport(const std::filesystem::path& dir, std::span<const EvalTrace> traces,
                 int n_intervals = 100);

}  // namespace whodunit::eval

#endif  // WHODUNIT_EVAL_REPORT_H_
