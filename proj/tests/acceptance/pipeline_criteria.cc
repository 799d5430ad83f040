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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "criteria.h"
#include "whodunit/error.h"
#include "whodunit/eval/kappa.h"
#include "whodunit/eval/metrics.h"
#include "whodunit/eval/splits.h"
#include "whodunit/random.h"

namespace whodunit::acceptance {
namespace {

namespace fs = std::filesystem;

eval::PredictionTrace Trace(const std::vector<int>& predicted, const std::vector<int>& gold) {
  eval::PredictionTrace t;
  t.case_id = "e#0";
  for (size_t i = 0; i < predicted.size(); ++i) {
    t.records.push_back({static_cast<int>(i), predicted[i] ? 1.0 : 0.0, predicted[i], gold[i]});
  }
  return t;
}

// Collects the names of failed expectations.
struct Tally {
  int checks = 0;
  std::vector<std::string> failed;
  void Expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failed.push_back(what);
  }
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

int Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "whodunit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::Run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != cli::kExitOk) throw Error("whodunit " + args[1] + " failed: " + err.str());
  return code;
}

// synth -> featurize -> train -> eval for each model kind under `root`.
void RunPipeline(const fs::path& root) {
  const std::vector<std::string> shared = {"--seed", "5", "--visual_dim", "16", "--max_tokens", "10"};
  auto with = [&](std::vector<std::string> args) {
    args.insert(args.end(), shared.begin(), shared.end());
    Invoke(args);
  };
  const std::string s = (root / "synth").string(), c = (root / "cache").string();
  with({"synth", "--output_dir", s, "--synth_episodes", "16", "--synth_history_lag", "2",
        "--synth_pronoun_rate", "0.3"});
  with({"featurize", "--corpus", s + "/corpus", "--embeddings", s + "/embeddings.txt", "--audio_dir",
        s + "/audio", "--visual_dir", s + "/visual", "--cache_dir", c});
  const std::vector<std::string> model = {"--conv_channels", "4", "--fusion_dim", "12", "--hidden_dim", "8",
                                          "--epochs", "3", "--runs", "2", "--held_out", "2",
                                          "--test_per_fold", "3", "--folds", "2", "--crf_tokens", "4"};
  for (const char* kind : {"lstm", "mlp", "crf"}) {
    const std::string t = (root / (std::string("train_") + kind)).string();
    const std::string e = (root / (std::string("eval_") + kind)).string();
    std::vector<std::string> train = {"train", "--model", kind, "--cache_dir", c, "--output_dir", t};
    train.insert(train.end(), model.begin(), model.end());
    with(train);
    std::vector<std::string> ev = {"eval", "--model", kind, "--cache_dir", c, "--checkpoint_dir",
                                   t + "/checkpoints", "--output_dir", e};
    ev.insert(ev.end(), model.begin(), model.end());
    with(ev);
  }
}

}  // namespace

Verdict CheckMetrics() {
  Tally tally;
  const eval::Prf a = eval::PrfMinority(Trace({1, 0, 1}, {1, 0, 0}));
  tally.Expect(a.precision == 0.5 && a.recall == 1.0 && a.f1 == 2.0 / 3.0, "prf [1,0,1] vs [1,0,0]");
  const eval::Prf none = eval::PrfMinority(Trace({0, 0, 0}, {1, 0, 1}));
  tally.Expect(none.precision == 0 && none.precision_undefined && none.recall == 0 && none.f1 == 0,
               "prf without positive predictions");
  const eval::Prf perfect = eval::PrfMinority(Trace({0, 1, 1}, {0, 1, 1}));
  tally.Expect(perfect.precision == 1 && perfect.recall == 1 && perfect.f1 == 1, "prf perfect");

  std::vector<int> p(100, 0), g(100, 0);
  p[93] = g[93] = 1;
  p[97] = 1;
  tally.Expect(eval::FinalDecilePrecision(Trace(p, g)) == 0.5, "final decile one of two");
  tally.Expect(!eval::FinalDecilePrecision(Trace(std::vector<int>(100, 0), g)).has_value(),
               "final decile without positives");

  std::vector<int> q(8, 0), h(8, 0);
  q[1] = 1;
  q[5] = h[5] = 1;
  tally.Expect(eval::FirstCorrectIndex(Trace(q, h)) == 5, "first correct at 5");
  tally.Expect(!eval::FirstCorrectIndex(Trace({1, 0}, {0, 1})).has_value(), "first correct absent");

  std::vector<std::string> ids;
  for (int i = 0; i < 59; ++i) ids.push_back("case" + std::to_string(i));
  const eval::SplitPlan plan = eval::MakeSplits(ids, 1);
  bool sizes = plan.held_out.size() == 6 && plan.folds.size() == 5;
  for (const auto& f : plan.folds) sizes &= f.train.size() == 47 && f.test.size() == 6;
  tally.Expect(sizes, "59 cases split 6 held out, 47/6 per fold");
  bool threw = false;
  try {
    eval::MakeSplits(std::span(ids).first(30), 1);
  } catch (const Error&) {
    threw = true;
  }
  tally.Expect(threw, "too few cases rejected");

  std::vector<int> x, y;
  for (auto [i, j, n] : {std::tuple{1, 1, 45}, {1, 0, 5}, {0, 1, 5}, {0, 0, 45}}) {
    for (int k = 0; k < n; ++k) x.push_back(i), y.push_back(j);
  }
  tally.Expect(std::abs(eval::CohenKappa(x, y) - 0.8) < 1e-12, "kappa 0.8");
  tally.Expect(eval::CohenKappa(x, x) == 1.0, "kappa identical");

  Rng rng(909);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.UniformRange(1, 500);
    std::vector<int> pr(n), gd(n);
    for (int i = 0; i < n; ++i) {
      gd[i] = rng.Bernoulli(0.25);
      pr[i] = rng.Bernoulli(gd[i] ? 0.7 : 0.15);
    }
    const auto trace = Trace(pr, gd);
    const auto curve = eval::IntervalCurves(trace, 100);
    tally.Expect(!curve.empty() && curve.back().cum_f1 == eval::PrfMinority(trace).f1,
                 "cumulative f1 of trace " + std::to_string(trial));
  }

  std::string detail = std::to_string(tally.checks - tally.failed.size()) + "/" +
                       std::to_string(tally.checks) + " checks hold";
  for (const auto& f : tally.failed) detail += "; failed: " + f;
  return {tally.failed.empty(), detail};
}

Verdict CheckDeterminism() {
  const fs::path base = fs::temp_directory_path() / "whodunit_acceptance_determinism";
  fs::remove_all(base);
  RunPipeline(base / "a");
  RunPipeline(base / "b");
  int compared = 0;
  std::vector<std::string> differing;
  for (const auto& entry : fs::recursive_directory_iterator(base / "a")) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), base / "a");
    const std::string ext = rel.extension().string();
    const bool is_checkpoint = rel.parent_path().filename() == "checkpoints";
    if (!is_checkpoint && ext != ".csv") continue;
    ++compared;
    if (Slurp(entry.path()) != Slurp(base / "b" / rel)) differing.push_back(rel.string());
  }
  fs::remove_all(base);
  std::string detail = std::to_string(compared) + " checkpoint and CSV files compared, " +
                       std::to_string(differing.size()) + " differ";
  for (const auto& d : differing) detail += "; " + d;
  return {compared > 0 && differing.empty(), detail};
}

}  // namespace whodunit::acceptance
