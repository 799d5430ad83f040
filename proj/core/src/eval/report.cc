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

#include "whodunit/eval/report.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "whodunit/error.h"
#include "whodunit/nn/model_config.h"

namespace whodunit::eval {
namespace {

constexpr char kTraceHeader[] =
    "model,modalities,partition,fold,run,case,seq_index,probability,predicted,gold";

std::string Fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string Num(double v) { return Fmt("%.6f", v); }

void CheckField(const std::string& s) {
  if (s.find_first_of(",\n\r") != std::string::npos) {
    throw Error("value '" + s + "' cannot be written to CSV");
  }
}

int ParseInt(const std::string& s, int line) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("bad integer '" + s + "'", line);
  return v;
}

double ParseDouble(const std::string& s, int line) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("bad number '" + s + "'", line);
  return v;
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

using GroupKey = std::pair<std::string, std::string>;  // model, modalities

std::vector<GroupKey> Groups(std::span<const EvalTrace> traces) {
  std::vector<GroupKey> groups;
  std::set<GroupKey> seen;
  for (const auto& t : traces) {
    if (seen.insert({t.model, t.modalities}).second) groups.push_back({t.model, t.modalities});
  }
  return groups;
}

// fold -> run -> traces
using FoldRuns = std::map<int, std::map<int, std::vector<PredictionTrace>>>;

FoldRuns Collect(std::span<const EvalTrace> traces, const GroupKey& g, const std::string& part) {
  FoldRuns out;
  for (const auto& t : traces) {
    if (t.model == g.first && t.modalities == g.second && t.partition == part) {
      out[t.fold][t.run].push_back(t.trace);
    }
  }
  return out;
}

struct FoldScore {
  int fold = 0;
  int runs = 0;
  double precision = 0, recall = 0, f1 = 0;
};

std::vector<FoldScore> ScoreFolds(const FoldRuns& folds) {
  std::vector<FoldScore> out;
  for (const auto& [fold, runs] : folds) {
    FoldScore s;
    s.fold = fold;
    for (const auto& [run, traces] : runs) {
      const Prf p = PrfMinority(traces);
      s.precision += p.precision;
      s.recall += p.recall;
      s.f1 += p.f1;
      ++s.runs;
    }
    s.precision /= s.runs;
    s.recall /= s.runs;
    s.f1 /= s.runs;
    out.push_back(s);
  }
  return out;
}

PartitionScore Average(const std::vector<FoldScore>& folds) {
  PartitionScore p;
  for (const auto& f : folds) {
    p.precision += f.precision;
    p.recall += f.recall;
    p.f1 += f.f1;
    ++p.folds;
  }
  if (p.folds > 0) {
    p.precision /= p.folds;
    p.recall /= p.folds;
    p.f1 /= p.folds;
  }
  return p;
}

}  // namespace

void WriteTracesCsv(std::ostream& out, std::span<const EvalTrace> traces) {
  out << kTraceHeader << '\n';
  for (const auto& t : traces) {
    for (const std::string* s : {&t.model, &t.modalities, &t.partition, &t.trace.case_id}) {
      CheckField(*s);
    }
    for (const auto& r : t.trace.records) {
      out << t.model << ',' << t.modalities << ',' << t.partition << ',' << t.fold << ','
          << t.run << ',' << t.trace.case_id << ',' << r.seq_index << ','
          << Fmt("%.17g", r.probability) << ',' << r.predicted << ',' << r.gold << '\n';
    }
  }
}

std::vector<EvalTrace> ReadTracesCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw ParseError("expected trace header '" + std::string(kTraceHeader) + "'", 1);
  }
  std::vector<EvalTrace> traces;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 10) throw ParseError("expected 10 fields", line_no);
    const int fold = ParseInt(f[3], line_no);
    const int run = ParseInt(f[4], line_no);
    if (traces.empty() || traces.back().model != f[0] || traces.back().modalities != f[1] ||
        traces.back().partition != f[2] || traces.back().fold != fold ||
        traces.back().run != run || traces.back().trace.case_id != f[5]) {
      EvalTrace t;
      t.model = f[0];
      t.modalities = f[1];
      t.partition = f[2];
      t.fold = fold;
      t.run = run;
      t.trace.case_id = f[5];
      traces.push_back(std::move(t));
    }
    TraceRecord r;
    r.seq_index = ParseInt(f[6], line_no);
    r.probability = ParseDouble(f[7], line_no);
    r.predicted = ParseInt(f[8], line_no);
    r.gold = ParseInt(f[9], line_no);
    if ((r.predicted != 0 && r.predicted != 1) || (r.gold != 0 && r.gold != 1)) {
      throw ParseError("labels must be 0 or 1", line_no);
    }
    traces.back().trace.records.push_back(r);
  }
  return traces;
}

void WriteReport(const std::filesystem::path& dir, std::span<const EvalTrace> traces,
                 int n_intervals) {
  std::filesystem::create_directories(dir);
  const std::vector<GroupKey> groups = Groups(traces);

  {
    std::ofstream out = OpenOut(dir / "per_case.csv");
    out << "model,modalities,partition,fold,run,case,sentences,tp,fp,fn,precision,recall,f1,"
           "final_decile_precision,first_correct\n";
    for (const auto& t : traces) {
      const Prf p = PrfMinority(t.trace);
      const auto decile = FinalDecilePrecision(t.trace);
      const auto first = FirstCorrectIndex(t.trace);
      out << t.model << ',' << t.modalities << ',' << t.partition << ',' << t.fold << ','
          << t.run << ',' << t.trace.case_id << ',' << t.trace.size() << ',' << p.tp << ','
          << p.fp << ',' << p.fn << ',' << Num(p.precision) << ',' << Num(p.recall) << ','
          << Num(p.f1) << ',' << (decile ? Num(*decile) : "") << ','
          << (first ? std::to_string(*first) : "") << '\n';
    }
  }

  {
    std::ofstream folds_out = OpenOut(dir / "folds.csv");
    std::ofstream summary = OpenOut(dir / "summary.csv");
    folds_out << "model,modalities,partition,fold,runs,precision,recall,f1\n";
    summary << "model,T,V,A,cv_pr,cv_re,cv_f1,ho_pr,ho_re,ho_f1\n";
    for (const auto& g : groups) {
      const nn::Modalities m = nn::Modalities::Parse(g.second);
      summary << g.first << ',' << m.text << ',' << m.visual << ',' << m.audio;
      for (const char* part : {kCrossValidation, kHeldOut}) {
        const std::vector<FoldScore> folds = ScoreFolds(Collect(traces, g, part));
        for (const auto& f : folds) {
          folds_out << g.first << ',' << g.second << ',' << part << ',' << f.fold << ',' << f.runs
                    << ',' << Num(f.precision) << ',' << Num(f.recall) << ',' << Num(f.f1)
                    << '\n';
        }
        if (folds.empty()) {
          summary << ",,,";
        } else {
          const PartitionScore s = Average(folds);
          summary << ',' << Num(s.precision) << ',' << Num(s.recall) << ',' << Num(s.f1);
        }
      }
      summary << '\n';
    }
  }

  {
    std::ofstream out = OpenOut(dir / "curves.csv");
    out << "case,interval,tp,cum_tp,cum_f1\n";
    // Lowest run per cross-validation case; the first model group wins.
    std::map<std::string, const EvalTrace*> chosen;
    for (const auto& t : traces) {
      if (t.partition != kCrossValidation || groups.empty()) continue;
      if (t.model != groups[0].first || t.modalities != groups[0].second) continue;
      auto [it, inserted] = chosen.emplace(t.trace.case_id, &t);
      if (!inserted && t.run < it->second->run) it->second = &t;
    }
    for (const auto& [id, t] : chosen) {
      for (const auto& p : IntervalCurves(t->trace, n_intervals)) {
        out << id << ',' << p.interval << ',' << p.tp << ',' << p.cum_tp << ',' << Num(p.cum_f1)
            << '\n';
      }
    }
  }

  {
    std::ofstream out = OpenOut(dir / "detective.csv");
    out << "model,modalities,partition,traces,first_correct_cases,first_correct_min,"
           "first_correct_max,first_correct_avg,final_decile_defined,final_decile_avg\n";
    for (const auto& g : groups) {
      for (const char* part : {kCrossValidation, kHeldOut}) {
        std::vector<PredictionTrace> selected;
        for (const auto& t : traces) {
          if (t.model == g.first && t.modalities == g.second && t.partition == part) {
            selected.push_back(t.trace);
          }
        }
        if (selected.empty()) continue;
        const FirstCorrectSummary fc = SummarizeFirstCorrect(selected);
        int defined = 0;
        double decile_sum = 0;
        for (const auto& t : selected) {
          if (auto d = FinalDecilePrecision(t)) {
            ++defined;
            decile_sum += *d;
          }
        }
        out << g.first << ',' << g.second << ',' << part << ',' << selected.size() << ','
            << fc.cases << ',';
        if (fc.cases > 0) {
          out << fc.min << ',' << fc.max << ',' << Num(fc.mean);
        } else {
          out << ",,";
        }
        out << ',' << defined << ',' << (defined > 0 ? Num(decile_sum / defined) : "") << '\n';
      }
    }
  }
}

}  // namespace whodunit::eval
