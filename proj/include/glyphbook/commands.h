// Copyright 2026 The Authors.
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

//
// The four command-line commands. Each returns a process exit code: 0 on
// success, 1 when a check found a violation, 2 on bad input or I/O errors.
//

#ifndef GLYPHBOOK_COMMANDS_H_
#define GLYPHBOOK_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "glyphbook/corpus.h"
#include "glyphbook/pipeline.h"

namespace glyphbook {

enum class ReportFormat { kJson, kCsv };

ReportFormat ParseReportFormat(const std::string& text);

// Config echo shared by every report.
std::string PipelineConfigJson(const PipelineConfig& config);

// --- compress ---------------------------------------------------------------

struct CompressOptions {
  std::string input;
  std::string out_dir;
  PipelineConfig pipeline;
  ReportFormat report = ReportFormat::kJson;
};

// Writes codebook.pbm, codebook.json, reconstruction.pbm, residuals.json
// (lossless) and report.{json,csv} into out_dir. Nothing is left behind on
// failure.
int RunCompress(const CompressOptions& options, std::ostream& err);

// --- bench ------------------------------------------------------------------

struct BenchOptions {
  std::vector<std::string> inputs;
  // In addition to `inputs`, this many synthetic pages built from
  // `synthetic` with seeds synthetic.seed, synthetic.seed + 1, ...
  int synthetic_count = 0;
  CorpusSpec synthetic;
  std::vector<Algorithm> algorithms;
  PipelineConfig pipeline;
  ReportFormat report = ReportFormat::kCsv;
  bool timing = false;
};

struct BenchRow {
  std::string document;
  std::string algorithm;
  double glyphs = 0;
  double threshold_units = 0;
  double classes = 0;
  double patterns = 0;
  double objective_bits = 0;
  double lossy_bits = 0;
  double lossless_bits = 0;
  double lossy_ratio = 0;
  double lossless_ratio = 0;
  // (baseline patterns - patterns) / baseline patterns * 100, baseline being
  // the first algorithm listed.
  double pattern_reduction_pct = 0;
  double wall_ms = 0;
  std::string error;
};

struct BenchReport {
  std::string config_json;
  std::vector<std::string> algorithms;
  std::vector<BenchRow> rows;
  // One per algorithm: means over documents without errors.
  std::vector<BenchRow> averages;
  bool timing = false;

  std::string ToCsv() const;
  std::string ToJson() const;
};

BenchReport RunBench(const BenchOptions& options);
int RunBenchCommand(const BenchOptions& options, const std::string& out_path,
                    std::ostream& out, std::ostream& err);

// Fixed-precision decimal used for every floating column, so reports diff
// cleanly and reductions can be recomputed from the printed columns.
std::string FormatDecimal(double value);

// --- verify -----------------------------------------------------------------

struct VerifyOptions {
  int n = 8;
  int seeds = 200;
  std::uint64_t seed = 1;
  CostModel model;
  // 0 checks every pair and triple.
  std::int64_t metric_samples = 0;
  bool guarantees = true;
  bool supermodularity = true;
};

struct VerifyReport {
  int instances = 0;
  int metric_failures = 0;
  int supermodularity_failures = 0;
  int claim_violations = 0;
  int corollary_violations = 0;
  std::vector<std::string> counterexamples;
  std::string config_json;

  bool passed() const {
    return metric_failures == 0 && supermodularity_failures == 0 &&
           claim_violations == 0 && corollary_violations == 0;
  }
  std::string ToJson() const;
};

// Throws InstanceTooLargeError when guarantee checks are requested above the
// exhaustive-optimum cap.
VerifyReport RunVerify(const VerifyOptions& options);
int RunVerifyCommand(const VerifyOptions& options, std::ostream& out,
                     std::ostream& err);

// --- synth ------------------------------------------------------------------

struct SynthOptions {
  CorpusSpec spec;
  std::string out_dir;
};

// Writes page.pbm and truth.json.
int RunSynth(const SynthOptions& options, std::ostream& err);

}  // namespace glyphbook

#endif  // GLYPHBOOK_COMMANDS_H_
