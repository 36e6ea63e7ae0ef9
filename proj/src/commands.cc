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

#include "glyphbook/commands.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "json.hpp"

namespace glyphbook {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

ReportFormat ParseReportFormat(const std::string& text) {
  if (text == "json") return ReportFormat::kJson;
  if (text == "csv") return ReportFormat::kCsv;
  throw std::invalid_argument("unknown report format '" + text + "'");
}

std::string FormatDecimal(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

namespace {

json ConfigObject(const PipelineConfig& c) {
  json j;
  j["algorithm"] = ToString(c.algorithm);
  j["kappa"] = c.model.kappa.ToString();
  j["distance"] = ToString(c.model.mode);
  j["alpha"] = c.model.alpha;
  j["beta"] = c.model.beta;
  j["connectivity"] = c.connectivity == Connectivity::kFour ? 4 : 8;
  if (c.threshold_bits) {
    j["threshold_bits"] = *c.threshold_bits;
  } else {
    j["threshold_bits"] = nullptr;
  }
  j["noise_hint"] = c.noise_hint;
  j["epsilon"] = std::isinf(c.epsilon) ? json("inf") : json(c.epsilon);
  j["kmeans_min_decrease"] = c.kmeans_min_decrease;
  j["kmeans_mode"] = ToString(c.kmeans_mode);
  j["mode"] = ToString(c.mode);
  if (c.prefilter_slack) {
    j["prefilter_slack"] = *c.prefilter_slack;
  } else {
    j["prefilter_slack"] = nullptr;
  }
  return j;
}

// Writes every file or none: on the first failure the files already written
// are removed.
void WriteAllOrNothing(const fs::path& dir,
                       const std::vector<std::pair<std::string, std::string>>&
                           files) {
  fs::create_directories(dir);
  std::vector<fs::path> written;
  try {
    for (const auto& [name, bytes] : files) {
      const fs::path path = dir / name;
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + path.string());
      written.push_back(path);
      out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
      out.close();
      if (!out) throw std::runtime_error("short write to " + path.string());
    }
  } catch (...) {
    std::error_code ignored;
    for (const auto& p : written) fs::remove(p, ignored);
    throw;
  }
}

}  // namespace

std::string PipelineConfigJson(const PipelineConfig& config) {
  return ConfigObject(config).dump();
}

// ---------------------------------------------------------------------------
// compress

int RunCompress(const CompressOptions& options, std::ostream& err) {
  try {
    const Bitmap page = ReadPbmFile(options.input);
    const PipelineResult r = RunPipeline(page, options.pipeline);
    const bool lossless = options.pipeline.mode == CodingMode::kLossless;

    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("codebook.pbm",
                       WritePbm(r.codebook.Strip(), PbmFormat::kRaw));
    files.emplace_back("codebook.json", r.codebook.ToJson());
    if (lossless) files.emplace_back("residuals.json", ResidualsToJson(r.residuals));
    files.emplace_back("reconstruction.pbm",
                       WritePbm(r.reconstruction, PbmFormat::kRaw));

    const double objective_bits = options.pipeline.model.kappa.Bits(r.objective);
    if (options.report == ReportFormat::kJson) {
      json j;
      j["config"] = ConfigObject(options.pipeline);
      j["input"] = fs::path(options.input).filename().string();
      j["glyphs"] = r.glyphs.size();
      j["threshold_units"] = r.threshold;
      j["classes"] = r.classes;
      j["patterns"] = r.codebook.size();
      j["objective_units"] = r.objective;
      j["objective_bits"] = objective_bits;
      j["kmeans_class_counts"] = r.kmeans_class_counts;
      j["sizes"] = json::parse(r.sizes.ToJson());
      j["reconstruction_exact"] = r.reconstruction == page;
      files.emplace_back("report.json", j.dump(2) + "\n");
    } else {
      std::string csv =
          "# config " + PipelineConfigJson(options.pipeline) + "\n"
          "glyphs,threshold_units,classes,patterns,objective_bits,"
          "codebook_bits,index_bits,position_bits,residual_bits,"
          "total_lossy_bits,total_lossless_bits,original_bits,lossy_ratio,"
          "lossless_ratio,reconstruction_exact\n";
      const SizeReport& s = r.sizes;
      csv += std::to_string(r.glyphs.size()) + "," +
             std::to_string(r.threshold) + "," + std::to_string(r.classes) +
             "," + std::to_string(r.codebook.size()) + "," +
             FormatDecimal(objective_bits) + "," +
             std::to_string(s.codebook_bits) + "," +
             std::to_string(s.index_bits) + "," +
             std::to_string(s.position_bits) + "," +
             std::to_string(s.residual_bits) + "," +
             std::to_string(s.total_lossy_bits) + "," +
             std::to_string(s.total_lossless_bits) + "," +
             std::to_string(s.original_bits) + "," +
             FormatDecimal(s.lossy_ratio) + "," +
             FormatDecimal(s.lossless_ratio) + "," +
             (r.reconstruction == page ? "true" : "false") + "\n";
      files.emplace_back("report.csv", csv);
    }
    WriteAllOrNothing(options.out_dir, files);
    return 0;
  } catch (const std::exception& e) {
    err << "compress: " << e.what() << "\n";
    return 2;
  }
}

// ---------------------------------------------------------------------------
// bench

namespace {

struct Document {
  std::string name;
  Bitmap page;
  double noise_hint;
  std::string load_error;
};

BenchRow MeanRow(const std::string& algorithm,
                 const std::vector<const BenchRow*>& rows) {
  BenchRow avg;
  avg.document = "average";
  avg.algorithm = algorithm;
  if (rows.empty()) return avg;
  const double k = static_cast<double>(rows.size());
  for (const BenchRow* r : rows) {
    avg.glyphs += r->glyphs / k;
    avg.threshold_units += r->threshold_units / k;
    avg.classes += r->classes / k;
    avg.patterns += r->patterns / k;
    avg.objective_bits += r->objective_bits / k;
    avg.lossy_bits += r->lossy_bits / k;
    avg.lossless_bits += r->lossless_bits / k;
    avg.lossy_ratio += r->lossy_ratio / k;
    avg.lossless_ratio += r->lossless_ratio / k;
    avg.pattern_reduction_pct += r->pattern_reduction_pct / k;
    avg.wall_ms += r->wall_ms / k;
  }
  return avg;
}

}  // namespace

BenchReport RunBench(const BenchOptions& options) {
  if (options.algorithms.size() < 2) {
    throw std::invalid_argument("bench needs at least two algorithms");
  }
  std::vector<Document> docs;
  for (const std::string& path : options.inputs) {
    Document d{fs::path(path).filename().string(), Bitmap(),
               options.pipeline.noise_hint, ""};
    try {
      d.page = ReadPbmFile(path);
    } catch (const std::exception& e) {
      d.load_error = e.what();
    }
    docs.push_back(std::move(d));
  }
  for (int i = 0; i < options.synthetic_count; ++i) {
    CorpusSpec spec = options.synthetic;
    spec.seed = options.synthetic.seed + static_cast<std::uint64_t>(i);
    Document d{"synth-" + std::to_string(spec.seed), Bitmap(),
               spec.noise_flip_probability, ""};
    try {
      d.page = GenerateCorpus(spec).page;
    } catch (const std::exception& e) {
      d.load_error = e.what();
    }
    docs.push_back(std::move(d));
  }
  if (docs.empty()) throw std::invalid_argument("bench needs >= 1 document");

  BenchReport report;
  report.timing = options.timing;
  json cfg = ConfigObject(options.pipeline);
  cfg.erase("algorithm");
  json algos = json::array();
  for (Algorithm a : options.algorithms) {
    algos.push_back(ToString(a));
    report.algorithms.push_back(ToString(a));
  }
  cfg["algorithms"] = algos;
  if (options.synthetic_count > 0) {
    const CorpusSpec& s = options.synthetic;
    cfg["synthetic"] = {{"count", options.synthetic_count},
                        {"shapes", s.base_shape_count},
                        {"glyphs", s.glyph_instance_count},
                        {"noise", s.noise_flip_probability},
                        {"jitter", s.jitter_max},
                        {"shape_area_min", s.shape_area_min},
                        {"shape_area_max", s.shape_area_max},
                        {"seed", s.seed}};
  }
  report.config_json = cfg.dump();

  for (const Document& doc : docs) {
    double baseline_patterns = 0;
    for (std::size_t ai = 0; ai < options.algorithms.size(); ++ai) {
      BenchRow row;
      row.document = doc.name;
      row.algorithm = ToString(options.algorithms[ai]);
      if (!doc.load_error.empty()) {
        row.error = doc.load_error;
        report.rows.push_back(std::move(row));
        continue;
      }
      try {
        PipelineConfig config = options.pipeline;
        config.algorithm = options.algorithms[ai];
        config.mode = CodingMode::kLossless;
        if (!config.threshold_bits) config.noise_hint = doc.noise_hint;
        const auto start = std::chrono::steady_clock::now();
        const PipelineResult r = RunPipeline(doc.page, config);
        const auto stop = std::chrono::steady_clock::now();
        row.glyphs = static_cast<double>(r.glyphs.size());
        row.threshold_units = static_cast<double>(r.threshold);
        row.classes = r.classes;
        row.patterns = r.codebook.size();
        row.objective_bits = config.model.kappa.Bits(r.objective);
        row.lossy_bits = static_cast<double>(r.sizes.total_lossy_bits);
        row.lossless_bits = static_cast<double>(r.sizes.total_lossless_bits);
        row.lossy_ratio = r.sizes.lossy_ratio;
        row.lossless_ratio = r.sizes.lossless_ratio;
        row.wall_ms =
            std::chrono::duration<double, std::milli>(stop - start).count();
        if (r.reconstruction != doc.page) {
          throw std::logic_error("lossless reconstruction mismatch");
        }
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      if (ai == 0) baseline_patterns = row.error.empty() ? row.patterns : 0;
      row.pattern_reduction_pct =
          baseline_patterns > 0
              ? (baseline_patterns - row.patterns) / baseline_patterns * 100.0
              : 0.0;
      report.rows.push_back(std::move(row));
    }
  }

  for (const std::string& algo : report.algorithms) {
    std::vector<const BenchRow*> ok;
    for (const BenchRow& r : report.rows) {
      if (r.algorithm == algo && r.error.empty()) ok.push_back(&r);
    }
    report.averages.push_back(MeanRow(algo, ok));
  }
  return report;
}

std::string BenchReport::ToCsv() const {
  std::string csv = "# config " + config_json + "\n";
  csv +=
      "document,algorithm,glyphs,threshold_units,classes,patterns,"
      "objective_bits,lossy_bits,lossless_bits,lossy_ratio,lossless_ratio,"
      "pattern_reduction_pct";
  if (timing) csv += ",wall_ms";
  csv += ",error\n";
  auto emit = [&](const BenchRow& r, bool integral) {
    auto num = [&](double v) {
      return integral ? std::to_string(static_cast<std::int64_t>(v))
                      : FormatDecimal(v);
    };
    csv += r.document + "," + r.algorithm + "," + num(r.glyphs) + "," +
           num(r.threshold_units) + "," + num(r.classes) +
           "," + num(r.patterns) + "," + FormatDecimal(r.objective_bits) +
           "," + num(r.lossy_bits) + "," + num(r.lossless_bits) + "," +
           FormatDecimal(r.lossy_ratio) + "," +
           FormatDecimal(r.lossless_ratio) + "," +
           FormatDecimal(r.pattern_reduction_pct);
    if (timing) csv += "," + FormatDecimal(r.wall_ms);
    std::string error = r.error;
    for (char& c : error) {
      if (c == ',' || c == '\n') c = ';';
    }
    csv += "," + error + "\n";
  };
  for (const BenchRow& r : rows) emit(r, true);
  for (const BenchRow& r : averages) emit(r, false);
  return csv;
}

std::string BenchReport::ToJson() const {
  auto row_json = [&](const BenchRow& r) {
    json j;
    j["document"] = r.document;
    j["algorithm"] = r.algorithm;
    j["glyphs"] = r.glyphs;
    j["threshold_units"] = r.threshold_units;
    j["classes"] = r.classes;
    j["patterns"] = r.patterns;
    j["objective_bits"] = r.objective_bits;
    j["lossy_bits"] = r.lossy_bits;
    j["lossless_bits"] = r.lossless_bits;
    j["lossy_ratio"] = r.lossy_ratio;
    j["lossless_ratio"] = r.lossless_ratio;
    j["pattern_reduction_pct"] = r.pattern_reduction_pct;
    if (timing) j["wall_ms"] = r.wall_ms;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
  };
  json j;
  j["config"] = json::parse(config_json);
  j["rows"] = json::array();
  for (const BenchRow& r : rows) j["rows"].push_back(row_json(r));
  j["averages"] = json::array();
  for (const BenchRow& r : averages) j["averages"].push_back(row_json(r));
  return j.dump(2) + "\n";
}

int RunBenchCommand(const BenchOptions& options, const std::string& out_path,
                    std::ostream& out, std::ostream& err) {
  try {
    const BenchReport report = RunBench(options);
    const std::string text = options.report == ReportFormat::kCsv
                                 ? report.ToCsv()
                                 : report.ToJson();
    if (out_path.empty()) {
      out << text;
    } else {
      const fs::path p(out_path);
      WriteAllOrNothing(p.has_parent_path() ? p.parent_path() : fs::path("."),
                        {{p.filename().string(), text}});
    }
    for (const BenchRow& r : report.rows) {
      if (!r.error.empty()) {
        err << "bench: " << r.document << "/" << r.algorithm << ": "
            << r.error << "\n";
      }
    }
    return 0;
  } catch (const std::exception& e) {
    err << "bench: " << e.what() << "\n";
    return 2;
  }
}

// ---------------------------------------------------------------------------
// verify

std::string VerifyReport::ToJson() const {
  json j;
  j["config"] = json::parse(config_json);
  j["instances"] = instances;
  j["metric_failures"] = metric_failures;
  j["supermodularity_failures"] = supermodularity_failures;
  j["claim_violations"] = claim_violations;
  j["corollary_violations"] = corollary_violations;
  j["counterexamples"] = counterexamples;
  j["passed"] = passed();
  return j.dump(2) + "\n";
}

VerifyReport RunVerify(const VerifyOptions& options) {
  if (options.n < 1) throw std::invalid_argument("verify needs n >= 1");
  if (options.guarantees && options.n > kBruteForceMaxVertices) {
    throw InstanceTooLargeError(
        "guarantee checks need the exhaustive optimum, which is capped at "
        "n <= " + std::to_string(kBruteForceMaxVertices) + " (got n = " +
        std::to_string(options.n) + ")");
  }
  const bool supermodularity =
      options.supermodularity && options.n <= kSupermodularityMaxVertices;
  VerifyReport report;
  json cfg;
  cfg["n"] = options.n;
  cfg["seeds"] = options.seeds;
  cfg["seed"] = options.seed;
  cfg["distance"] = ToString(options.model.mode);
  cfg["alpha"] = options.model.alpha;
  cfg["beta"] = options.model.beta;
  cfg["metric_samples"] = options.metric_samples;
  cfg["guarantees"] = options.guarantees;
  cfg["supermodularity"] = supermodularity;
  report.config_json = cfg.dump();

  constexpr std::size_t kMaxCounterexamples = 20;
  auto note = [&](std::string s) {
    if (report.counterexamples.size() < kMaxCounterexamples) {
      report.counterexamples.push_back(std::move(s));
    }
  };
  for (int i = 0; i < options.seeds; ++i) {
    const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(i);
    const DistanceOracle oracle =
        RandomGlyphInstance(seed, options.n, options.model);
    ++report.instances;
    const std::string tag = "seed " + std::to_string(seed) + ": ";

    const MetricReport metric =
        VerifyMetricProperties(oracle, options.metric_samples, seed);
    if (!metric.passed()) {
      ++report.metric_failures;
      for (const PropertyCheck& c : metric.checks) {
        if (!c.passed) note(tag + c.name + ": " + c.detail);
      }
    }
    if (supermodularity) {
      const SupermodularityReport sm = CheckSupermodularity(oracle);
      if (!sm.passed) {
        ++report.supermodularity_failures;
        note(tag + "supermodularity: " + sm.counterexample);
      }
    }
    if (options.guarantees) {
      const Solution greedy = GreedyKMedian(oracle);
      const OptResult opt = BruteForceOpt(oracle);
      const GuaranteeReport g = CheckGuarantees(greedy, opt, oracle.size());
      if (g.ClaimViolations() > 0) {
        report.claim_violations += g.ClaimViolations();
        note(tag + "claim: " + g.ToJson());
      }
      if (!g.Corollary1Holds() || !g.Corollary2Holds()) {
        ++report.corollary_violations;
        note(tag + "corollary: " + g.ToJson());
      }
    }
  }
  return report;
}

int RunVerifyCommand(const VerifyOptions& options, std::ostream& out,
                     std::ostream& err) {
  try {
    const VerifyReport report = RunVerify(options);
    out << report.ToJson();
    if (!report.passed()) {
      for (const std::string& c : report.counterexamples) {
        err << "verify: " << c << "\n";
      }
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "verify: " << e.what() << "\n";
    return 2;
  }
}

// ---------------------------------------------------------------------------
// synth

int RunSynth(const SynthOptions& options, std::ostream& err) {
  try {
    const Corpus corpus = GenerateCorpus(options.spec);
    WriteAllOrNothing(options.out_dir,
                      {{"page.pbm", WritePbm(corpus.page, PbmFormat::kRaw)},
                       {"truth.json", TruthToJson(corpus.truth) + "\n"}});
    return 0;
  } catch (const std::exception& e) {
    err << "synth: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace glyphbook
