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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "glyphbook/commands.h"

namespace glyphbook {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool passed = true;
  std::string detail;
};

// 1. First-Fit on the abstract four-glyph instance in both orders.
Outcome FirstFitGolden() {
  const std::set<std::pair<int, int>> pairs = {{0, 1}, {1, 2}, {1, 3}};
  auto distance = [&](int g, int f) -> Units {
    return pairs.count(std::minmax(g, f)) ? 0 : 1;
  };
  auto classes = [](const Partition& p) {
    std::vector<std::vector<int>> out;
    for (const auto& c : p.classes) out.push_back(c.members);
    return out;
  };
  const auto t0 = Clock::now();
  const std::vector<int> abcd = {0, 1, 2, 3};
  const std::vector<int> bacd = {1, 0, 2, 3};
  const auto first = classes(FirstFit(abcd, distance, 1));
  const auto second = classes(FirstFit(bacd, distance, 1));
  const double secs = Seconds(t0);
  Outcome o;
  o.passed = first == std::vector<std::vector<int>>{{0, 1}, {2}, {3}} &&
             second == std::vector<std::vector<int>>{{1, 0, 2, 3}} &&
             secs < 1.0;
  o.detail = "{a,b,c,d} -> " + std::to_string(first.size()) +
             " classes, {b,a,c,d} -> " + std::to_string(second.size()) +
             " class";
  return o;
}

// 2. Claim at every prefix and the second corollary bound, 1000 instances.
Outcome GuaranteeSuite() {
  const auto t0 = Clock::now();
  int claim_violations = 0, bound_violations = 0, checks = 0;
  double min_slack = 1e300;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const int n = 1 + static_cast<int>(seed % 12);
    const DistanceOracle oracle = RandomGlyphInstance(seed, n);
    const GuaranteeReport r =
        CheckGuarantees(GreedyKMedian(oracle), BruteForceOpt(oracle), n);
    claim_violations += r.ClaimViolations();
    checks += static_cast<int>(r.claim_checks.size());
    if (!r.Corollary2Holds()) ++bound_violations;
    min_slack = std::min(min_slack, r.corollary2_slack);
  }
  const double secs = Seconds(t0);
  Outcome o;
  o.passed = claim_violations == 0 && bound_violations == 0 && secs < 300;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "%d prefix checks, %d claim violations, %d bound violations, "
                "min bound slack %.3f, %.1fs",
                checks, claim_violations, bound_violations, min_slack, secs);
  o.detail = buf;
  return o;
}

// 3. Exhaustive supermodularity, 100 instances with n <= 8.
Outcome Supermodularity() {
  const auto t0 = Clock::now();
  int failures = 0;
  std::int64_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const int n = 1 + static_cast<int>(seed % 8);
    const SupermodularityReport r =
        CheckSupermodularity(RandomGlyphInstance(seed, n));
    if (!r.passed) ++failures;
    checked += r.checked;
  }
  const double secs = Seconds(t0);
  Outcome o;
  o.passed = failures == 0 && secs < 120;
  o.detail = std::to_string(checked) + " (S, T, v) triples, " +
             std::to_string(failures) + " failing instances";
  return o;
}

// 4. Metric contract on every pair and triple of 50 corpora.
Outcome MetricContract() {
  const auto t0 = Clock::now();
  int failures = 0;
  std::int64_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    CorpusSpec spec;
    spec.base_shape_count = 3 + static_cast<int>(seed % 10);
    spec.glyph_instance_count = 50 + static_cast<int>(seed * 37 % 151);
    spec.noise_flip_probability = 0.05 * static_cast<double>(seed % 7);
    spec.jitter_max = static_cast<int>(seed % 3);
    spec.seed = seed;
    const DistanceOracle oracle =
        DistanceOracle::Build(ExtractGlyphs(GenerateCorpus(spec).page), {});
    const MetricReport r = VerifyMetricProperties(oracle, 0, seed);
    if (!r.passed()) ++failures;
    for (const PropertyCheck& c : r.checks) checked += c.checked;
  }
  const double secs = Seconds(t0);
  Outcome o;
  o.passed = failures == 0 && secs < 300;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%lld checks, %d failing corpora, %.1fs",
                static_cast<long long>(checked), failures, secs);
  o.detail = buf;
  return o;
}

CorpusSpec NoisyCorpus(std::uint64_t seed) {
  CorpusSpec spec;
  spec.base_shape_count = 8;
  spec.glyph_instance_count = 160;
  spec.noise_flip_probability = 0.1;
  spec.jitter_max = 2;
  spec.seed = seed;
  return spec;
}

// 5. Lossless reconstruction for every algorithm.
Outcome LosslessRoundTrip() {
  int runs = 0, mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Bitmap page = GenerateCorpus(NoisyCorpus(seed)).page;
    for (Algorithm a : AllAlgorithms()) {
      PipelineConfig config;
      config.algorithm = a;
      config.mode = CodingMode::kLossless;
      ++runs;
      if (!(RunPipeline(page, config).reconstruction == page)) ++mismatches;
    }
  }
  Outcome o;
  o.passed = mismatches == 0;
  o.detail = std::to_string(runs) + " runs, " + std::to_string(mismatches) +
             " mismatches";
  return o;
}

CorpusSpec TableCorpus(std::uint64_t seed) {
  CorpusSpec spec;
  spec.base_shape_count = 30;
  spec.glyph_instance_count = 600;
  spec.noise_flip_probability = 0.05;
  spec.seed = seed;
  return spec;
}

// 6. GKM against First-Fit on codebook size and objective.
Outcome GkmVersusFirstFit() {
  double ff_patterns = 0, gkm_patterns = 0;
  int objective_wins = 0;
  const int seeds = 20;
  for (int seed = 1; seed <= seeds; ++seed) {
    const Bitmap page = GenerateCorpus(TableCorpus(seed)).page;
    PipelineConfig config;
    config.mode = CodingMode::kLossy;
    config.algorithm = Algorithm::kFirstFit;
    const PipelineResult ff = RunPipeline(page, config);
    config.algorithm = Algorithm::kGkm;
    const PipelineResult gkm = RunPipeline(page, config);
    ff_patterns += ff.codebook.size();
    gkm_patterns += gkm.codebook.size();
    if (gkm.objective <= ff.objective) ++objective_wins;
  }
  ff_patterns /= seeds;
  gkm_patterns /= seeds;
  Outcome o;
  o.passed = gkm_patterns <= ff_patterns && objective_wins * 10 >= seeds * 9;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "mean patterns first_fit %.2f, gkm %.2f (%.1f%% fewer); gkm "
                "objective <= first_fit on %d/%d seeds",
                ff_patterns, gkm_patterns,
                100.0 * (ff_patterns - gkm_patterns) / ff_patterns,
                objective_wins, seeds);
  o.detail = buf;
  return o;
}

// 7. The k-means pass after GKM never adds classes and often removes some.
//
// The threshold must absorb a one-pixel anchor shift between noisy copies of
// a shape (about 0.8 x the boundary length on these corpora); below that the
// refinement can only split classes and the start partition is returned.
Outcome GkmThenKMeansVersusGkm() {
  const int seeds = 20;
  int never_worse = 0, strict = 0, strict_default = 0;
  double initial = 0, final = 0;
  for (int seed = 1; seed <= seeds; ++seed) {
    const Bitmap page = GenerateCorpus(TableCorpus(seed)).page;
    const std::vector<Glyph> glyphs = ExtractGlyphs(page);
    const DistanceOracle oracle = DistanceOracle::Build(glyphs, {});
    const Units loose = DefaultThresholdUnits(glyphs, 0.2);
    const GkmThenKMeansResult r = GkmThenKMeans(oracle, loose, 1);
    const int gkm_classes = PartitionFromSolution(GreedyKMedian(oracle)).size();
    if (r.final_classes() <= gkm_classes) ++never_worse;
    if (r.final_classes() < gkm_classes) ++strict;
    initial += gkm_classes;
    final += r.final_classes();
    const GkmThenKMeansResult d =
        GkmThenKMeans(oracle, DefaultThresholdUnits(glyphs, 0.05), 1);
    if (d.final_classes() < gkm_classes) ++strict_default;
  }
  Outcome o;
  o.passed = never_worse == seeds && strict * 4 >= seeds;
  char buf[240];
  std::snprintf(buf, sizeof(buf),
                "classes <= gkm on %d/%d seeds, strictly fewer on %d/%d "
                "(mean %.2f -> %.2f); at the noise-derived threshold strictly "
                "fewer on %d/%d",
                never_worse, seeds, strict, seeds, initial / seeds,
                final / seeds, strict_default, seeds);
  o.detail = buf;
  return o;
}

// 8. Every accepted greedy step strictly lowers c(S) + delta(S).
Outcome GreedyTrace() {
  int steps = 0, bad = 0;
  auto check = [&](const Solution& s) {
    Units prev = s.initial_delta;
    Units cost = 0;
    for (const GreedyStep& step : s.trace) {
      ++steps;
      if (!(cost + step.cost + step.delta_after < cost + prev) ||
          step.delta_before != prev) {
        ++bad;
      }
      cost += step.cost;
      prev = step.delta_after;
    }
    if (s.objective != cost + prev) ++bad;
  };
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    check(GreedyKMedian(RandomGlyphInstance(seed, 1 + seed % 16)));
  }
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Bitmap page = GenerateCorpus(NoisyCorpus(seed)).page;
    check(GreedyKMedian(DistanceOracle::Build(ExtractGlyphs(page), {})));
  }
  const Solution single =
      GreedyKMedian(DistanceOracle::FromMatrix({10}, {0}));
  const bool single_ok = single.chosen.empty() && single.objective == 10 &&
                         single.assignment[0] == kSelfCoded;
  Outcome o;
  o.passed = bad == 0 && single_ok;
  o.detail = std::to_string(steps) + " accepted steps, " +
             std::to_string(bad) + " non-decreasing; single vertex " +
             (single_ok ? "S = {} with objective c(v)" : "WRONG");
  return o;
}

// 9. Two identical bench runs give byte-identical reports.
Outcome BenchDeterminism() {
  BenchOptions opts;
  opts.synthetic_count = 3;
  opts.synthetic.base_shape_count = 12;
  opts.synthetic.glyph_instance_count = 200;
  opts.synthetic.noise_flip_probability = 0.05;
  opts.synthetic.jitter_max = 1;
  opts.algorithms = AllAlgorithms();
  bool same = true;
  std::size_t bytes = 0;
  for (ReportFormat f : {ReportFormat::kCsv, ReportFormat::kJson}) {
    opts.report = f;
    std::ostringstream a, b, err;
    const int ca = RunBenchCommand(opts, "", a, err);
    const int cb = RunBenchCommand(opts, "", b, err);
    same = same && ca == 0 && cb == 0 && a.str() == b.str();
    bytes += a.str().size();
  }
  Outcome o;
  o.passed = same;
  o.detail = std::to_string(bytes) + " report bytes compared (csv + json)";
  return o;
}

// 10. GKM on a 1000-glyph page, oracle construction included.
Outcome Performance() {
  CorpusSpec spec = TableCorpus(1);
  spec.glyph_instance_count = 1000;
  const Bitmap page = GenerateCorpus(spec).page;
  const auto t0 = Clock::now();
  const DistanceOracle oracle = DistanceOracle::Build(ExtractGlyphs(page), {});
  const Solution s = GreedyKMedian(oracle);
  const double secs = Seconds(t0);
  Outcome o;
  o.passed = oracle.size() == 1000 && secs < 60.0;
  char buf[120];
  std::snprintf(buf, sizeof(buf), "%d glyphs -> %zu patterns in %.2fs",
                oracle.size(), s.chosen.size() + s.SelfCodedCount(), secs);
  o.detail = buf;
  return o;
}

}  // namespace
}  // namespace glyphbook

int main() {
  using glyphbook::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>>
      criteria = {
          {"first-fit golden partitions", glyphbook::FirstFitGolden},
          {"greedy guarantees vs exhaustive optimum", glyphbook::GuaranteeSuite},
          {"supermodularity of capped distortion", glyphbook::Supermodularity},
          {"metric contract", glyphbook::MetricContract},
          {"lossless round-trip", glyphbook::LosslessRoundTrip},
          {"gkm vs first-fit", glyphbook::GkmVersusFirstFit},
          {"gkm then k-means vs gkm", glyphbook::GkmThenKMeansVersusGkm},
          {"greedy trace discipline", glyphbook::GreedyTrace},
          {"bench determinism", glyphbook::BenchDeterminism},
          {"performance smoke", glyphbook::Performance},
      };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.passed) ++failed;
    std::printf("%s criterion %zu (%s): %s\n", o.passed ? "PASS" : "FAIL",
                i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
