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

// glyphbook: build pattern codebooks for bitonal document pages.
//
//   glyphbook compress page.pbm --algo gkm --out out/
//   glyphbook bench a.pbm b.pbm --algo first_fit,gkm
//   glyphbook synth --shapes 5 --glyphs 100 --seed 7 --out corpus/
//   glyphbook verify --n 8 --seeds 200

#include <cmath>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glyphbook/commands.h"

namespace {

using namespace glyphbook;

struct PipelineFlags {
  std::string algo = "gkm";
  std::optional<double> threshold_bits;
  std::string kappa = "1";
  int connectivity = 8;
  std::string epsilon = "0";
  int kmeans_min_decrease = 1;
  std::string kmeans_match = "first";
  std::string mode = "lossless";
  double noise_hint = 0.05;
  std::optional<std::int64_t> prefilter_slack;

  void Register(CLI::App* app, bool with_algo) {
    if (with_algo) {
      app->add_option("--algo", algo, "first_fit|ff_kmeans|gkm|gkm_kmeans|"
                                      "gkm_then_kmeans")
          ->capture_default_str();
    }
    app->add_option("--threshold-bits", threshold_bits,
                    "match threshold T in bits (default: derived from noise)");
    app->add_option("--kappa", kappa, "bits per pixel unit, e.g. 1, 1.5, 3/2")
        ->capture_default_str();
    app->add_option("--connectivity", connectivity, "4 or 8")
        ->check(CLI::IsMember({4, 8}))
        ->capture_default_str();
    app->add_option("--epsilon", epsilon,
                    "gkm_kmeans refinement tolerance in bits, or 'inf'")
        ->capture_default_str();
    app->add_option("--kmeans-min-decrease", kmeans_min_decrease,
                    "stop k-means when classes drop by fewer than this")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--kmeans-match", kmeans_match, "first or best")
        ->check(CLI::IsMember({"first", "best"}))
        ->capture_default_str();
    app->add_option("--mode", mode, "lossy or lossless")
        ->check(CLI::IsMember({"lossy", "lossless"}))
        ->capture_default_str();
    app->add_option("--noise-hint", noise_hint,
                    "noise level used to derive the default threshold")
        ->capture_default_str();
    app->add_option("--prefilter-slack", prefilter_slack,
                    "prune distances whose ink lower bound exceeds cost + "
                    "slack");
  }

  PipelineConfig Build() const {
    PipelineConfig c;
    c.algorithm = ParseAlgorithm(algo);
    c.model.kappa = Kappa::Parse(kappa);
    c.connectivity = connectivity == 4 ? Connectivity::kFour
                                       : Connectivity::kEight;
    c.threshold_bits = threshold_bits;
    c.noise_hint = noise_hint;
    c.epsilon = epsilon == "inf" ? std::numeric_limits<double>::infinity()
                                 : std::stod(epsilon);
    c.kmeans_min_decrease = kmeans_min_decrease;
    c.kmeans_mode = kmeans_match == "best" ? MatchMode::kBestMatch
                                           : MatchMode::kFirstMatch;
    c.mode = ParseCodingMode(mode);
    c.prefilter_slack = prefilter_slack;
    return c;
  }
};

void RegisterCorpus(CLI::App* app, CorpusSpec* spec) {
  app->add_option("--shapes", spec->base_shape_count, "base shape count")
      ->capture_default_str();
  app->add_option("--glyphs", spec->glyph_instance_count, "glyph instances")
      ->capture_default_str();
  app->add_option("--noise", spec->noise_flip_probability,
                  "boundary flip probability")
      ->capture_default_str();
  app->add_option("--jitter", spec->jitter_max, "max position jitter")
      ->capture_default_str();
  app->add_option("--page-width", spec->page_width, "0 = fit")
      ->capture_default_str();
  app->add_option("--page-height", spec->page_height, "0 = fit")
      ->capture_default_str();
  app->add_option("--shape-area-min", spec->shape_area_min)
      ->capture_default_str();
  app->add_option("--shape-area-max", spec->shape_area_max)
      ->capture_default_str();
  app->add_option("--seed", spec->seed, "random seed")->capture_default_str();
}

std::vector<std::string> SplitList(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const std::string& item : items) {
    std::size_t start = 0;
    while (start <= item.size()) {
      std::size_t comma = item.find(',', start);
      if (comma == std::string::npos) comma = item.size();
      if (comma > start) out.push_back(item.substr(start, comma - start));
      start = comma + 1;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern codebook builder for bitonal document images"};
  app.require_subcommand(1);

  // compress
  CLI::App* compress = app.add_subcommand("compress", "compress one page");
  std::string input;
  std::string compress_out;
  std::string compress_report = "json";
  std::uint64_t compress_seed = 1;
  PipelineFlags compress_flags;
  compress->add_option("input", input, "input PBM")->required();
  compress->add_option("--out", compress_out, "output directory")->required();
  compress->add_option("--report", compress_report, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  compress->add_option("--seed", compress_seed,
                       "accepted for symmetry; compression is seed-free");
  compress_flags.Register(compress, true);

  // bench
  CLI::App* bench = app.add_subcommand("bench", "compare algorithms");
  std::vector<std::string> bench_inputs;
  std::vector<std::string> bench_algos = {"first_fit", "gkm"};
  std::string bench_out;
  std::string bench_report = "csv";
  int synthetic_count = 0;
  bool timing = false;
  CorpusSpec bench_spec;
  PipelineFlags bench_flags;
  bench->add_option("inputs", bench_inputs, "input PBM pages");
  bench->add_option("--algo", bench_algos,
                    "comma-separated algorithms; the first is the baseline")
      ->delimiter(',');
  bench->add_option("--out", bench_out, "report file (default stdout)");
  bench->add_option("--report", bench_report, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  bench->add_option("--synthetic", synthetic_count,
                    "also bench this many generated pages (seeds seed, "
                    "seed+1, ...)");
  bench->add_flag("--timing", timing,
                  "add wall-clock columns (makes reports nondeterministic)");
  RegisterCorpus(bench, &bench_spec);
  bench_flags.Register(bench, false);

  // synth
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic page");
  SynthOptions synth_opts;
  synth->add_option("--out", synth_opts.out_dir, "output directory")
      ->required();
  RegisterCorpus(synth, &synth_opts.spec);

  // verify
  CLI::App* verify = app.add_subcommand("verify", "property campaign");
  VerifyOptions verify_opts;
  std::string distance_mode = "ink_hamming";
  std::string verify_kappa = "1";
  bool no_guarantees = false;
  bool no_supermodularity = false;
  verify->add_option("--n", verify_opts.n, "glyphs per instance")
      ->capture_default_str();
  verify->add_option("--seeds", verify_opts.seeds, "instances")
      ->capture_default_str();
  verify->add_option("--seed", verify_opts.seed, "first seed")
      ->capture_default_str();
  verify->add_option("--distance-mode", distance_mode,
                     "ink_hamming or asymmetric_surrogate")
      ->capture_default_str();
  verify->add_option("--alpha", verify_opts.model.alpha)->capture_default_str();
  verify->add_option("--beta", verify_opts.model.beta)->capture_default_str();
  verify->add_option("--kappa", verify_kappa)->capture_default_str();
  verify->add_option("--metric-samples", verify_opts.metric_samples,
                     "random triples per instance (0 = exhaustive)")
      ->capture_default_str();
  verify->add_flag("--no-guarantees", no_guarantees);
  verify->add_flag("--no-supermodularity", no_supermodularity);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*compress) {
      CompressOptions opts;
      opts.input = input;
      opts.out_dir = compress_out;
      opts.pipeline = compress_flags.Build();
      opts.report = ParseReportFormat(compress_report);
      return RunCompress(opts, std::cerr);
    }
    if (*bench) {
      BenchOptions opts;
      opts.inputs = bench_inputs;
      opts.synthetic_count = synthetic_count;
      opts.synthetic = bench_spec;
      for (const std::string& a : SplitList(bench_algos)) {
        opts.algorithms.push_back(ParseAlgorithm(a));
      }
      opts.pipeline = bench_flags.Build();
      opts.report = ParseReportFormat(bench_report);
      opts.timing = timing;
      return RunBenchCommand(opts, bench_out, std::cout, std::cerr);
    }
    if (*synth) return RunSynth(synth_opts, std::cerr);
    if (*verify) {
      verify_opts.model.mode = ParseDistanceMode(distance_mode);
      verify_opts.model.kappa = Kappa::Parse(verify_kappa);
      verify_opts.guarantees = !no_guarantees;
      verify_opts.supermodularity = !no_supermodularity;
      return RunVerifyCommand(verify_opts, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "glyphbook: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
