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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"

namespace glyphbook {
namespace {

namespace fs = std::filesystem;

class CommandsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("glyphbook_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }

  static std::string Slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::string Synth(const CorpusSpec& spec, const std::string& name) {
    SynthOptions opts{spec, Path(name)};
    std::ostringstream err;
    EXPECT_EQ(RunSynth(opts, err), 0) << err.str();
    return Path(name) + "/page.pbm";
  }

  fs::path dir_;
};

std::vector<std::vector<std::string>> CsvRows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(cells);
  }
  return rows;
}

TEST_F(CommandsTest, CompressBlankPage) {
  WritePbmFile(Path("blank.pbm"), Bitmap(20, 10), PbmFormat::kPlain);
  CompressOptions opts;
  opts.input = Path("blank.pbm");
  opts.out_dir = Path("out");
  std::ostringstream err;
  ASSERT_EQ(RunCompress(opts, err), 0) << err.str();
  auto report = nlohmann::json::parse(Slurp(Path("out/report.json")));
  EXPECT_EQ(report["glyphs"], 0);
  EXPECT_EQ(report["patterns"], 0);
  EXPECT_EQ(ReadPbmFile(Path("out/reconstruction.pbm")), Bitmap(20, 10));
}

TEST_F(CommandsTest, CompressNoiselessIsExactAndDeterministic) {
  CorpusSpec spec;
  spec.seed = 3;
  const std::string page = Synth(spec, "corpus");
  for (const char* out : {"a", "b"}) {
    CompressOptions opts;
    opts.input = page;
    opts.out_dir = Path(out);
    std::ostringstream err;
    ASSERT_EQ(RunCompress(opts, err), 0) << err.str();
  }
  EXPECT_EQ(ReadPbmFile(Path("a/reconstruction.pbm")), ReadPbmFile(page));
  for (const char* f : {"report.json", "codebook.json", "codebook.pbm",
                        "residuals.json", "reconstruction.pbm"}) {
    EXPECT_EQ(Slurp(Path(std::string("a/") + f)),
              Slurp(Path(std::string("b/") + f)))
        << f;
  }
  auto report = nlohmann::json::parse(Slurp(Path("a/report.json")));
  EXPECT_EQ(report["patterns"], 5);
}

TEST_F(CommandsTest, CompressLossyWritesNoResiduals) {
  CorpusSpec spec;
  const std::string page = Synth(spec, "corpus");
  CompressOptions opts;
  opts.input = page;
  opts.out_dir = Path("out");
  opts.pipeline.mode = CodingMode::kLossy;
  opts.report = ReportFormat::kCsv;
  std::ostringstream err;
  ASSERT_EQ(RunCompress(opts, err), 0);
  EXPECT_FALSE(fs::exists(Path("out/residuals.json")));
  EXPECT_TRUE(fs::exists(Path("out/report.csv")));
}

TEST_F(CommandsTest, CompressFailureLeavesNothing) {
  std::ofstream(Path("bad.pbm")) << "P7\n";
  CompressOptions opts;
  opts.input = Path("bad.pbm");
  opts.out_dir = Path("out");
  std::ostringstream err;
  EXPECT_EQ(RunCompress(opts, err), 2);
  EXPECT_NE(err.str().find("magic"), std::string::npos);
  EXPECT_FALSE(fs::exists(Path("out/report.json")));
  opts.input = Path("missing.pbm");
  EXPECT_EQ(RunCompress(opts, err), 2);
  EXPECT_FALSE(fs::exists(Path("out/report.json")));
}

TEST_F(CommandsTest, BenchNoiselessBothFindFive) {
  CorpusSpec spec;
  spec.seed = 9;
  BenchOptions opts;
  opts.inputs = {Synth(spec, "corpus")};
  opts.algorithms = {Algorithm::kFirstFit, Algorithm::kGkm};
  BenchReport r = RunBench(opts);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].patterns, 5);
  EXPECT_EQ(r.rows[1].patterns, 5);
  EXPECT_EQ(r.rows[1].pattern_reduction_pct, 0.0);
}

TEST_F(CommandsTest, BenchReductionsRecomputeFromColumns) {
  BenchOptions opts;
  opts.synthetic_count = 4;
  opts.synthetic.base_shape_count = 10;
  opts.synthetic.glyph_instance_count = 150;
  opts.synthetic.noise_flip_probability = 0.05;
  opts.algorithms = {Algorithm::kFirstFit, Algorithm::kGkm,
                     Algorithm::kGkmThenKMeans};
  const std::string csv = RunBench(opts).ToCsv();
  auto rows = CsvRows(csv);
  ASSERT_EQ(rows.size(), 1u + 4 * 3 + 3);
  const auto& header = rows[0];
  auto col = [&](const std::string& name) {
    return std::find(header.begin(), header.end(), name) - header.begin();
  };
  const auto patterns = col("patterns");
  const auto reduction = col("pattern_reduction_pct");
  std::map<std::string, std::vector<double>> per_algo;
  double baseline = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row[0] == "average") {
      const auto& values = per_algo[row[1]];
      double mean = 0;
      for (double v : values) mean += v / values.size();
      EXPECT_EQ(row[reduction], FormatDecimal(mean));
      continue;
    }
    const double p = std::stod(row[patterns]);
    if (row[1] == "first_fit") baseline = p;
    const double expected = (baseline - p) / baseline * 100.0;
    EXPECT_EQ(row[reduction], FormatDecimal(expected));
    per_algo[row[1]].push_back(std::stod(row[reduction]));
  }
}

TEST_F(CommandsTest, BenchRecordsRowErrorsAndContinues) {
  CorpusSpec spec;
  BenchOptions opts;
  opts.inputs = {Path("missing.pbm"), Synth(spec, "corpus")};
  opts.algorithms = {Algorithm::kFirstFit, Algorithm::kGkm};
  BenchReport r = RunBench(opts);
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_FALSE(r.rows[0].error.empty());
  EXPECT_TRUE(r.rows[2].error.empty());
  EXPECT_EQ(r.averages[0].patterns, 5);
  opts.algorithms = {Algorithm::kGkm};
  EXPECT_THROW(RunBench(opts), std::invalid_argument);
}

TEST_F(CommandsTest, BenchIsDeterministic) {
  BenchOptions opts;
  opts.synthetic_count = 2;
  opts.synthetic.noise_flip_probability = 0.1;
  opts.algorithms = AllAlgorithms();
  for (ReportFormat f : {ReportFormat::kCsv, ReportFormat::kJson}) {
    opts.report = f;
    std::ostringstream a, b, err;
    ASSERT_EQ(RunBenchCommand(opts, "", a, err), 0);
    ASSERT_EQ(RunBenchCommand(opts, "", b, err), 0);
    EXPECT_EQ(a.str(), b.str());
  }
}

TEST_F(CommandsTest, SynthWritesTruth) {
  CorpusSpec spec;
  spec.seed = 7;
  Synth(spec, "a");
  Synth(spec, "b");
  auto truth = nlohmann::json::parse(Slurp(Path("a/truth.json")));
  ASSERT_EQ(truth.size(), 100u);
  std::set<int> labels(truth.begin(), truth.end());
  EXPECT_EQ(labels.size(), 5u);
  EXPECT_EQ(Slurp(Path("a/page.pbm")), Slurp(Path("b/page.pbm")));
  EXPECT_EQ(Slurp(Path("a/truth.json")), Slurp(Path("b/truth.json")));
}

TEST_F(CommandsTest, SynthCapacityError) {
  SynthOptions opts;
  opts.spec.page_width = 10;
  opts.spec.page_height = 10;
  opts.spec.shape_area_min = 9;
  opts.spec.shape_area_max = 9;
  opts.out_dir = Path("out");
  std::ostringstream err;
  EXPECT_NE(RunSynth(opts, err), 0);
  EXPECT_NE(err.str().find("holds"), std::string::npos);
  EXPECT_FALSE(fs::exists(Path("out/page.pbm")));
}

TEST_F(CommandsTest, VerifyPassesOnMetricSuite) {
  VerifyOptions opts;
  opts.seeds = 25;
  std::ostringstream out, err;
  EXPECT_EQ(RunVerifyCommand(opts, out, err), 0) << err.str();
  auto report = nlohmann::json::parse(out.str());
  EXPECT_EQ(report["instances"], 25);
  EXPECT_TRUE(report["passed"].get<bool>());
}

TEST_F(CommandsTest, VerifyRefusesLargeInstances) {
  VerifyOptions opts;
  opts.n = 25;
  std::ostringstream out, err;
  EXPECT_EQ(RunVerifyCommand(opts, out, err), 2);
  EXPECT_NE(err.str().find("n <= 20"), std::string::npos);
}

TEST_F(CommandsTest, VerifyFlagsAsymmetricSurrogate) {
  VerifyOptions opts;
  opts.seeds = 3;
  opts.model.mode = DistanceMode::kAsymmetric;
  opts.model.alpha = 2;
  opts.model.beta = 1;
  std::ostringstream out, err;
  EXPECT_EQ(RunVerifyCommand(opts, out, err), 1);
  EXPECT_NE(err.str().find("symmetry"), std::string::npos);
  auto report = nlohmann::json::parse(out.str());
  EXPECT_GT(report["metric_failures"].get<int>(), 0);
  EXPECT_FALSE(report["counterexamples"].empty());
}

}  // namespace
}  // namespace glyphbook
