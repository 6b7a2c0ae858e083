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

#include "cli.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "framecache/io.h"
#include "framecache/json.h"
#include "framecache/synth.h"
#include "test_util.h"

namespace framecache::cli {
namespace {

namespace fs = std::filesystem;
using testing::DataPath;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Call(std::vector<std::string> args) {
  args.insert(args.begin(), "framecache");
  std::ostringstream out, err;
  const int code = Dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("framecache_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Call({}).code, kExitUsage);
  EXPECT_EQ(Call({"bogus"}).code, kExitUsage);
  const Outcome o = Call({"run", "--stream", DataPath("worked_fixture.fcs"), "--out",
                          Path("t.fct"), "--speed", "3"});
  EXPECT_EQ(o.code, kExitUsage);
  EXPECT_NE(o.err.find("--speed"), std::string::npos);
  EXPECT_NE(o.err.find("Usage"), std::string::npos);
  EXPECT_FALSE(fs::exists(Path("t.fct")));
  EXPECT_EQ(Call({"run", "--stream", DataPath("worked_fixture.fcs"), "--out",
                  Path("t.fct"), "--capacity", "1"})
                .code,
            kExitUsage);
  EXPECT_EQ(Call({"run", "--stream", DataPath("worked_fixture.fcs"), "--out",
                  Path("t.fct"), "--policy", "lru"})
                .code,
            kExitUsage);
}

TEST_F(CliTest, RuntimeErrorsExitOne) {
  const Outcome o = Call({"run", "--stream", Path("missing.fcs"), "--out", Path("t.fct")});
  EXPECT_EQ(o.code, kExitFailure);
  EXPECT_NE(o.err.find("error:"), std::string::npos);
  std::ofstream(Path("bad.fcs")) << "{\"version\":\"fcs/1\",\"d_a\":2,\"d_p\":2}\n"
                                 << "{\"index\":0}\n";
  EXPECT_EQ(Call({"verify", "--stream", Path("bad.fcs")}).code, kExitFailure);
}

TEST_F(CliTest, RunMatchesGoldenTrace) {
  const Outcome o = Call({"run", "--stream", DataPath("worked_fixture.fcs"), "--out",
                          Path("t.fct"), "--capacity", "2", "--window", "2",
                          "--snapshot-out", Path("snap.json")});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(Slurp(Path("t.fct")), Slurp(DataPath("worked_fixture.fct")));
  EXPECT_NE(o.out.find("inserted 1, replaced 1, rejected 1"), std::string::npos);
  EXPECT_EQ(ReadSnapshotFile(Path("snap.json")).entry(1).frame_id, "r2");
}

TEST_F(CliTest, RunIsByteStable) {
  ASSERT_EQ(Call({"synth", "--seed", "9", "--n", "128", "--out", Path("s.fcs")}).code,
            kExitOk);
  ASSERT_EQ(Call({"run", "--stream", Path("s.fcs"), "--out", Path("a.fct")}).code, kExitOk);
  ASSERT_EQ(Call({"run", "--stream", Path("s.fcs"), "--out", Path("b.fct")}).code, kExitOk);
  EXPECT_EQ(Slurp(Path("a.fct")), Slurp(Path("b.fct")));
  EXPECT_FALSE(Slurp(Path("a.fct")).empty());
}

TEST_F(CliTest, VerifyPassesOnSyntheticStreams) {
  for (int seed = 1; seed <= 100; ++seed) {
    const std::string modes[] = {"clustered", "orthogonal-burst", "drift"};
    const std::string s = Path("s.fcs");
    ASSERT_EQ(Call({"synth", "--seed", std::to_string(seed), "--mode", modes[seed % 3],
                    "--n", "96", "--out", s})
                  .code,
              kExitOk);
    const Outcome o = Call({"verify", "--stream", s, "--capacity",
                            std::to_string(2 + seed % 7), "--window",
                            std::to_string(1 + seed % 16)});
    ASSERT_EQ(o.code, kExitOk) << seed << ": " << o.err;
    EXPECT_NE(o.out.find("verified"), std::string::npos);
  }
}

TEST_F(CliTest, SynthWritesParsableStream) {
  ASSERT_EQ(Call({"synth", "--seed", "3", "--mode", "drift", "--n", "20", "--d-a",
                  "5", "--d-p", "3", "--out", Path("s.fcs")})
                .code,
            kExitOk);
  const FrameStream s = ReadStreamFile(Path("s.fcs"));
  EXPECT_EQ(s.records.size(), 20u);
  EXPECT_EQ(s.d_a, 5u);
  SynthConfig sc;
  sc.seed = 3;
  sc.mode = SynthMode::kDrift;
  sc.n = 20;
  sc.d_a = 5;
  sc.d_p = 3;
  EXPECT_EQ(s, GenerateSynthetic(sc));
  EXPECT_EQ(Call({"synth", "--mode", "spiral", "--out", Path("x.fcs")}).code, kExitUsage);
}

TEST_F(CliTest, MatchAgainstSnapshot) {
  ASSERT_EQ(Call({"run", "--stream", DataPath("worked_fixture.fcs"), "--out",
                  Path("t.fct"), "--capacity", "2", "--window", "2",
                  "--snapshot-out", Path("snap.json")})
                .code,
            kExitOk);
  const Outcome o = Call({"match", "--snapshot", Path("snap.json"), "--stream",
                          DataPath("worked_fixture.fcs"), "--window-start", "3",
                          "--window-len", "2"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const Json j = Json::parse(o.out);
  EXPECT_EQ(j["selected_slot"], 1);
  EXPECT_EQ(j["selected_frame_id"], "r2");
  EXPECT_NEAR(j["selected_score"].get<double>(), std::sqrt(0.5), 1e-12);
  EXPECT_EQ(Call({"match", "--snapshot", Path("snap.json"), "--stream",
                  DataPath("worked_fixture.fcs"), "--window-start", "4",
                  "--window-len", "2"})
                .code,
            kExitUsage);
}

TEST_F(CliTest, CompareAndStats) {
  for (int seed = 1; seed <= 3; ++seed) {
    ASSERT_EQ(Call({"synth", "--seed", std::to_string(seed), "--n", "128", "--out",
                    Path("s" + std::to_string(seed) + ".fcs")})
                  .code,
              kExitOk);
  }
  const Outcome c = Call({"compare", "--streams", Path("s*.fcs"), "--policies",
                          "framecache,fifo", "--out", Path("report.json")});
  ASSERT_EQ(c.code, kExitOk) << c.err;
  const Json report = Json::parse(Slurp(Path("report.json")));
  EXPECT_EQ(report["streams"], 3);
  ASSERT_EQ(report["policies"].size(), 2u);
  EXPECT_EQ(report["policies"][1]["policy"], "fifo");
  EXPECT_EQ(report["policies"][0]["per_stream"][0]["stream"], Path("s1.fcs"));
  EXPECT_EQ(Call({"compare", "--streams", Path("none*.fcs"), "--out", Path("r.json")}).code,
            kExitFailure);

  ASSERT_EQ(Call({"run", "--stream", DataPath("worked_fixture.fcs"), "--out",
                  Path("t.fct"), "--capacity", "2", "--window", "2"})
                .code,
            kExitOk);
  const Outcome s = Call({"stats", "--trace", Path("t.fct")});
  ASSERT_EQ(s.code, kExitOk) << s.err;
  EXPECT_EQ(s.out,
            "replaced 1, rejected 1, inserted 1, windows 2\n"
            "final diversity (mean pairwise similarity) 0.000000\n"
            "hits 1 1\n");
}

}  // namespace
}  // namespace framecache::cli
