// Copyright 2026 The wtype Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "wtype/cli.hpp"
#include "wtype/json_io.hpp"

namespace wtype {
namespace {

using io::json;

struct CliRun {
  int code;
  json out;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "wtype");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  json j;
  if (!out.str().empty() && out.str()[0] == '{') j = json::parse(out.str());
  return {code, j};
}

const std::string kX = R"({"p":3,"x":[0.5,0.2,0.1]})";
const std::string kFace = R"({"x":[0.4,0.35,0.25]})";
const std::string kW3 = R"({"x":[0.3333333333333333,0.3333333333333333,0.3333333333333334]})";

TEST(CliTest, ParamOnStates) {
  CliRun r = run({"param", R"({"amps":[0,0.5773502691896258,0.5773502691896258,0,0.5773502691896258,0,0,0]})"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["status"], "ok");
  for (const json& v : r.out["payload"]["x"]) EXPECT_NEAR(v.get<double>(), 1.0 / 3.0, 1e-12);

  r = run({"param", R"({"p":3,"amps":[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["payload"]["class"]["kind"], "product");

  r = run({"param", R"({"amps":[0.7071067811865476,0,0,0,0,0,0,0.7071067811865476]})"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out["status"], "error");
  EXPECT_EQ(r.out["code"], "not_w_type");
}

TEST(CliTest, Equiv) {
  CliRun r = run({"equiv", R"({"x":[0.5,0.2,0]})", R"({"x":[0.25,0.4,0]})"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out["payload"]["equivalent"].get<bool>());
  r = run({"equiv", kW3, R"({"x":[0.4,0.3,0.3]})", "--tol", "1e-3"});
  EXPECT_FALSE(r.out["payload"]["equivalent"].get<bool>());
  r = run({"equiv", kW3, R"({"x":[0.34,0.33,0.33]})", "--tol", "0.02"});
  EXPECT_TRUE(r.out["payload"]["equivalent"].get<bool>());
}

TEST(CliTest, Convert) {
  CliRun r = run({"convert", kX, R"({"x":[0.4,0.2,0.1]})", "--emit-protocol"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out["payload"]["convertible"].get<bool>());
  EXPECT_EQ(r.out["payload"]["protocol"]["steps"].size(), 1u);

  r = run({"convert", kX, kX, "--emit-protocol"});
  EXPECT_TRUE(r.out["payload"]["protocol"]["steps"].empty());

  r = run({"convert", kW3, R"({"x":[0.4,0.3,0.3]})"});
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(r.out["payload"]["convertible"].get<bool>());
}

TEST(CliTest, Synth) {
  const std::string ens =
      R"({"party":0,"outcomes":[{"probability":0.5,"target":{"x":[0.2,0.32,0.16]}},)"
      R"({"probability":0.5,"target":{"x":[0.3,0.08,0.04]}}]})";
  CliRun r = run({"synth", kX, ens});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out["payload"]["validation"]["valid"].get<bool>());
  EXPECT_GE(r.out["payload"]["operators"].size(), 2u);

  r = run({"synth", R"({"x":[0.4,0.3,0]})",
           R"({"party":0,"outcomes":[{"probability":1,"target":[0.35,0.35,0]}]})"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out["payload"]["validation"]["violated"], "polygon");
}

TEST(CliTest, DistillAndSimulate) {
  CliRun r = run({"distill", kFace, kW3, "--emit-protocol"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(r.out["payload"]["bound"].get<double>(), 0.75, 1e-12);
  const json protocol = r.out["payload"]["plan"]["protocol"];
  ASSERT_EQ(protocol["steps"].size(), 2u);

  // Emitted protocols re-parse losslessly.
  EXPECT_EQ(io::to_json(io::protocol_from_json(protocol)), protocol);

  r = run({"simulate", kFace, protocol.dump()});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(r.out["payload"]["success_probability"].get<double>(), 0.75, 1e-10);

  const CliRun a = run({"simulate", kFace, protocol.dump(), "--mode", "sampled", "--trials", "2000", "--seed", "5"});
  const CliRun b = run({"simulate", kFace, protocol.dump(), "--mode", "sampled", "--trials", "2000", "--seed", "5"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);

  r = run({"simulate", kFace, R"({"steps":[],"p_success":1})"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["payload"]["leaves"].size(), 1u);

  // t * y with t < 1 is off the face: bound only.
  r = run({"distill", R"({"x":[0.2,0.2,0.2]})", kW3, "--emit-protocol"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(r.out["payload"]["bound"].get<double>(), 0.6, 1e-12);
  EXPECT_TRUE(r.out["payload"]["plan"].is_null());
  EXPECT_FALSE(r.out["diagnostics"].empty());
}

TEST(CliTest, FilesAndRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "wtype_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "x.json";
  std::ofstream(path) << kX;
  CliRun r = run({"equiv", path.string(), path.string()});
  ASSERT_EQ(r.code, 0);
  const json back = r.out["payload"]["canonical_x"];
  EXPECT_EQ(io::to_json(io::param_vector_from_json(back)), back);
  std::filesystem::remove_all(dir);
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"equiv", kX}).code, 1);
  EXPECT_EQ(run({"equiv", kX, "/nonexistent/file.json"}).code, 1);
  EXPECT_EQ(run({"equiv", kX, "{not json"}).code, 1);
  EXPECT_EQ(run({"equiv", kX, R"({"x":[0.9,0.9,0.9]})"}).code, 1);
  EXPECT_EQ(run({"simulate", kFace, R"({"steps":[]})", "--mode", "bogus"}).code, 1);
  EXPECT_EQ(run({"distill", kX, kW3, "--tol", "-1"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliTest, Selftest) {
  const CliRun r = run({"selftest", "--pretty"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["payload"]["failed"], 0);
}

}  // namespace
}  // namespace wtype
