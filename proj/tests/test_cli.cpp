/**
 * Copyright 2026 The RetroLab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "retrolab/amplitude.hpp"
#include "retrolab/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;

  json doc() const { return json::parse(out); }
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "retrolab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = retrolab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name)
      : dir(fs::temp_directory_path() / ("retrolab_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& leaf) const { return (dir / leaf).string(); }
};

}  // namespace

TEST_CASE("predict examples") {
  const Result qm = call({"predict", "--model", "qm", "--alpha", "45", "--beta", "45", "--gamma",
                          "-45", "--degrees"});
  REQUIRE(qm.code == 0);
  CHECK(std::abs(qm.doc()["correlation"].get<double>() - 2.0 / 3) < 1e-12);
  CHECK(qm.doc()["manifest"]["command"] == "predict");
  CHECK(qm.doc()["manifest"]["version"] == retrolab::cli::kVersion);

  const Result causal = call({"predict", "--model", "causal", "--alpha", "45", "--beta", "45",
                              "--gamma", "-45", "--degrees"});
  REQUIRE(causal.code == 0);
  CHECK(std::abs(causal.doc()["correlation"].get<double>()) < 1e-12);

  const Result l = call({"predict", "--model", "causal", "--subensemble", "l"});
  CHECK(l.code == 2);
  CHECK(l.err.find("not specified") != std::string::npos);

  const Result zero = call({"predict"});
  REQUIRE(zero.code == 0);
  const json joint = zero.doc()["joint"];
  CHECK(joint["++"].get<double>() == doctest::Approx(1.0 / 12));
  CHECK(joint["-+"].get<double>() == doctest::Approx(9.0 / 12));
  CHECK(zero.doc()["singles"]["side1"]["+"].get<double>() == doctest::Approx(1.0 / 6));
}

TEST_CASE("degrees flag") {
  const Result r = call({"predict", "--alpha", "45", "--degrees"});
  REQUIRE(r.code == 0);
  CHECK(std::abs(r.doc()["phases"]["alpha"].get<double>() - retrolab::kPi / 4) < 1e-15);
  const Result rad = call({"predict", "--alpha", "0.785"});
  CHECK(rad.doc()["phases"]["alpha"].get<double>() == 0.785);
}

TEST_CASE("help, version and usage errors") {
  for (const char* cmd : {"predict", "simulate", "spectrum", "discriminate", "verify"}) {
    const Result r = call({cmd, "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("--") != std::string::npos);
  }
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"--version"}).code == 0);
  CHECK(call({}).code == 2);
  CHECK(call({"predict", "--bogus"}).code == 2);
  CHECK(call({"teleport"}).code == 2);
  CHECK(call({"predict", "--model", "classical"}).code == 2);
  CHECK(call({"predict", "--alpha", "nan"}).code == 2);
  CHECK(call({"simulate", "--events", "0", "--out", (fs::temp_directory_path() / "retrolab_cli_zero").string()})
            .code == 2);
  fs::remove_all(fs::temp_directory_path() / "retrolab_cli_zero");
}

TEST_CASE("simulate writes its outputs") {
  Scratch s("simulate");
  const Result r = call({"simulate", "--events", "5000", "--seed", "9", "--out", s / "a"});
  REQUIRE(r.code == 0);
  for (const char* f : {"events.csv", "spectrum.csv", "counts.json", "estimate.json", "manifest.json"}) {
    CHECK(fs::exists(fs::path(s / "a") / f));
  }
  const json report = r.doc();
  CHECK(report["manifest"]["seed"] == 9);
  CHECK(report["manifest"]["config"]["n_events"] == 5000);
  CHECK(report["manifest"]["outputs"].size() == 5);
  CHECK(json::parse(slurp(fs::path(s / "a") / "manifest.json"))["command"] == "simulate");
  CHECK(json::parse(slurp(fs::path(s / "a") / "counts.json"))["total"] ==
        report["estimate"]["coincidences"]);

  // same config, different worker count: identical bytes
  const Result again = call({"simulate", "--events", "5000", "--seed", "9", "--workers", "3", "--out", s / "b"});
  REQUIRE(again.code == 0);
  CHECK(slurp(fs::path(s / "a") / "events.csv") == slurp(fs::path(s / "b") / "events.csv"));
  CHECK(slurp(fs::path(s / "a") / "spectrum.csv") == slurp(fs::path(s / "b") / "spectrum.csv"));

  // replaying the manifest reproduces the run
  const Result replay = call({"simulate", "--config", s / "a/manifest.json", "--out", s / "c"});
  REQUIRE(replay.code == 0);
  CHECK(slurp(fs::path(s / "a") / "events.csv") == slurp(fs::path(s / "c") / "events.csv"));
  CHECK(slurp(fs::path(s / "a") / "estimate.json") == slurp(fs::path(s / "c") / "estimate.json"));
}

TEST_CASE("empty coincidence window") {
  Scratch s("empty");
  const Result r = call({"simulate", "--events", "100", "--window-center", "5e-8", "--out", s / "x"});
  CHECK(r.code == 1);
  CHECK(r.doc()["estimate"]["error"].get<std::string>().find("no coincidences") != std::string::npos);
}

TEST_CASE("config files") {
  Scratch s("config");
  {
    std::ofstream f(s / "bad.json");
    f << R"({"n_events": 100, "colour": "blue"})";
  }
  const Result bad = call({"simulate", "--config", s / "bad.json", "--out", s / "o"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("colour") != std::string::npos);

  {
    std::ofstream f(s / "broken.json");
    f << "{ not json";
  }
  CHECK(call({"simulate", "--config", s / "broken.json", "--out", s / "o"}).code == 2);
  CHECK(call({"simulate", "--config", s / "missing.json", "--out", s / "o"}).code == 2);

  {
    std::ofstream f(s / "good.json");
    f << R"({"n_events": 300, "seed": 4, "model": "causal", "window": {"half_width": 5e-10}})";
  }
  const Result good = call({"simulate", "--config", s / "good.json", "--out", s / "o"});
  REQUIRE(good.code == 0);
  const json cfg = good.doc()["manifest"]["config"];
  CHECK(cfg["model"] == "causal");
  CHECK(cfg["seed"] == 4);
  CHECK(cfg["window"]["half_width"] == 5e-10);

  // flags override the file
  const Result flagged = call({"simulate", "--config", s / "good.json", "--seed", "8",
                               "--window-width", "2e-10", "--out", s / "o"});
  REQUIRE(flagged.code == 0);
  CHECK(flagged.doc()["manifest"]["seed"] == 8);
  CHECK(flagged.doc()["manifest"]["config"]["window"]["half_width"] == 1e-10);
}

TEST_CASE("seed from the environment") {
  Scratch s("env");
  ::setenv("RETROLAB_SEED", "4242", 1);
  const Result env = call({"simulate", "--events", "200", "--out", s / "e"});
  const Result flag = call({"simulate", "--events", "200", "--seed", "5", "--out", s / "f"});
  ::setenv("RETROLAB_SEED", "x1", 1);
  const Result junk = call({"simulate", "--events", "200", "--out", s / "g"});
  ::unsetenv("RETROLAB_SEED");
  const Result plain = call({"simulate", "--events", "200", "--out", s / "h"});

  REQUIRE(env.code == 0);
  CHECK(env.doc()["manifest"]["seed"] == 4242);
  CHECK(flag.doc()["manifest"]["seed"] == 5);
  CHECK(junk.code == 2);
  CHECK(plain.doc()["manifest"]["seed"] == 1);
}

TEST_CASE("spectrum and discriminate manifests replay") {
  Scratch s("replay");
  const Result sp = call({"spectrum", "--events", "4000", "--jitter", "0", "--out", s / "sp"});
  REQUIRE(sp.code == 0);
  CHECK(sp.doc()["peaks"].size() == 4);
  CHECK(sp.doc()["total"] == 4000);
  const Result sp2 = call({"spectrum", "--config", s / "sp/manifest.json", "--out", s / "sp2"});
  REQUIRE(sp2.code == 0);
  CHECK(slurp(fs::path(s / "sp") / "spectrum.csv") == slurp(fs::path(s / "sp2") / "spectrum.csv"));

  const Result weak = call({"discriminate", "--events", "30", "--out", s / "d"});
  CHECK(weak.code == 1);
  CHECK(weak.doc()["sufficient"] == false);
  const Result strong = call({"discriminate", "--config", s / "d/manifest.json",
                              "--events", "100000"});
  CHECK(strong.code == 0);
  CHECK(strong.doc()["manifest"]["config"]["causal"]["model"] == "causal");
  CHECK(strong.doc()["analytic"]["qm"].get<double>() == doctest::Approx(2.0 / 3));
}

TEST_CASE("verify") {
  const Result r = call({"verify"});
  CHECK(r.code == 0);
  CHECK(r.doc()["passed"] == true);
  CHECK(r.doc()["properties"].size() == 19);
  CHECK(r.doc()["contradiction"]["consistent"] == false);
}

TEST_CASE("installed binary") {
  Scratch s("binary");
  const std::string bin = RETROLAB_BINARY;
  const std::string log = s / "stdout.json";
  CHECK(std::system((bin + " predict --model qm > " + log).c_str()) == 0);
  CHECK(json::parse(slurp(log))["manifest"]["command"] == "predict");
  const int status = std::system((bin + " predict --nope > " + log + " 2>&1").c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
