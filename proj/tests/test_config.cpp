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

#include <string>

#include "doctest.h"
#include "retrolab/config.hpp"

using namespace retrolab;
using nlohmann::json;

namespace {

std::string field_of(const json& doc) {
  try {
    config_from_json(doc);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("json round trip") {
  ExperimentConfig c;
  c.geometry = Geometry::all_before_moving();
  c.geometry.long_arm = 1.25;
  c.phases = PhaseSettings(0.1, -2.0, 3.5);
  c.model = Model::Causal;
  c.n_events = 12345;
  c.seed = 0xFFFFFFFFFFFFFFFFull;
  c.jitter_sigma = 7e-11;
  c.window = {1e-10, 3e-10};
  c.non_L_policy = NonLPolicy::Uniform;
  c.workers = 2;

  const auto doc = to_json(c);
  const ExperimentConfig back = config_from_json(json::parse(doc.dump()));
  CHECK(to_json(back) == doc);
  CHECK(back.seed == c.seed);
  CHECK(back.phases.beta() == -2.0);
  CHECK(back.non_L_policy == NonLPolicy::Uniform);

  const std::string text = doc.dump();
  CHECK(text.find("\"geometry\"") < text.find("\"phases\""));
}

TEST_CASE("partial documents keep the base values") {
  ExperimentConfig base;
  base.seed = 77;
  const ExperimentConfig c = config_from_json(json::parse(R"({"n_events": 10, "window": {"center": 1e-9}})"), base);
  CHECK(c.seed == 77);
  CHECK(c.n_events == 10);
  CHECK(c.window.center == 1e-9);
  CHECK(c.window.half_width == CoincidenceWindow{}.half_width);
}

TEST_CASE("unknown fields are named") {
  CHECK(field_of(json::parse(R"({"nevents": 10})")) == "nevents");
  CHECK(field_of(json::parse(R"({"geometry": {"long_arms": 2}})")) == "geometry.long_arms");
  CHECK(field_of(json::parse(R"({"phases": {"delta": 0}})")) == "phases.delta");
  CHECK(field_of(json::parse(R"({"window": {"width": 1}})")) == "window.width");
  CHECK(field_of(json::parse("[1, 2]")) == "<root>");
}

TEST_CASE("type errors are named") {
  CHECK(field_of(json::parse(R"({"n_events": "many"})")) == "n_events");
  CHECK(field_of(json::parse(R"({"n_events": -5})")) == "n_events");
  CHECK(field_of(json::parse(R"({"seed": 1.5})")) == "seed");
  CHECK(field_of(json::parse(R"({"phases": {"alpha": "pi"}})")) == "phases.alpha");
  CHECK(field_of(json::parse(R"({"model": 3})")) == "model");
  CHECK(field_of(json::parse(R"({"model": "classical"})")) == "model");
  CHECK(field_of(json::parse(R"({"non_L_policy": 1})")) == "non_L_policy");
  CHECK(field_of(json::parse(R"({"non_L_policy": "drop"})")) == "non_L_policy");
  CHECK(field_of(json::parse(R"({"geometry": 5})")) == "geometry");
}

TEST_CASE("validation failures are named") {
  CHECK(field_of(json::parse(R"({"n_events": 0})")) == "n_events");
  CHECK(field_of(json::parse(R"({"jitter_sigma": -1e-9})")) == "jitter_sigma");
  CHECK(field_of(json::parse(R"({"window": {"half_width": 0}})")) == "window.half_width");
  CHECK(field_of(json::parse(R"({"geometry": {"short_arm": 2.0}})")) == "geometry");
  CHECK(field_of(json::parse(R"({"geometry": {"v_bs21": 3e8}})")) == "geometry");
  CHECK(field_of(json::parse(R"({"model": "causal", "non_L_policy": null})")) == "non_L_policy");
  CHECK(field_of(json::parse(R"({"model": "causal"})")) == "<accepted>");

  try {
    config_from_json(json::parse(R"({"n_events": 0})"));
    FAIL("accepted");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).rfind("config field 'n_events': ", 0) == 0);
  }
}

TEST_CASE("null policy survives serialisation") {
  ExperimentConfig c;
  c.non_L_policy.reset();
  const auto doc = to_json(c);
  CHECK(doc["non_L_policy"].is_null());
  CHECK_FALSE(config_from_json(json::parse(doc.dump())).non_L_policy.has_value());
}
