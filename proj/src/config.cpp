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

#include "retrolab/config.hpp"

#include <initializer_list>
#include <string_view>

namespace retrolab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown(const json& object, const std::string& prefix,
                    std::initializer_list<std::string_view> known) {
  if (!object.is_object()) throw ConfigError(prefix.empty() ? "<root>" : prefix, "expected an object");
  for (const auto& [key, value] : object.items()) {
    bool found = false;
    for (auto k : known) found = found || key == k;
    if (!found) throw ConfigError(prefix.empty() ? key : prefix + "." + key, "unknown field");
  }
}

double read_number(const json& object, const std::string& prefix, const char* key, double fallback) {
  const auto it = object.find(key);
  if (it == object.end()) return fallback;
  if (!it->is_number()) throw ConfigError(prefix + key, "expected a number");
  return it->get<double>();
}

std::uint64_t read_count(const json& object, const std::string& prefix, const char* key,
                         std::uint64_t fallback) {
  const auto it = object.find(key);
  if (it == object.end()) return fallback;
  if (it->is_number_unsigned()) return it->get<std::uint64_t>();
  if (it->is_number_integer() && it->get<std::int64_t>() >= 0) return it->get<std::uint64_t>();
  throw ConfigError(prefix + key, "expected a non-negative integer");
}

std::string read_string(const json& object, const char* key, const std::string& fallback) {
  const auto it = object.find(key);
  if (it == object.end()) return fallback;
  if (!it->is_string()) throw ConfigError(key, "expected a string");
  return it->get<std::string>();
}

Geometry geometry_from_json(const json& doc, Geometry g) {
  reject_unknown(doc, "geometry",
                 {"long_arm", "short_arm", "source_to_bs11", "source_to_bs21", "bs21_to_bs22",
                  "bs11_to_detector", "bs22_to_detector", "delay_photon1", "delay_photon2",
                  "x_bs11", "x_bs21", "x_bs22", "v_bs11", "v_bs21", "v_bs22"});
  const std::string p = "geometry.";
  g.long_arm = read_number(doc, p, "long_arm", g.long_arm);
  g.short_arm = read_number(doc, p, "short_arm", g.short_arm);
  g.source_to_bs11 = read_number(doc, p, "source_to_bs11", g.source_to_bs11);
  g.source_to_bs21 = read_number(doc, p, "source_to_bs21", g.source_to_bs21);
  g.bs21_to_bs22 = read_number(doc, p, "bs21_to_bs22", g.bs21_to_bs22);
  g.bs11_to_detector = read_number(doc, p, "bs11_to_detector", g.bs11_to_detector);
  g.bs22_to_detector = read_number(doc, p, "bs22_to_detector", g.bs22_to_detector);
  g.delay_photon1 = read_number(doc, p, "delay_photon1", g.delay_photon1);
  g.delay_photon2 = read_number(doc, p, "delay_photon2", g.delay_photon2);
  g.x_bs11 = read_number(doc, p, "x_bs11", g.x_bs11);
  g.x_bs21 = read_number(doc, p, "x_bs21", g.x_bs21);
  g.x_bs22 = read_number(doc, p, "x_bs22", g.x_bs22);
  g.v_bs11 = read_number(doc, p, "v_bs11", g.v_bs11);
  g.v_bs21 = read_number(doc, p, "v_bs21", g.v_bs21);
  g.v_bs22 = read_number(doc, p, "v_bs22", g.v_bs22);
  try {
    g.validate();
  } catch (const DomainError& e) {
    throw ConfigError("geometry", e.what());
  }
  return g;
}

}  // namespace

void check_config(const ExperimentConfig& config) {
  try {
    config.validate();
  } catch (const DomainError& e) {
    // validate() messages start with the field name
    const std::string message = e.what();
    const bool geometry = message.rfind("invalid geometry", 0) == 0;
    throw ConfigError(geometry ? "geometry" : message.substr(0, message.find(' ')), message);
  }
}

ordered_json to_json(const Geometry& g) {
  return {{"long_arm", g.long_arm},
          {"short_arm", g.short_arm},
          {"source_to_bs11", g.source_to_bs11},
          {"source_to_bs21", g.source_to_bs21},
          {"bs21_to_bs22", g.bs21_to_bs22},
          {"bs11_to_detector", g.bs11_to_detector},
          {"bs22_to_detector", g.bs22_to_detector},
          {"delay_photon1", g.delay_photon1},
          {"delay_photon2", g.delay_photon2},
          {"x_bs11", g.x_bs11},
          {"x_bs21", g.x_bs21},
          {"x_bs22", g.x_bs22},
          {"v_bs11", g.v_bs11},
          {"v_bs21", g.v_bs21},
          {"v_bs22", g.v_bs22}};
}

ordered_json to_json(const PhaseSettings& phases) {
  return {{"alpha", phases.alpha()}, {"beta", phases.beta()}, {"gamma", phases.gamma()}};
}

ordered_json to_json(const ExperimentConfig& c) {
  ordered_json doc{{"geometry", to_json(c.geometry)},
                   {"phases", to_json(c.phases)},
                   {"model", to_string(c.model)},
                   {"n_events", c.n_events},
                   {"seed", c.seed},
                   {"jitter_sigma", c.jitter_sigma},
                   {"window", {{"center", c.window.center}, {"half_width", c.window.half_width}}}};
  doc["non_L_policy"] = c.non_L_policy ? ordered_json(to_string(*c.non_L_policy)) : ordered_json();
  doc["workers"] = c.workers;
  return doc;
}

ExperimentConfig config_from_json(const json& doc, ExperimentConfig base) {
  reject_unknown(doc, "",
                 {"geometry", "phases", "model", "n_events", "seed", "jitter_sigma", "window",
                  "non_L_policy", "workers"});
  ExperimentConfig c = std::move(base);
  if (doc.contains("geometry")) c.geometry = geometry_from_json(doc["geometry"], c.geometry);
  if (doc.contains("phases")) {
    const json& ph = doc["phases"];
    reject_unknown(ph, "phases", {"alpha", "beta", "gamma"});
    try {
      c.phases = {read_number(ph, "phases.", "alpha", c.phases.alpha()),
                  read_number(ph, "phases.", "beta", c.phases.beta()),
                  read_number(ph, "phases.", "gamma", c.phases.gamma())};
    } catch (const DomainError& e) {
      throw ConfigError("phases", e.what());
    }
  }
  try {
    c.model = parse_model(read_string(doc, "model", to_string(c.model)));
  } catch (const DomainError& e) {
    throw ConfigError("model", e.what());
  }
  c.n_events = read_count(doc, "", "n_events", c.n_events);
  c.seed = read_count(doc, "", "seed", c.seed);
  c.jitter_sigma = read_number(doc, "", "jitter_sigma", c.jitter_sigma);
  if (doc.contains("window")) {
    const json& w = doc["window"];
    reject_unknown(w, "window", {"center", "half_width"});
    c.window.center = read_number(w, "window.", "center", c.window.center);
    c.window.half_width = read_number(w, "window.", "half_width", c.window.half_width);
  }
  if (doc.contains("non_L_policy")) {
    const json& policy = doc["non_L_policy"];
    if (policy.is_null()) {
      c.non_L_policy.reset();
    } else if (!policy.is_string()) {
      throw ConfigError("non_L_policy", "expected a string or null");
    } else {
      try {
        c.non_L_policy = parse_non_L_policy(policy.get<std::string>());
      } catch (const DomainError& e) {
        throw ConfigError("non_L_policy", e.what());
      }
    }
  }
  c.workers = static_cast<unsigned>(read_count(doc, "", "workers", c.workers));

  check_config(c);
  return c;
}

}  // namespace retrolab
