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

#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "retrolab/experiment.hpp"

namespace retrolab {

/// Malformed configuration document. `field()` is the dotted path of the
/// offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error("config field '" + field + "': " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// ExperimentConfig::validate, reported as a ConfigError on the failing field.
void check_config(const ExperimentConfig& config);

nlohmann::ordered_json to_json(const Geometry& geometry);
nlohmann::ordered_json to_json(const PhaseSettings& phases);
nlohmann::ordered_json to_json(const ExperimentConfig& config);

/// Fields absent from `doc` keep the values already in `base`; unknown
/// fields and wrong types raise ConfigError. The result is validated.
ExperimentConfig config_from_json(const nlohmann::json& doc, ExperimentConfig base = {});

}  // namespace retrolab
