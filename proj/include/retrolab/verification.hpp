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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "retrolab/amplitude.hpp"
#include "retrolab/causal_model.hpp"

namespace retrolab {

/// Seed of the default phase grid used by `verify` and the property tests.
inline constexpr std::uint64_t kDefaultGridSeed = 20260101;

/// `random_points` uniform triples from [0, 2pi)^3 drawn with a fixed seed,
/// followed by the eight corners {0, pi/2}^3.
std::vector<PhaseSettings> phase_grid(std::uint64_t seed = kDefaultGridSeed,
                                      std::size_t random_points = 100);

using PairAmplitudeFn = std::function<Complex(PathPair, Outcome, const PhaseSettings&)>;

struct PropertyResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = kTolerance;
  bool passed = false;
};

struct VerificationSummary {
  std::vector<PropertyResult> properties;
  ContradictionReport contradiction_at_zero;
  bool passed = false;
};

/// Evaluates every analytic identity of the prediction modules over the
/// phase grid. `pair_amplitude` feeds the amplitude-sum route and defaults
/// to amp_pair; substituting it lets tests inject faults.
VerificationSummary run_verification(std::uint64_t grid_seed = kDefaultGridSeed,
                                     PairAmplitudeFn pair_amplitude = amp_pair);

}  // namespace retrolab
