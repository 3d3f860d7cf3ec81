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

#include "retrolab/qm_model.hpp"

#include <cmath>
#include <complex>

namespace retrolab {

ProbabilityTable qm_joint(Subensemble subensemble, const PhaseSettings& phases) {
  if (subensemble != Subensemble::Long && subensemble != Subensemble::Short) {
    throw DomainError("subensemble " + to_string(subensemble) +
                      " has no interfering partners; use qm_joint_singleton");
  }
  JointMatrix p;
  for (Outcome o : kOutcomes) {
    Complex total{};
    for (PathPair path : paths_of(subensemble)) total += amp_pair(path, o, phases);
    p(index(o.sigma), index(o.omega)) = std::norm(total);
  }
  return {subensemble, p};
}

ProbabilityTable qm_joint_closed_L(const PhaseSettings& phases) {
  const double ab = std::cos(phases.alpha() + phases.beta());
  const double ag = std::cos(phases.alpha() + phases.gamma());
  const double gb = std::cos(phases.gamma() - phases.beta());
  JointMatrix p;
  p << 3.0 - 2.0 * ab - 2.0 * ag + 2.0 * gb, 3.0 - 2.0 * ab + 2.0 * ag - 2.0 * gb,
      3.0 + 2.0 * ab + 2.0 * ag + 2.0 * gb, 3.0 + 2.0 * ab - 2.0 * ag - 2.0 * gb;
  return {Subensemble::Long, p / 12.0};
}

ProbabilityTable qm_joint_singleton(PathPair path) {
  const Subensemble s = subensemble_of(path);
  if (s != Subensemble::TwoLongMinusShort && s != Subensemble::TwoShortMinusLong) {
    throw DomainError("path " + to_string(path) + " is not a single-path subensemble");
  }
  return {s, JointMatrix::Constant(0.25)};
}

double qm_correlation(const PhaseSettings& phases) {
  return (2.0 / 3.0) * std::cos(phases.alpha() + phases.gamma());
}

SinglesPair qm_singles(Side side, Subensemble subensemble, const PhaseSettings& phases) {
  if (subensemble == Subensemble::Long) {
    if (side == Side::Two) {
      const double c = std::cos(phases.beta() - phases.gamma()) / 3.0;
      return {0.5 + c, 0.5 - c};
    }
    const double c = std::cos(phases.alpha() + phases.beta()) / 3.0;
    return {0.5 - c, 0.5 + c};
  }
  if (subensemble == Subensemble::Short) {
    if (side == Side::One) {
      const double c = std::cos(phases.alpha() + phases.beta()) / 3.0;
      return {0.5 + c, 0.5 - c};
    }
    return qm_joint(Subensemble::Short, phases).singles(Side::Two);
  }
  throw DomainError("single probabilities are defined for subensembles L and l");
}

double qm_no_signaling_marginal(const PhaseSettings& phases) {
  const double from_long = qm_singles(Side::One, Subensemble::Long, phases).plus;
  const double from_short = qm_singles(Side::One, Subensemble::Short, phases).plus;
  return (3.0 / 8.0) * from_long + (3.0 / 8.0) * from_short + (2.0 / 8.0) * 0.5;
}

}  // namespace retrolab
