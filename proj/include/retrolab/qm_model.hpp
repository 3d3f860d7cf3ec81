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

#include "retrolab/amplitude.hpp"
#include "retrolab/probability.hpp"

namespace retrolab {

/// Superposition rule: p_{sigma omega} = |sum of the three pair amplitudes|^2
/// over subensemble L or l. Other subensembles throw; see qm_joint_singleton.
ProbabilityTable qm_joint(Subensemble subensemble, const PhaseSettings& phases);

/// Closed-form subensemble-L joint table,
/// (1/12)[3 - 2 sigma cos(a+b) - 2 sigma omega cos(a+g) + 2 omega cos(g-b)].
ProbabilityTable qm_joint_closed_L(const PhaseSettings& phases);

/// Uniform 1/4 table for the two single-path subensembles (l,LL) and (L,ll).
ProbabilityTable qm_joint_singleton(PathPair path);

/// (2/3) cos(alpha + gamma).
double qm_correlation(const PhaseSettings& phases);

/// Single-side probabilities. Subensemble L uses the closed forms, side 1 of
/// subensemble l likewise; side 2 of subensemble l is the marginal of the
/// amplitude-sum table.
SinglesPair qm_singles(Side side, Subensemble subensemble, const PhaseSettings& phases);

/// Unconditioned probability of D1(+) over the full ensemble with 1/8 prior
/// per path pair. Identically 1/2.
double qm_no_signaling_marginal(const PhaseSettings& phases);

}  // namespace retrolab
