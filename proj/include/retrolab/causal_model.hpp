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

#include <array>
#include <span>
#include <string>
#include <vector>

#include "retrolab/amplitude.hpp"
#include "retrolab/probability.hpp"

namespace retrolab {

/// Raised when a prediction is requested that the causal model leaves open.
class UnspecifiedPrediction : public DomainError {
 public:
  using DomainError::DomainError;
};

enum class BeamSplitter { BS11, BS21, BS22 };

inline constexpr std::array<BeamSplitter, 3> kBeamSplitters{
    BeamSplitter::BS11, BeamSplitter::BS21, BeamSplitter::BS22};

std::string to_string(BeamSplitter bs);

enum class ImpactLabel { Before, NonBefore };

struct ImpactClass {
  ImpactLabel label = ImpactLabel::NonBefore;
  BeamSplitter beam_splitter = BeamSplitter::BS11;

  friend bool operator==(const ImpactClass&, const ImpactClass&) = default;
};

/// "b11", "a21" and so on.
std::string to_string(const ImpactClass& c);

/// Labels for (BS11, BS21, BS22), in that order.
using ImpactTriple = std::array<ImpactClass, 3>;

ImpactTriple make_triple(ImpactLabel bs11, ImpactLabel bs21, ImpactLabel bs22);

enum class CaseKind {
  AllBefore,                   // (b11, b21, b22)
  CausalIndistinguishability,  // (b11, a21, b22)
  FastSplitterUnsupported,     // (b11, b21, a22)
};

std::string to_string(CaseKind k);

struct ModelCase {
  ImpactTriple classes;

  CaseKind kind() const;
  bool computable() const { return kind() != CaseKind::FastSplitterUnsupported; }
};

enum class InterferenceOrder { First = 1, Second = 2 };

/// One assertion of the rule set: whether `paths` interfere at the stated
/// order at the listed splitters.
struct InterferenceRule {
  std::vector<PathPair> paths;
  std::vector<BeamSplitter> location;
  InterferenceOrder order = InterferenceOrder::Second;
  bool interferes = false;
};

using InterferenceRuleSet = std::vector<InterferenceRule>;

/// Generic interference condition over the subensemble-L paths: the set may
/// interfere at the given order at BS2k only if every path of the set is
/// indistinguishable there and, at every earlier splitter where any of them
/// takes part in an interference of the same order, all of them take part
/// in that same interference. Second order means the nonlocal two-photon
/// interference with BS11.
bool cic_allows(std::span<const PathPair> paths, InterferenceOrder order, BeamSplitter at);

/// The three rules for subensemble L, each checked against cic_allows.
InterferenceRuleSet cic_rules();

/// All-before case from product amplitudes,
/// |A_s(L)|^2 |A_w(LL)|^2 + |A_s(l)|^2 |A_w(Ll) + A_w(lL)|^2.
ProbabilityTable causal_joint_bbb(const PhaseSettings& phases,
                                  Subensemble subensemble = Subensemble::Long);

/// 1/4 + omega (1/6) cos(beta - gamma).
ProbabilityTable causal_joint_bbb_closed(const PhaseSettings& phases);

SinglesPair causal_singles_bbb(Side side, const PhaseSettings& phases);

struct PathContribution {
  PathPair path;
  JointMatrix p;
};

/// Per-path outcome distributions in the (b11, a21, b22) case.
std::array<PathContribution, 3> causal_path_contributions(const PhaseSettings& phases);

/// Equal-weight mixture of the three path contributions.
ProbabilityTable causal_joint(const PhaseSettings& phases,
                              Subensemble subensemble = Subensemble::Long);

/// (1/12)[3 - 2s cos(a+b) + 2w cos(g-b) - s w cos(a+b) cos(g-b)].
ProbabilityTable causal_joint_closed(const PhaseSettings& phases);

/// (1/3) cos(alpha + beta) cos(gamma - beta).
double causal_correlation(const PhaseSettings& phases);

SinglesPair causal_singles(Side side, const PhaseSettings& phases);

/// Joint table for a computable case. Throws UnspecifiedPrediction for the
/// fast-splitter case or for any subensemble other than L.
ProbabilityTable causal_joint_for(const ModelCase& model_case, const PhaseSettings& phases,
                                  Subensemble subensemble = Subensemble::Long);

struct ContradictionReport {
  bool consistent = false;
  double discrepancy = 0.0;
};

/// Compares the QM side-1 single probability with the all-before value 1/2
/// that the sum-of-amplitudes rule would force on (b11, a21, a22).
ContradictionReport verify_nonbefore_contradiction(const PhaseSettings& phases);

}  // namespace retrolab
