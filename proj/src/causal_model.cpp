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

#include "retrolab/causal_model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "retrolab/qm_model.hpp"

namespace retrolab {

namespace {

int longs(Arm a) { return a == Arm::Long ? 1 : 0; }

int stage_of(BeamSplitter bs) {
  switch (bs) {
    case BeamSplitter::BS21: return 1;
    case BeamSplitter::BS22: return 2;
    default:
      throw DomainError("interference stages are indexed by the photon-2 splitters BS21, BS22");
  }
}

int prefix_longs(PathPair p, int stage) {
  return longs(p.photon2.first) + (stage >= 2 ? longs(p.photon2.second) : 0);
}

// Paths with equal keys are indistinguishable at the stage for that order.
int interference_key(PathPair p, InterferenceOrder order, int stage) {
  if (order == InterferenceOrder::Second) return prefix_longs(p, stage) - longs(p.photon1);
  return 4 * longs(p.photon1) + prefix_longs(p, stage);
}

// Two-photon route traversed up to the stage.
int route_so_far(PathPair p, int stage) {
  int code = 4 * longs(p.photon1) + 2 * longs(p.photon2.first);
  if (stage >= 2) code += longs(p.photon2.second);
  return code;
}

std::vector<PathPair> group_at(PathPair p, InterferenceOrder order, int stage) {
  std::vector<PathPair> group;
  const int key = interference_key(p, order, stage);
  for (PathPair q : paths_of(Subensemble::Long)) {
    if (interference_key(q, order, stage) == key) group.push_back(q);
  }
  return group;
}

bool has_distinct_routes(std::span<const PathPair> paths, int stage) {
  return std::any_of(paths.begin(), paths.end(), [&](PathPair q) {
    return route_so_far(q, stage) != route_so_far(paths.front(), stage);
  });
}

bool interferes(std::span<const PathPair> group, int stage) {
  return group.size() >= 2 && has_distinct_routes(group, stage);
}

bool contains(std::span<const PathPair> set, PathPair p) {
  return std::find(set.begin(), set.end(), p) != set.end();
}

}  // namespace

std::string to_string(BeamSplitter bs) {
  switch (bs) {
    case BeamSplitter::BS11: return "BS11";
    case BeamSplitter::BS21: return "BS21";
    case BeamSplitter::BS22: return "BS22";
  }
  return "?";
}

std::string to_string(const ImpactClass& c) {
  std::string s = c.label == ImpactLabel::Before ? "b" : "a";
  switch (c.beam_splitter) {
    case BeamSplitter::BS11: return s + "11";
    case BeamSplitter::BS21: return s + "21";
    case BeamSplitter::BS22: return s + "22";
  }
  return s;
}

ImpactTriple make_triple(ImpactLabel bs11, ImpactLabel bs21, ImpactLabel bs22) {
  return {{{bs11, BeamSplitter::BS11}, {bs21, BeamSplitter::BS21}, {bs22, BeamSplitter::BS22}}};
}

std::string to_string(CaseKind k) {
  switch (k) {
    case CaseKind::AllBefore: return "all-before";
    case CaseKind::CausalIndistinguishability: return "causal-indistinguishability";
    case CaseKind::FastSplitterUnsupported: return "fast-splitter-unsupported";
  }
  return "?";
}

CaseKind ModelCase::kind() const {
  const bool b11 = classes[0].label == ImpactLabel::Before;
  const bool b21 = classes[1].label == ImpactLabel::Before;
  const bool b22 = classes[2].label == ImpactLabel::Before;
  if (b11 && b21 && b22) return CaseKind::AllBefore;
  if (b11 && b21) return CaseKind::FastSplitterUnsupported;
  return CaseKind::CausalIndistinguishability;
}

bool cic_allows(std::span<const PathPair> paths, InterferenceOrder order, BeamSplitter at) {
  const int stage = stage_of(at);
  const auto universe = paths_of(Subensemble::Long);
  for (PathPair p : paths) {
    if (!contains(universe, p)) {
      throw DomainError("interference condition is evaluated over subensemble L; got " +
                        to_string(p));
    }
  }
  if (paths.size() < 2) return false;

  const int key = interference_key(paths.front(), order, stage);
  for (PathPair p : paths) {
    if (interference_key(p, order, stage) != key) return false;
  }
  if (!has_distinct_routes(paths, stage)) return false;

  for (int earlier = 1; earlier < stage; ++earlier) {
    for (PathPair p : paths) {
      const auto group = group_at(p, order, earlier);
      if (!interferes(group, earlier)) continue;
      for (PathPair q : paths) {
        if (!contains(group, q)) return false;
      }
    }
  }
  return true;
}

InterferenceRuleSet cic_rules() {
  const PathPair LLL{Arm::Long, {Arm::Long, Arm::Long}};
  const PathPair lLl{Arm::Short, {Arm::Long, Arm::Short}};
  const PathPair llL{Arm::Short, {Arm::Short, Arm::Long}};

  InterferenceRuleSet rules{
      {{LLL, llL}, {BeamSplitter::BS11, BeamSplitter::BS21}, InterferenceOrder::Second, false},
      {{lLl, llL}, {BeamSplitter::BS22}, InterferenceOrder::First, false},
      {{LLL, lLl}, {BeamSplitter::BS11, BeamSplitter::BS22}, InterferenceOrder::Second, false},
  };
  for (auto& rule : rules) {
    rule.interferes = cic_allows(rule.paths, rule.order, rule.location.back());
  }
  return rules;
}

ProbabilityTable causal_joint_bbb(const PhaseSettings& phases, Subensemble subensemble) {
  if (subensemble != Subensemble::Long) {
    throw UnspecifiedPrediction("causal prediction not specified for subensemble " +
                                to_string(subensemble));
  }
  const Route LL{Arm::Long, Arm::Long};
  const Route Ll{Arm::Long, Arm::Short};
  const Route lL{Arm::Short, Arm::Long};
  JointMatrix p;
  for (Outcome o : kOutcomes) {
    const double long_arm = std::norm(amp_photon1(Arm::Long, o.sigma, phases)) *
                            std::norm(amp_segment(LL, o.omega, phases));
    const double short_arm =
        std::norm(amp_photon1(Arm::Short, o.sigma, phases)) *
        std::norm(amp_segment(Ll, o.omega, phases) + amp_segment(lL, o.omega, phases));
    p(index(o.sigma), index(o.omega)) = long_arm + short_arm;
  }
  return {Subensemble::Long, p};
}

ProbabilityTable causal_joint_bbb_closed(const PhaseSettings& phases) {
  const double c = std::cos(phases.beta() - phases.gamma()) / 6.0;
  JointMatrix p;
  p << 0.25 + c, 0.25 - c, 0.25 + c, 0.25 - c;
  return {Subensemble::Long, p};
}

SinglesPair causal_singles_bbb(Side side, const PhaseSettings& phases) {
  if (side == Side::One) return {0.5, 0.5};
  const double c = std::cos(phases.beta() - phases.gamma()) / 3.0;
  return {0.5 + c, 0.5 - c};
}

std::array<PathContribution, 3> causal_path_contributions(const PhaseSettings& phases) {
  const double ab = std::cos(phases.alpha() + phases.beta());
  const double gb = std::cos(phases.gamma() - phases.beta());
  // BS11/BS21 two-photon factor depends on sigma, BS22 one-photon factor on omega.
  const Eigen::Vector2d bs21_factor(1.0 - ab, 1.0 + ab);
  const Eigen::RowVector2d bs22_factor(1.0 + gb, 1.0 - gb);
  const Eigen::RowVector2d flat_omega = Eigen::RowVector2d::Ones();
  const Eigen::Vector2d flat_sigma = Eigen::Vector2d::Ones();

  return {{
      {{Arm::Long, {Arm::Long, Arm::Long}}, 0.25 * bs21_factor * flat_omega},
      {{Arm::Short, {Arm::Short, Arm::Long}}, 0.25 * bs21_factor * bs22_factor},
      {{Arm::Short, {Arm::Long, Arm::Short}}, 0.25 * flat_sigma * bs22_factor},
  }};
}

ProbabilityTable causal_joint(const PhaseSettings& phases, Subensemble subensemble) {
  if (subensemble != Subensemble::Long) {
    throw UnspecifiedPrediction("causal prediction not specified for subensemble " +
                                to_string(subensemble));
  }
  JointMatrix total = JointMatrix::Zero();
  for (const auto& contribution : causal_path_contributions(phases)) total += contribution.p;
  return {Subensemble::Long, total / 3.0};
}

ProbabilityTable causal_joint_closed(const PhaseSettings& phases) {
  const double ab = std::cos(phases.alpha() + phases.beta());
  const double gb = std::cos(phases.gamma() - phases.beta());
  JointMatrix p;
  for (Outcome o : kOutcomes) {
    const double s = value(o.sigma);
    const double w = value(o.omega);
    p(index(o.sigma), index(o.omega)) = (3.0 - 2.0 * s * ab + 2.0 * w * gb - s * w * ab * gb) / 12.0;
  }
  return {Subensemble::Long, p};
}

double causal_correlation(const PhaseSettings& phases) {
  return std::cos(phases.alpha() + phases.beta()) * std::cos(phases.gamma() - phases.beta()) / 3.0;
}

SinglesPair causal_singles(Side side, const PhaseSettings& phases) {
  if (side == Side::One) {
    const double c = std::cos(phases.alpha() + phases.beta()) / 3.0;
    return {0.5 - c, 0.5 + c};
  }
  const double c = std::cos(phases.beta() - phases.gamma()) / 3.0;
  return {0.5 + c, 0.5 - c};
}

ProbabilityTable causal_joint_for(const ModelCase& model_case, const PhaseSettings& phases,
                                  Subensemble subensemble) {
  switch (model_case.kind()) {
    case CaseKind::AllBefore: return causal_joint_bbb(phases, subensemble);
    case CaseKind::CausalIndistinguishability: return causal_joint(phases, subensemble);
    case CaseKind::FastSplitterUnsupported: break;
  }
  throw UnspecifiedPrediction("unsupported case (b11, b21, a22): no causal probability rule");
}

ContradictionReport verify_nonbefore_contradiction(const PhaseSettings& phases) {
  const double qm = qm_singles(Side::One, Subensemble::Long, phases).plus;
  const double before = causal_singles_bbb(Side::One, phases).plus;
  const double discrepancy = std::abs(qm - before);
  return {discrepancy < kTolerance, discrepancy};
}

}  // namespace retrolab
