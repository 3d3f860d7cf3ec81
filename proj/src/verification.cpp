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

#include "retrolab/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "retrolab/kinematics.hpp"
#include "retrolab/qm_model.hpp"

namespace retrolab {

namespace {

class Property {
 public:
  explicit Property(std::string name, double tolerance = kTolerance)
      : result_{std::move(name), 0.0, tolerance, false} {}

  void observe(double deviation) {
    // NaN must fail, so compare negated
    if (!(deviation <= result_.max_deviation)) result_.max_deviation = deviation;
  }
  void observe(const JointMatrix& a, const JointMatrix& b) {
    observe((a - b).cwiseAbs().maxCoeff());
  }
  void observe(const SinglesPair& a, const SinglesPair& b) {
    observe(std::max(std::abs(a.plus - b.plus), std::abs(a.minus - b.minus)));
  }

  PropertyResult finish() const {
    PropertyResult r = result_;
    r.passed = r.max_deviation <= r.tolerance;
    return r;
  }

 private:
  PropertyResult result_;
};

// Swap rows (sigma) or columns (omega) of a joint matrix.
JointMatrix swap_sigma(const JointMatrix& m) { return m.colwise().reverse(); }
JointMatrix swap_omega(const JointMatrix& m) { return m.rowwise().reverse(); }

}  // namespace

std::vector<PhaseSettings> phase_grid(std::uint64_t seed, std::size_t random_points) {
  std::mt19937_64 engine(seed);
  auto uniform_angle = [&] { return static_cast<double>(engine() >> 11) * 0x1.0p-53 * kTwoPi; };
  std::vector<PhaseSettings> grid;
  grid.reserve(random_points + 8);
  for (std::size_t i = 0; i < random_points; ++i) {
    const double a = uniform_angle();
    const double b = uniform_angle();
    const double g = uniform_angle();
    grid.emplace_back(a, b, g);
  }
  for (int corner = 0; corner < 8; ++corner) {
    auto pick = [&](int bit) { return (corner >> bit & 1) ? kPi / 2 : 0.0; };
    grid.emplace_back(pick(2), pick(1), pick(0));
  }
  return grid;
}

VerificationSummary run_verification(std::uint64_t grid_seed, PairAmplitudeFn pair_amplitude) {
  const auto grid = phase_grid(grid_seed);
  const double pair_modulus = 0.5 / std::sqrt(3.0);

  Property modulus("amplitude_pair_modulus");
  Property path_norm("amplitude_pair_norm_per_path");
  Property oracle("qm_closed_form_vs_amplitude_sum");
  Property library_route("qm_joint_vs_closed_form");
  Property normalization("table_normalization");
  Property qm_marginals("qm_singles_vs_marginals");
  Property qm_corr("qm_correlation_identity");
  Property qm_symmetry("qm_sign_symmetry");
  Property no_signal("qm_no_signaling");
  Property causal_routes("causal_closed_form_vs_path_sum");
  Property bbb_routes("bbb_closed_form_vs_amplitudes");
  Property bbb_side1("bbb_side1_singles_uniform");
  Property singles_agree("causal_singles_match_qm");
  Property causal_corr("causal_correlation_identity");
  Property causal_symmetry("causal_sign_symmetry");
  Property range("probabilities_in_unit_interval");
  Property contradiction("nonbefore_contradiction_discrepancy");

  for (const PhaseSettings& ph : grid) {
    for (Subensemble s : {Subensemble::Long, Subensemble::Short}) {
      for (PathPair path : paths_of(s)) {
        double norm = 0.0;
        for (Outcome o : kOutcomes) {
          const Complex a = pair_amplitude(path, o, ph);
          modulus.observe(std::abs(std::abs(a) - pair_modulus));
          norm += std::norm(a);
        }
        path_norm.observe(std::abs(norm - 1.0 / 3.0));
      }
    }

    JointMatrix summed;
    for (Outcome o : kOutcomes) {
      Complex total{};
      for (PathPair path : paths_of(Subensemble::Long)) total += pair_amplitude(path, o, ph);
      summed(index(o.sigma), index(o.omega)) = std::norm(total);
    }
    const ProbabilityTable closed = qm_joint_closed_L(ph);
    oracle.observe(closed.matrix(), summed);
    library_route.observe(closed.matrix(), qm_joint(Subensemble::Long, ph).matrix());

    const ProbabilityTable qm_short = qm_joint(Subensemble::Short, ph);
    const ProbabilityTable causal = causal_joint(ph);
    const ProbabilityTable bbb = causal_joint_bbb(ph);
    for (const auto* table : {&closed, &qm_short, &causal, &bbb}) {
      normalization.observe(std::abs(table->sum() - 1.0));
      range.observe(std::max(0.0, -table->matrix().minCoeff()));
      range.observe(std::max(0.0, table->matrix().maxCoeff() - 1.0));
    }

    for (Side side : {Side::One, Side::Two}) {
      qm_marginals.observe(qm_singles(side, Subensemble::Long, ph), closed.singles(side));
      qm_marginals.observe(qm_singles(side, Subensemble::Short, ph), qm_short.singles(side));
      singles_agree.observe(causal_singles(side, ph), qm_singles(side, Subensemble::Long, ph));
      singles_agree.observe(causal_singles(side, ph), causal.singles(side));
    }
    qm_corr.observe(std::abs(qm_correlation(ph) - closed.correlation()));

    const PhaseSettings alpha_shift(ph.alpha() + kPi, ph.beta(), ph.gamma());
    const PhaseSettings gamma_shift(ph.alpha(), ph.beta(), ph.gamma() + kPi);
    qm_symmetry.observe(qm_joint_closed_L(alpha_shift).matrix(), swap_sigma(closed.matrix()));
    qm_symmetry.observe(qm_joint_closed_L(gamma_shift).matrix(), swap_omega(closed.matrix()));
    causal_symmetry.observe(causal_joint(alpha_shift).matrix(), swap_sigma(causal.matrix()));
    causal_symmetry.observe(causal_joint(gamma_shift).matrix(), swap_omega(causal.matrix()));

    no_signal.observe(std::abs(qm_no_signaling_marginal(ph) - 0.5));

    causal_routes.observe(causal.matrix(), causal_joint_closed(ph).matrix());
    bbb_routes.observe(bbb.matrix(), causal_joint_bbb_closed(ph).matrix());
    bbb_side1.observe(causal_singles_bbb(Side::One, ph), SinglesPair{0.5, 0.5});
    causal_corr.observe(std::abs(causal_correlation(ph) - causal.correlation()));

    const double expected = std::abs(std::cos(ph.alpha() + ph.beta())) / 3.0;
    contradiction.observe(std::abs(verify_nonbefore_contradiction(ph).discrepancy - expected));
  }

  Property rules("cic_rules_reproduced", 0.0);
  const auto rule_set = cic_rules();
  const bool rules_ok = rule_set.size() == 3 && rule_set[0].interferes && rule_set[1].interferes &&
                        !rule_set[2].interferes;
  rules.observe(rules_ok ? 0.0 : 1.0);

  Property ordering("at_rest_orderings_select_cic_case", 0.0);
  for (const Geometry& g : {Geometry::time_ordering_1(), Geometry::time_ordering_2()}) {
    ordering.observe(select_model_case(g).kind() == CaseKind::CausalIndistinguishability ? 0.0
                                                                                          : 1.0);
  }

  VerificationSummary summary;
  for (const auto& p : {modulus, path_norm, oracle, library_route, normalization, qm_marginals,
                        qm_corr, qm_symmetry, no_signal, causal_routes, bbb_routes, bbb_side1,
                        singles_agree, causal_corr, causal_symmetry, range, contradiction, rules,
                        ordering}) {
    summary.properties.push_back(p.finish());
  }
  summary.contradiction_at_zero = verify_nonbefore_contradiction(PhaseSettings{});
  summary.passed = std::all_of(summary.properties.begin(), summary.properties.end(),
                               [](const PropertyResult& r) { return r.passed; });
  return summary;
}

}  // namespace retrolab
