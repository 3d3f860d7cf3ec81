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

#include <Eigen/Core>

#include "retrolab/amplitude.hpp"

namespace retrolab {

using JointMatrix = Eigen::Matrix2d;

/// Probabilities of the two outcomes at one detector side, (+, -).
struct SinglesPair {
  double plus = 0.0;
  double minus = 0.0;

  double operator[](Sign s) const { return s == Sign::Plus ? plus : minus; }
};

enum class Side { One = 1, Two = 2 };

/// Sign pattern -sigma*omega laid out like a JointMatrix.
inline JointMatrix correlation_weights() {
  JointMatrix w;
  w << -1.0, 1.0, 1.0, -1.0;
  return w;
}

/// Joint outcome probabilities for one subensemble. Rows index sigma (+, -)
/// and columns index omega (+, -).
class ProbabilityTable {
 public:
  ProbabilityTable(Subensemble subensemble, const JointMatrix& p)
      : subensemble_(subensemble), p_(p) {}

  Subensemble subensemble() const { return subensemble_; }
  const JointMatrix& matrix() const { return p_; }

  double operator()(Outcome o) const { return p_(index(o.sigma), index(o.omega)); }
  double operator()(Sign sigma, Sign omega) const { return p_(index(sigma), index(omega)); }

  double sum() const { return p_.sum(); }

  /// Marginal at one side: side 1 sums over omega, side 2 over sigma.
  SinglesPair singles(Side side) const {
    if (side == Side::One) {
      const Eigen::Vector2d rows = p_.rowwise().sum();
      return {rows(0), rows(1)};
    }
    const Eigen::RowVector2d cols = p_.colwise().sum();
    return {cols(0), cols(1)};
  }

  /// Sum of -sigma*omega p_{sigma omega}.
  double correlation() const { return p_.cwiseProduct(correlation_weights()).sum(); }

  /// Entries in kOutcomes order.
  std::array<double, 4> entries() const {
    return {p_(0, 0), p_(0, 1), p_(1, 0), p_(1, 1)};
  }

 private:
  Subensemble subensemble_;
  JointMatrix p_;
};

/// Largest entrywise absolute difference.
inline double max_abs_difference(const ProbabilityTable& a, const ProbabilityTable& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace retrolab
