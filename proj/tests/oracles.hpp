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

// Test-only reference implementations. Deliberately written from the raw
// amplitude tables and textbook formulas, sharing nothing with the library
// code paths they check.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <string>

namespace oracle {

using C = std::complex<double>;

inline constexpr double c_light = 299792458.0;

inline C cis(double x) { return {std::cos(x), std::sin(x)}; }

/// Pair amplitudes keyed by "l,Ll" style label and "++" style outcome,
/// entry by entry from the tables.
inline C pair_amplitude(const std::string& path, const std::string& outcome, double al,
                        double be, double ga) {
  const double k = 1.0 / std::sqrt(3.0) * 0.5;
  const C i{0.0, 1.0};
  std::map<std::string, std::map<std::string, C>> t;
  t["l,Ll"] = {{"++", -k * cis(be)}, {"--", k * cis(be)}, {"+-", -i * k * cis(be)}, {"-+", -i * k * cis(be)}};
  t["l,lL"] = {{"++", -k * cis(ga)}, {"--", -k * cis(ga)}, {"+-", i * k * cis(ga)}, {"-+", -i * k * cis(ga)}};
  t["L,LL"] = {{"++", k * cis(al + be + ga)}, {"--", -k * cis(al + be + ga)},
               {"+-", -i * k * cis(al + be + ga)}, {"-+", -i * k * cis(al + be + ga)}};
  t["l,ll"] = {{"++", C{k, 0}}, {"--", C{-k, 0}}, {"+-", i * k}, {"-+", i * k}};
  t["L,lL"] = {{"++", k * cis(al + ga)}, {"--", -k * cis(al + ga)}, {"+-", -k * i * cis(al + ga)},
               {"-+", -k * i * cis(al + ga)}};
  t["L,Ll"] = {{"++", k * cis(al + be)}, {"--", k * cis(al + be)}, {"+-", k * i * cis(al + be)},
               {"-+", -k * i * cis(al + be)}};
  return t.at(path).at(outcome);
}

inline const std::array<std::string, 4> outcomes{"++", "+-", "-+", "--"};

/// |sum of amplitudes|^2 for the three paths of subensemble "L" or "l".
inline std::array<double, 4> superposition_table(const std::string& sub, double al, double be,
                                                 double ga) {
  const std::array<std::string, 3> paths =
      sub == "L" ? std::array<std::string, 3>{"L,LL", "l,Ll", "l,lL"}
                 : std::array<std::string, 3>{"l,ll", "L,Ll", "L,lL"};
  std::array<double, 4> p{};
  for (int o = 0; o < 4; ++o) {
    C sum = 0.0;
    for (const auto& path : paths) sum += pair_amplitude(path, outcomes[o], al, be, ga);
    p[o] = std::norm(sum);
  }
  return p;
}

/// Photon-2 segment amplitudes.
inline C segment_amplitude(const std::string& seg, char omega, double be, double ga) {
  const double k = 1.0 / std::sqrt(3.0) / std::sqrt(2.0);
  const C i{0.0, 1.0};
  if (seg == "Ll") return omega == '+' ? -k * cis(be) : -i * k * cis(be);
  if (seg == "lL") return omega == '+' ? -k * cis(ga) : i * k * cis(ga);
  return omega == '+' ? -k * cis(be + ga) : i * k * cis(be + ga);  // LL
}

/// Product-of-moduli rule for the all-before case with |A(L)|^2 = |A(l)|^2 = 1/2.
inline std::array<double, 4> all_before_table(double be, double ga) {
  std::array<double, 4> p{};
  for (int o = 0; o < 4; ++o) {
    const char w = outcomes[o][1];
    p[o] = 0.5 * std::norm(segment_amplitude("LL", w, be, ga)) +
           0.5 * std::norm(segment_amplitude("Ll", w, be, ga) + segment_amplitude("lL", w, be, ga));
  }
  return p;
}

/// Equal-weight sum of the three per-path causal contributions.
inline std::array<double, 4> causal_path_sum(double al, double be, double ga) {
  std::array<double, 4> p{};
  for (int o = 0; o < 4; ++o) {
    const double s = outcomes[o][0] == '+' ? 1.0 : -1.0;
    const double w = outcomes[o][1] == '+' ? 1.0 : -1.0;
    const double x = 1.0 - s * std::cos(al + be);
    const double y = 1.0 + w * std::cos(ga - be);
    p[o] = (0.25 * x + 0.25 * x * y + 0.25 * y) / 3.0;
  }
  return p;
}

inline double correlation(const std::array<double, 4>& p) { return -p[0] + p[1] + p[2] - p[3]; }

inline double boosted_time(double t, double x, double v) {
  return (t - v * x / (c_light * c_light)) / std::sqrt(1.0 - (v / c_light) * (v / c_light));
}

}  // namespace oracle
