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

#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "retrolab/amplitude.hpp"

using namespace retrolab;

namespace {

const Outcome kPP{Sign::Plus, Sign::Plus};
const Outcome kPM{Sign::Plus, Sign::Minus};

PathPair path(const char* text) { return parse_path_pair(text); }

std::string label(PathPair p) {
  const std::string s = to_string(p);
  return s.substr(1, 4);
}

}  // namespace

TEST_CASE("tabulated pair amplitudes") {
  const PhaseSettings zero;
  const double k = 1.0 / (2.0 * std::sqrt(3.0));

  const Complex a = amp_pair(path("(l,Ll)"), kPP, zero);
  CHECK(a.real() == doctest::Approx(-0.2886751345948129).epsilon(1e-12));
  CHECK(a.imag() == doctest::Approx(0.0));

  const Complex b = amp_pair(path("(L,LL)"), kPM, zero);
  CHECK(b.real() == doctest::Approx(0.0));
  CHECK(b.imag() == doctest::Approx(-k).epsilon(1e-12));
}

TEST_CASE("pair amplitudes match the raw table entrywise") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    const PhaseSettings ph(angle(rng), angle(rng), angle(rng));
    for (Subensemble s : {Subensemble::Long, Subensemble::Short}) {
      for (PathPair p : paths_of(s)) {
        for (Outcome o : kOutcomes) {
          const Complex expected =
              oracle::pair_amplitude(label(p), to_string(o), ph.alpha(), ph.beta(), ph.gamma());
          CHECK(std::abs(amp_pair(p, o, ph) - expected) < kTolerance);
          CHECK(std::norm(amp_pair(p, o, ph)) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("pair amplitudes: norm per path and 2pi periodicity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int trial = 0; trial < 8; ++trial) {
    const PhaseSettings ph(angle(rng), angle(rng), angle(rng));
    const PhaseSettings shifted(ph.alpha() + kTwoPi, ph.beta() - kTwoPi, ph.gamma() + 2 * kTwoPi);
    for (Subensemble s : {Subensemble::Long, Subensemble::Short}) {
      for (PathPair p : paths_of(s)) {
        double norm = 0.0;
        for (Outcome o : kOutcomes) {
          norm += std::norm(amp_pair(p, o, ph));
          CHECK(std::abs(amp_pair(p, o, ph) - amp_pair(p, o, shifted)) < kTolerance);
          CHECK(std::abs(amp_pair(p, o, ph) - amp_pair(p, o, ph.canonical())) < kTolerance);
        }
        CHECK(std::abs(norm - 1.0 / 3.0) < kTolerance);
      }
    }
  }
}

TEST_CASE("singleton paths have no tabulated pair amplitude") {
  CHECK_THROWS_AS(amp_pair(path("(l,LL)"), kPP, {}), DomainError);
  CHECK_THROWS_WITH_AS(amp_pair(path("(L,ll)"), kPP, {}),
                       doctest::Contains("no tabulated pair amplitude"), DomainError);
}

TEST_CASE("segment amplitudes") {
  const Route Ll{Arm::Long, Arm::Short};
  const Route LL{Arm::Long, Arm::Long};
  const Route lL{Arm::Short, Arm::Long};
  const double k = 1.0 / std::sqrt(6.0);

  const Complex a = amp_segment(Ll, Sign::Plus, PhaseSettings(0.0, kPi / 2, 0.0));
  CHECK(std::abs(a - Complex(0.0, -k)) < kTolerance);
  const Complex b = amp_segment(LL, Sign::Minus, PhaseSettings{});
  CHECK(std::abs(b - Complex(0.0, k)) < kTolerance);

  const PhaseSettings ph(0.3, -1.2, 2.5);
  for (Sign w : {Sign::Plus, Sign::Minus}) {
    for (auto [route, name] : {std::pair{Ll, "Ll"}, {lL, "lL"}, {LL, "LL"}}) {
      CHECK(std::norm(amp_segment(route, w, ph)) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
      CHECK(std::abs(amp_segment(route, w, ph) -
                     oracle::segment_amplitude(name, symbol(w), ph.beta(), ph.gamma())) < kTolerance);
    }
  }
  CHECK_THROWS_WITH_AS(amp_segment({Arm::Short, Arm::Short}, Sign::Plus, ph),
                       doctest::Contains("not tabulated for subensemble L"), DomainError);
}

TEST_CASE("photon-1 amplitudes") {
  CHECK(std::abs(amp_photon1(Arm::Short, Sign::Plus, PhaseSettings(1.0, 2.0, 3.0)) -
                 Complex(1.0 / std::sqrt(2.0), 0.0)) < kTolerance);
  CHECK(std::abs(amp_photon1(Arm::Long, Sign::Plus, PhaseSettings(kPi, 0.0, 0.0)) -
                 Complex(-1.0 / std::sqrt(2.0), 0.0)) < kTolerance);
  for (double alpha : {0.0, 0.7, 2.0, -4.0}) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      CHECK(std::norm(amp_photon1(Arm::Long, s, PhaseSettings(alpha, 0.0, 0.0))) ==
            doctest::Approx(0.5).epsilon(1e-12));
    }
  }
}

TEST_CASE("subensemble partition") {
  CHECK(subensemble_of(path("(L,LL)")) == Subensemble::Long);
  CHECK(subensemble_of(path("(l,ll)")) == Subensemble::Short);
  CHECK(subensemble_of(path("(l,LL)")) == Subensemble::TwoLongMinusShort);
  CHECK(subensemble_of(path("(L,ll)")) == Subensemble::TwoShortMinusLong);

  std::map<Subensemble, int> sizes;
  for (PathPair p : kPathPairs) ++sizes[subensemble_of(p)];
  CHECK(sizes[Subensemble::TwoLongMinusShort] == 1);
  CHECK(sizes[Subensemble::Long] == 3);
  CHECK(sizes[Subensemble::Short] == 3);
  CHECK(sizes[Subensemble::TwoShortMinusLong] == 1);

  for (Subensemble s : {Subensemble::Long, Subensemble::Short}) {
    for (PathPair p : paths_of(s)) CHECK(subensemble_of(p) == s);
  }
  for (std::size_t i = 0; i < kPathPairs.size(); ++i) CHECK(index(kPathPairs[i]) == i);
}

TEST_CASE("outcome ordering and labels") {
  CHECK(to_string(kOutcomes[0]) == "++");
  CHECK(to_string(kOutcomes[1]) == "+-");
  CHECK(to_string(kOutcomes[2]) == "-+");
  CHECK(to_string(kOutcomes[3]) == "--");
  for (std::size_t i = 0; i < 4; ++i) CHECK(index(kOutcomes[i]) == i);
  CHECK(parse_path_pair("l,Ll") == path("(l,Ll)"));
  CHECK_THROWS_AS(parse_path_pair("(x,Ll)"), DomainError);
  CHECK_THROWS_AS(parse_subensemble("M"), DomainError);
}

TEST_CASE("phase settings") {
  CHECK_THROWS_AS(PhaseSettings(std::nan(""), 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(PhaseSettings(0.0, INFINITY, 0.0), DomainError);
  const PhaseSettings c = PhaseSettings(-0.5, 7.0, kTwoPi).canonical();
  CHECK(c.alpha() == doctest::Approx(kTwoPi - 0.5));
  CHECK(c.beta() == doctest::Approx(7.0 - kTwoPi));
  CHECK(c.gamma() >= 0.0);
  CHECK(c.gamma() < kTwoPi);
  CHECK(std::abs(PhaseSettings::from_degrees(45, 0, 0).alpha() - kPi / 4) < 1e-15);
}

TEST_CASE("detection delays relative to the L peak") {
  const ArmLengths arms{1.3, 1.0};
  CHECK(detection_delay(path("(L,LL)"), arms) == 0.0);
  CHECK(detection_delay(path("(l,Ll)"), arms) == doctest::Approx(0.0).scale(1e-9));
  CHECK(detection_delay(path("(l,ll)"), arms) ==
        doctest::Approx(-1.0006922855944562e-09).epsilon(1e-9));
  CHECK(detection_delay(path("(L,ll)"), arms) ==
        doctest::Approx(-2.0013845711889124e-09).epsilon(1e-9));
  CHECK(detection_delay(path("(l,LL)"), arms) ==
        doctest::Approx(1.0006922855944562e-09).epsilon(1e-9));
  for (PathPair p : paths_of(Subensemble::Short)) {
    CHECK(detection_delay(p, arms) == doctest::Approx(-0.3 / oracle::c_light).epsilon(1e-9));
  }
  CHECK_THROWS_WITH_AS(detection_delay(path("(L,LL)"), ArmLengths{1.0, 1.0}),
                       doctest::Contains("degenerate interferometer"), DomainError);
  CHECK_THROWS_AS(detection_delay(path("(L,LL)"), ArmLengths{1.0, 0.0}), DomainError);
}
