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
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace retrolab {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact
inline constexpr double kTolerance = 1e-12;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

using Complex = std::complex<double>;

/// Raised when an input lies outside the domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double degrees_to_radians(double degrees);

/// The three adjustable interferometer phases (radians): alpha on the BS11
/// arm, beta on the BS21 arm, gamma on the BS22 arm.
class PhaseSettings {
 public:
  PhaseSettings() = default;
  PhaseSettings(double alpha, double beta, double gamma);

  static PhaseSettings from_degrees(double alpha, double beta, double gamma);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }

  /// Each phase reduced into [0, 2pi).
  PhaseSettings canonical() const;

 private:
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double gamma_ = 0.0;
};

enum class Sign : int { Plus = 1, Minus = -1 };

constexpr int value(Sign s) { return static_cast<int>(s); }
constexpr std::size_t index(Sign s) { return s == Sign::Plus ? 0 : 1; }
constexpr char symbol(Sign s) { return s == Sign::Plus ? '+' : '-'; }

/// Detector pair D1(sigma), D2(omega).
struct Outcome {
  Sign sigma = Sign::Plus;
  Sign omega = Sign::Plus;

  friend constexpr bool operator==(Outcome, Outcome) = default;
};

inline constexpr std::array<Outcome, 4> kOutcomes{{
    {Sign::Plus, Sign::Plus},
    {Sign::Plus, Sign::Minus},
    {Sign::Minus, Sign::Plus},
    {Sign::Minus, Sign::Minus},
}};

/// Position in kOutcomes: ++ -> 0, +- -> 1, -+ -> 2, -- -> 3.
constexpr std::size_t index(Outcome o) { return 2 * index(o.sigma) + index(o.omega); }

/// Product sigma*omega as +1/-1.
constexpr int parity(Outcome o) { return value(o.sigma) * value(o.omega); }

std::string to_string(Outcome o);

enum class Arm { Short, Long };

constexpr char symbol(Arm a) { return a == Arm::Short ? 'l' : 'L'; }

/// Arms taken by photon 2 through its two interferometers, in order.
struct Route {
  Arm first = Arm::Short;
  Arm second = Arm::Short;

  friend constexpr bool operator==(Route, Route) = default;
};

struct PathPair {
  Arm photon1 = Arm::Short;
  Route photon2;

  friend constexpr bool operator==(PathPair, PathPair) = default;
};

inline constexpr std::array<PathPair, 8> kPathPairs{{
    {Arm::Short, {Arm::Short, Arm::Short}},
    {Arm::Short, {Arm::Short, Arm::Long}},
    {Arm::Short, {Arm::Long, Arm::Short}},
    {Arm::Short, {Arm::Long, Arm::Long}},
    {Arm::Long, {Arm::Short, Arm::Short}},
    {Arm::Long, {Arm::Short, Arm::Long}},
    {Arm::Long, {Arm::Long, Arm::Short}},
    {Arm::Long, {Arm::Long, Arm::Long}},
}};

/// Position in kPathPairs.
constexpr std::size_t index(PathPair p) {
  auto bit = [](Arm a) { return a == Arm::Long ? std::size_t{1} : std::size_t{0}; };
  return 4 * bit(p.photon1) + 2 * bit(p.photon2.first) + bit(p.photon2.second);
}

/// "(l,Ll)" style label.
std::string to_string(PathPair p);
/// Accepts "(l,Ll)" or "l,Ll".
PathPair parse_path_pair(std::string_view text);

/// Groups of path pairs sharing one detection time difference, named by the
/// photon-2 minus photon-1 path length.
enum class Subensemble { TwoLongMinusShort, Long, Short, TwoShortMinusLong };

inline constexpr std::array<Subensemble, 4> kSubensembles{
    Subensemble::TwoLongMinusShort, Subensemble::Long, Subensemble::Short,
    Subensemble::TwoShortMinusLong};

/// "2L-l", "L", "l", "2l-L".
std::string to_string(Subensemble s);
Subensemble parse_subensemble(std::string_view text);

Subensemble subensemble_of(PathPair p);

/// The three mutually indistinguishable path pairs of subensemble L or l.
std::array<PathPair, 3> paths_of(Subensemble s);

/// Pair amplitude A_{sigma omega}(path) for the six interfering path pairs,
/// normalised within their three-path subensemble. Modulus 1/(2 sqrt 3).
Complex amp_pair(PathPair path, Outcome outcome, const PhaseSettings& phases);

/// Photon-2 amplitude A_omega(segment) for the routes Ll, lL and LL.
/// Modulus 1/sqrt 6.
Complex amp_segment(Route segment, Sign omega, const PhaseSettings& phases);

/// Photon-1 amplitude A_sigma(arm). Modulus 1/sqrt 2; the long arm carries
/// e^{i alpha}, independent of sigma.
Complex amp_photon1(Arm arm, Sign sigma, const PhaseSettings& phases);

/// Interferometer arm lengths; the only geometry the detection delay needs.
struct ArmLengths {
  double long_arm = 0.0;   // m
  double short_arm = 0.0;  // m
};

/// Photon-2 minus photon-1 detection time of a path pair, relative to the
/// subensemble-L peak. Throws DomainError unless long_arm > short_arm > 0.
double detection_delay(PathPair path, const ArmLengths& arms);

}  // namespace retrolab
