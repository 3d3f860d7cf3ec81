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

#include "retrolab/amplitude.hpp"

#include <cmath>

namespace retrolab {

namespace {

const Complex kI{0.0, 1.0};
const double kPairModulus = 0.5 / std::sqrt(3.0);
const double kSegmentModulus = 1.0 / std::sqrt(6.0);
const double kPhoton1Modulus = 1.0 / std::sqrt(2.0);

Complex phase_factor(double angle) { return std::polar(1.0, angle); }

double reduce_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a value just below -2pi*k can land exactly on 2pi after the shift
  return r >= kTwoPi ? 0.0 : r;
}

// Unit-modulus coefficients in kOutcomes order (++, +-, -+, --) multiplying
// the path's common phase factor.
struct PairRow {
  std::array<Complex, 4> coefficient;
};

PairRow pair_row(PathPair path) {
  const Complex one{1.0, 0.0};
  switch (index(path)) {
    case index(PathPair{Arm::Short, {Arm::Long, Arm::Short}}):  // (l,Ll)
      return {{-one, -kI, -kI, one}};
    case index(PathPair{Arm::Short, {Arm::Short, Arm::Long}}):  // (l,lL)
      return {{-one, kI, -kI, -one}};
    case index(PathPair{Arm::Long, {Arm::Long, Arm::Long}}):  // (L,LL)
      return {{one, -kI, -kI, -one}};
    case index(PathPair{Arm::Short, {Arm::Short, Arm::Short}}):  // (l,ll)
      return {{one, kI, kI, -one}};
    case index(PathPair{Arm::Long, {Arm::Short, Arm::Long}}):  // (L,lL)
      return {{one, -kI, -kI, -one}};
    case index(PathPair{Arm::Long, {Arm::Long, Arm::Short}}):  // (L,Ll)
      return {{one, kI, -kI, one}};
    default:
      throw DomainError("no tabulated pair amplitude for path " + to_string(path) +
                        " (subensemble " + to_string(subensemble_of(path)) + ")");
  }
}

double pair_phase(PathPair path, const PhaseSettings& ph) {
  switch (index(path)) {
    case index(PathPair{Arm::Short, {Arm::Long, Arm::Short}}):
      return ph.beta();
    case index(PathPair{Arm::Short, {Arm::Short, Arm::Long}}):
      return ph.gamma();
    case index(PathPair{Arm::Long, {Arm::Long, Arm::Long}}):
      return ph.alpha() + ph.beta() + ph.gamma();
    case index(PathPair{Arm::Long, {Arm::Short, Arm::Long}}):
      return ph.alpha() + ph.gamma();
    case index(PathPair{Arm::Long, {Arm::Long, Arm::Short}}):
      return ph.alpha() + ph.beta();
    default:
      return 0.0;
  }
}

}  // namespace

double degrees_to_radians(double degrees) { return degrees * (kPi / 180.0); }

PhaseSettings::PhaseSettings(double alpha, double beta, double gamma)
    : alpha_(alpha), beta_(beta), gamma_(gamma) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma)) {
    throw DomainError("phase settings must be finite");
  }
}

PhaseSettings PhaseSettings::from_degrees(double alpha, double beta, double gamma) {
  return {degrees_to_radians(alpha), degrees_to_radians(beta), degrees_to_radians(gamma)};
}

PhaseSettings PhaseSettings::canonical() const {
  return {reduce_angle(alpha_), reduce_angle(beta_), reduce_angle(gamma_)};
}

std::string to_string(Outcome o) { return {symbol(o.sigma), symbol(o.omega)}; }

std::string to_string(PathPair p) {
  return {'(', symbol(p.photon1), ',', symbol(p.photon2.first), symbol(p.photon2.second), ')'};
}

PathPair parse_path_pair(std::string_view text) {
  if (text.size() == 6 && text.front() == '(' && text.back() == ')') {
    text = text.substr(1, 4);
  }
  auto arm = [&](char c) {
    if (c == 'l') return Arm::Short;
    if (c == 'L') return Arm::Long;
    throw DomainError("invalid path pair '" + std::string(text) + "'");
  };
  if (text.size() != 4 || text[1] != ',') {
    throw DomainError("invalid path pair '" + std::string(text) + "'");
  }
  return {arm(text[0]), {arm(text[2]), arm(text[3])}};
}

std::string to_string(Subensemble s) {
  switch (s) {
    case Subensemble::TwoLongMinusShort: return "2L-l";
    case Subensemble::Long: return "L";
    case Subensemble::Short: return "l";
    case Subensemble::TwoShortMinusLong: return "2l-L";
  }
  return "?";
}

Subensemble parse_subensemble(std::string_view text) {
  for (Subensemble s : kSubensembles) {
    if (text == to_string(s)) return s;
  }
  throw DomainError("unknown subensemble '" + std::string(text) + "'");
}

Subensemble subensemble_of(PathPair p) {
  // photon-2 length minus photon-1 length, counted in units of (L - l)
  auto longs = [](Arm a) { return a == Arm::Long ? 1 : 0; };
  const int excess = longs(p.photon2.first) + longs(p.photon2.second) - longs(p.photon1);
  switch (excess) {
    case 2: return Subensemble::TwoLongMinusShort;
    case 1: return Subensemble::Long;
    case 0: return Subensemble::Short;
    default: return Subensemble::TwoShortMinusLong;
  }
}

std::array<PathPair, 3> paths_of(Subensemble s) {
  switch (s) {
    case Subensemble::Long:
      return {{{Arm::Long, {Arm::Long, Arm::Long}},
               {Arm::Short, {Arm::Long, Arm::Short}},
               {Arm::Short, {Arm::Short, Arm::Long}}}};
    case Subensemble::Short:
      return {{{Arm::Short, {Arm::Short, Arm::Short}},
               {Arm::Long, {Arm::Long, Arm::Short}},
               {Arm::Long, {Arm::Short, Arm::Long}}}};
    default:
      throw DomainError("subensemble " + to_string(s) + " has a single path pair");
  }
}

Complex amp_pair(PathPair path, Outcome outcome, const PhaseSettings& phases) {
  const PairRow row = pair_row(path);
  return kPairModulus * row.coefficient[index(outcome)] * phase_factor(pair_phase(path, phases));
}

Complex amp_segment(Route segment, Sign omega, const PhaseSettings& phases) {
  const bool plus = omega == Sign::Plus;
  if (segment == Route{Arm::Long, Arm::Short}) {
    return kSegmentModulus * (plus ? -1.0 : -kI) * phase_factor(phases.beta());
  }
  if (segment == Route{Arm::Short, Arm::Long}) {
    return kSegmentModulus * (plus ? -1.0 : kI) * phase_factor(phases.gamma());
  }
  if (segment == Route{Arm::Long, Arm::Long}) {
    return kSegmentModulus * (plus ? -1.0 : kI) * phase_factor(phases.beta() + phases.gamma());
  }
  throw DomainError("segment ll is not tabulated for subensemble L");
}

Complex amp_photon1(Arm arm, Sign /*sigma*/, const PhaseSettings& phases) {
  return arm == Arm::Long ? kPhoton1Modulus * phase_factor(phases.alpha())
                          : Complex{kPhoton1Modulus, 0.0};
}

double detection_delay(PathPair path, const ArmLengths& arms) {
  if (!(arms.short_arm > 0.0) || !(arms.long_arm > arms.short_arm)) {
    throw DomainError("degenerate interferometer: require long arm > short arm > 0");
  }
  auto length = [&](Arm a) { return a == Arm::Long ? arms.long_arm : arms.short_arm; };
  const double excess =
      length(path.photon2.first) + length(path.photon2.second) - length(path.photon1);
  return (excess - arms.long_arm) / kSpeedOfLight;
}

}  // namespace retrolab
