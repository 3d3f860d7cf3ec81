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
#include <string>

#include "retrolab/amplitude.hpp"
#include "retrolab/causal_model.hpp"

namespace retrolab {

/// Lab-frame layout of the setup on a single axis. Side 1 sits at negative
/// coordinates, side 2 at positive ones. Delay lines are pure time offsets.
struct Geometry {
  double long_arm = 1.3;           // m
  double short_arm = 1.0;          // m
  double source_to_bs11 = 5.0;     // m
  double source_to_bs21 = 5.0;     // m
  double bs21_to_bs22 = 1.0;       // m
  double bs11_to_detector = 0.5;   // m
  double bs22_to_detector = 0.5;   // m
  double delay_photon1 = 0.0;      // s
  double delay_photon2 = 0.0;      // s
  double x_bs11 = -5.0;            // m
  double x_bs21 = 5.0;             // m
  double x_bs22 = 6.0;             // m
  double v_bs11 = 0.0;             // m/s
  double v_bs21 = 0.0;             // m/s
  double v_bs22 = 0.0;             // m/s

  /// Throws DomainError naming the first violated constraint.
  void validate() const;

  ArmLengths arms() const { return {long_arm, short_arm}; }
  double velocity(BeamSplitter bs) const;
  double position(BeamSplitter bs) const;
  bool at_rest() const { return v_bs11 == 0.0 && v_bs21 == 0.0 && v_bs22 == 0.0; }

  /// Splitters at rest, photon 2 held back by a 4.3 km fiber: BS11 and D1
  /// fire well before BS21.
  static Geometry time_ordering_2();
  /// Mirror image: photon 1 held back, side 2 completes first.
  static Geometry time_ordering_1();
  /// BS11 receding to the left and BS21, BS22 to the right at c/2, so each
  /// splitter's own frame sees its impact before the other photon's.
  static Geometry all_before_moving();
};

/// Length of a 4.3 km fiber expressed as a pure delay.
inline constexpr double kLongFiberDelay = 4300.0 / kSpeedOfLight;

enum class Site { BS11, BS21, BS22, D1, D2 };

std::string to_string(Site s);

struct ImpactEvent {
  Site site = Site::BS11;
  double t = 0.0;  // lab time, s
  double x = 0.0;  // lab coordinate, m
};

/// Events in order BS11, BS21, BS22, D1, D2; emission at t = 0.
using ImpactEvents = std::array<ImpactEvent, 5>;

ImpactEvents impact_times(const Geometry& geometry, PathPair path);

const ImpactEvent& event_at(const ImpactEvents& events, Site site);

double detection_delay(PathPair path, const Geometry& geometry);

/// t2 - t1 of the subensemble-L detections; the origin of the delay spectrum.
double reference_offset(const Geometry& geometry);

double lorentz_factor(double v);

/// Event time in the frame moving with velocity v along the lab axis,
/// gamma (t - v x / c^2). Throws DomainError for |v| >= c.
double boost_time(const ImpactEvent& event, double v);

/// Frame-time differences below this are ties and count as non-before.
inline constexpr double kTimeTieTolerance = 1e-18;

/// BS11 is before iff T11 < T21 in BS11's frame; BS2k is before iff
/// T2k < T11 in BS2k's frame.
ImpactTriple classify_impacts(const Geometry& geometry, PathPair path);

/// Raw classification shared by all three subensemble-L paths. Throws
/// DomainError ("mixed ordering") if they disagree.
ImpactTriple classify_subensemble_L(const Geometry& geometry);

/// (b,b,b) selects the all-before rule, (b,b,a) is rejected as unsupported,
/// every other ordering resolves to (b11, a21, b22) under the causal
/// interference condition.
ModelCase select_model_case(const Geometry& geometry);

}  // namespace retrolab
