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

#include "retrolab/kinematics.hpp"

#include <cmath>

namespace retrolab {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError("invalid geometry: " + what);
}

}  // namespace

void Geometry::validate() const {
  require(short_arm > 0.0 && long_arm > short_arm,
          "degenerate interferometer, need long_arm > short_arm > 0");
  for (auto [name, length] : {std::pair{"source_to_bs11", source_to_bs11},
                              {"source_to_bs21", source_to_bs21},
                              {"bs21_to_bs22", bs21_to_bs22},
                              {"bs11_to_detector", bs11_to_detector},
                              {"bs22_to_detector", bs22_to_detector}}) {
    require(std::isfinite(length) && length >= 0.0, std::string(name) + " must be >= 0");
  }
  require(std::isfinite(delay_photon1) && delay_photon1 >= 0.0, "delay_photon1 must be >= 0");
  require(std::isfinite(delay_photon2) && delay_photon2 >= 0.0, "delay_photon2 must be >= 0");
  require(std::isfinite(x_bs11) && std::isfinite(x_bs21) && std::isfinite(x_bs22),
          "splitter positions must be finite");
  for (auto [name, v] : {std::pair{"v_bs11", v_bs11}, {"v_bs21", v_bs21}, {"v_bs22", v_bs22}}) {
    require(std::isfinite(v) && std::abs(v) < kSpeedOfLight, std::string(name) + " must satisfy |v| < c");
  }
}

double Geometry::velocity(BeamSplitter bs) const {
  switch (bs) {
    case BeamSplitter::BS11: return v_bs11;
    case BeamSplitter::BS21: return v_bs21;
    case BeamSplitter::BS22: return v_bs22;
  }
  return 0.0;
}

double Geometry::position(BeamSplitter bs) const {
  switch (bs) {
    case BeamSplitter::BS11: return x_bs11;
    case BeamSplitter::BS21: return x_bs21;
    case BeamSplitter::BS22: return x_bs22;
  }
  return 0.0;
}

Geometry Geometry::time_ordering_2() {
  Geometry g;
  g.delay_photon2 = kLongFiberDelay;
  return g;
}

Geometry Geometry::time_ordering_1() {
  Geometry g;
  g.delay_photon1 = kLongFiberDelay;
  return g;
}

Geometry Geometry::all_before_moving() {
  Geometry g;
  g.v_bs11 = -0.5 * kSpeedOfLight;
  g.v_bs21 = 0.5 * kSpeedOfLight;
  g.v_bs22 = 0.5 * kSpeedOfLight;
  return g;
}

std::string to_string(Site s) {
  switch (s) {
    case Site::BS11: return "BS11";
    case Site::BS21: return "BS21";
    case Site::BS22: return "BS22";
    case Site::D1: return "D1";
    case Site::D2: return "D2";
  }
  return "?";
}

ImpactEvents impact_times(const Geometry& geometry, PathPair path) {
  geometry.validate();
  const double c = kSpeedOfLight;
  auto length = [&](Arm a) { return a == Arm::Long ? geometry.long_arm : geometry.short_arm; };

  const double t11 = geometry.source_to_bs11 / c + geometry.delay_photon1;
  const double t_d1 = t11 + (length(path.photon1) + geometry.bs11_to_detector) / c;
  const double t21 = geometry.source_to_bs21 / c + geometry.delay_photon2;
  const double t22 = t21 + (length(path.photon2.first) + geometry.bs21_to_bs22) / c;
  const double t_d2 = t22 + (length(path.photon2.second) + geometry.bs22_to_detector) / c;

  return {{
      {Site::BS11, t11, geometry.x_bs11},
      {Site::BS21, t21, geometry.x_bs21},
      {Site::BS22, t22, geometry.x_bs22},
      {Site::D1, t_d1, geometry.x_bs11 - geometry.bs11_to_detector},
      {Site::D2, t_d2, geometry.x_bs22 + geometry.bs22_to_detector},
  }};
}

const ImpactEvent& event_at(const ImpactEvents& events, Site site) {
  return events[static_cast<std::size_t>(site)];
}

double detection_delay(PathPair path, const Geometry& geometry) {
  return detection_delay(path, geometry.arms());
}

double reference_offset(const Geometry& geometry) {
  const auto events = impact_times(geometry, {Arm::Long, {Arm::Long, Arm::Long}});
  return event_at(events, Site::D2).t - event_at(events, Site::D1).t;
}

double lorentz_factor(double v) {
  if (!(std::abs(v) < kSpeedOfLight)) {
    throw DomainError("non-physical frame velocity: |v| must be below c");
  }
  const double beta = v / kSpeedOfLight;
  return 1.0 / std::sqrt(1.0 - beta * beta);
}

double boost_time(const ImpactEvent& event, double v) {
  return lorentz_factor(v) * (event.t - v * event.x / (kSpeedOfLight * kSpeedOfLight));
}

ImpactTriple classify_impacts(const Geometry& geometry, PathPair path) {
  const auto events = impact_times(geometry, path);
  const ImpactEvent& e11 = event_at(events, Site::BS11);

  auto before = [](double own, double other) {
    return other - own > kTimeTieTolerance ? ImpactLabel::Before : ImpactLabel::NonBefore;
  };

  const double v11 = geometry.v_bs11;
  const ImpactLabel bs11 =
      before(boost_time(e11, v11), boost_time(event_at(events, Site::BS21), v11));

  auto side2 = [&](Site site, double v) {
    return before(boost_time(event_at(events, site), v), boost_time(e11, v));
  };
  return make_triple(bs11, side2(Site::BS21, geometry.v_bs21), side2(Site::BS22, geometry.v_bs22));
}

ImpactTriple classify_subensemble_L(const Geometry& geometry) {
  const auto paths = paths_of(Subensemble::Long);
  const ImpactTriple first = classify_impacts(geometry, paths[0]);
  for (std::size_t i = 1; i < paths.size(); ++i) {
    const ImpactTriple other = classify_impacts(geometry, paths[i]);
    if (other != first) {
      throw DomainError("mixed ordering: paths " + to_string(paths[0]) + " and " +
                        to_string(paths[i]) + " classify differently");
    }
  }
  return first;
}

ModelCase select_model_case(const Geometry& geometry) {
  const ModelCase raw{classify_subensemble_L(geometry)};
  switch (raw.kind()) {
    case CaseKind::AllBefore:
      return raw;
    case CaseKind::FastSplitterUnsupported:
      throw UnspecifiedPrediction("unsupported case (b11, b21, a22): no causal probability rule");
    case CaseKind::CausalIndistinguishability:
      break;
  }
  return {make_triple(ImpactLabel::Before, ImpactLabel::NonBefore, ImpactLabel::Before)};
}

}  // namespace retrolab
