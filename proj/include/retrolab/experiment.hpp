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
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "retrolab/amplitude.hpp"
#include "retrolab/causal_model.hpp"
#include "retrolab/kinematics.hpp"
#include "retrolab/probability.hpp"

namespace retrolab {

enum class Model { QM, Causal };
/// How the causal model treats path pairs outside subensemble L.
enum class NonLPolicy { QM, Uniform };

std::string to_string(Model m);
std::string to_string(NonLPolicy p);
Model parse_model(std::string_view text);
NonLPolicy parse_non_L_policy(std::string_view text);

struct CoincidenceWindow {
  double center = 0.0;         // s, relative to the subensemble-L peak
  double half_width = 0.25e-9; // s

  bool contains(double delay) const { return std::abs(delay - center) <= half_width; }
};

inline constexpr double kDefaultJitter = 0.1e-9;
inline constexpr double kDefaultBinWidth = 0.05e-9;
inline constexpr double kPairCoherenceLength = 10e-6;  // m
inline constexpr double kPumpCoherenceLength = 30.0;   // m

struct ExperimentConfig {
  Geometry geometry = Geometry::time_ordering_2();
  PhaseSettings phases;
  Model model = Model::QM;
  std::uint64_t n_events = 100000;
  std::uint64_t seed = 1;
  double jitter_sigma = kDefaultJitter;
  CoincidenceWindow window;
  std::optional<NonLPolicy> non_L_policy = NonLPolicy::QM;
  /// Threads used for generation; 0 means hardware concurrency. Does not
  /// affect results.
  unsigned workers = 0;

  /// Throws DomainError naming the offending field.
  void validate() const;
};

/// Non-fatal notices: arm imbalance outside the band
/// pair coherence << L - l << pump coherence (factor 10 either side).
std::vector<std::string> coherence_warnings(const Geometry& geometry,
                                            double pair_coherence = kPairCoherenceLength,
                                            double pump_coherence = kPumpCoherenceLength);

struct DetectionRecord {
  std::uint64_t index = 0;
  Outcome outcome;
  double t1 = 0.0;  // s
  double t2 = 0.0;  // s
  PathPair true_path;

  friend bool operator==(const DetectionRecord&, const DetectionRecord&) = default;
};

/// Precomputed conditional tables and detector times for one config. Drawing
/// event i depends only on (seed, i).
class EventSampler {
 public:
  explicit EventSampler(const ExperimentConfig& config);

  DetectionRecord operator()(std::uint64_t index) const;

  const ProbabilityTable& table_for(Subensemble s) const;
  double reference_offset() const { return reference_offset_; }
  const std::optional<ModelCase>& model_case() const { return model_case_; }

 private:
  ExperimentConfig config_;
  std::vector<ProbabilityTable> tables_;  // by kSubensembles order
  std::array<std::array<double, 2>, 8> detector_times_{};  // (t1, t2) by path index
  double reference_offset_ = 0.0;
  std::optional<ModelCase> model_case_;
};

DetectionRecord sample_event(const ExperimentConfig& config, std::uint64_t index);

/// Exactly n_events records in index order; identical for any worker count.
std::vector<DetectionRecord> run_experiment(const ExperimentConfig& config);

/// t2 - t1 relative to the subensemble-L peak.
inline double record_delay(const DetectionRecord& r, double reference_offset) {
  return r.t2 - r.t1 - reference_offset;
}

struct SpectrumPeak {
  double center = 0.0;      // s, count-weighted centroid
  std::uint64_t area = 0;   // counts assigned to the peak
};

/// Histogram of detection time differences, split by outcome. Bin k covers
/// [(k - 1/2) w, (k + 1/2) w).
class DelaySpectrum {
 public:
  using Counts = std::array<std::uint64_t, 4>;

  explicit DelaySpectrum(double bin_width);

  void add(double delay, Outcome outcome, std::uint64_t count = 1);
  /// Commutative merge of another spectrum with the same bin width.
  void merge(const DelaySpectrum& other);

  double bin_width() const { return bin_width_; }
  double bin_center(std::int64_t bin) const { return static_cast<double>(bin) * bin_width_; }
  const std::map<std::int64_t, Counts>& bins() const { return bins_; }
  std::uint64_t total() const;

  /// Clusters of contiguous bins whose total count is at least
  /// `threshold_fraction` of the tallest bin; every bin is then assigned to
  /// the nearest cluster to form peak areas.
  std::vector<SpectrumPeak> find_peaks(double threshold_fraction = 0.01) const;

 private:
  double bin_width_;
  std::map<std::int64_t, Counts> bins_;
};

DelaySpectrum delay_spectrum(const std::vector<DetectionRecord>& records, double bin_width,
                             double reference_offset);

struct CoincidenceCounts {
  std::array<std::uint64_t, 4> R{};  // kOutcomes order
  CoincidenceWindow window;

  std::uint64_t total() const { return R[0] + R[1] + R[2] + R[3]; }
};

CoincidenceCounts coincidence_select(const std::vector<DetectionRecord>& records,
                                     const CoincidenceWindow& window, double reference_offset);

struct CorrelationEstimate {
  double e_hat = 0.0;
  double std_error = 0.0;
};

/// e = sum(-sigma omega R) / sum(R), standard error sqrt((1 - e^2) / sum(R)).
/// Throws DomainError on an empty window.
CorrelationEstimate estimate_correlation(const CoincidenceCounts& counts);

/// Analytic subensemble-L correlation of a model under the config's geometry.
double analytic_correlation(const ExperimentConfig& config);

inline constexpr double kRequiredSeparation = 5.0;

struct DiscriminationReport {
  PhaseSettings phases;
  double analytic_qm = 0.0;
  double analytic_causal = 0.0;
  CorrelationEstimate qm;
  CorrelationEstimate causal;
  std::uint64_t coincidences_qm = 0;
  std::uint64_t coincidences_causal = 0;
  double separation_sigma = 0.0;
  bool preset_phases = true;
  bool sufficient = false;
  std::vector<std::string> warnings;
};

/// True when alpha+gamma = 0, alpha+beta = pi/2 and beta-gamma = pi/2 (mod 2pi).
bool satisfies_discrimination_phases(const PhaseSettings& phases, double tolerance = 1e-9);

/// Both models at (45, 45, -45) degrees in the time-ordering-2 geometry.
std::pair<ExperimentConfig, ExperimentConfig> discrimination_preset(std::uint64_t n_events,
                                                                    std::uint64_t seed);

/// Runs the QM config and the causal config and compares the estimates.
DiscriminationReport discriminate(const ExperimentConfig& qm_config,
                                  const ExperimentConfig& causal_config);

/// index,sigma,omega,t1_s,t2_s,true_path
void write_events_csv(std::ostream& out, const std::vector<DetectionRecord>& records);
/// bin_center_s,count_pp,count_pm,count_mp,count_mm over the contiguous bin range.
void write_spectrum_csv(std::ostream& out, const DelaySpectrum& spectrum);

}  // namespace retrolab
