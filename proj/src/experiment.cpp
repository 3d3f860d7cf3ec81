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

#include "retrolab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "retrolab/qm_model.hpp"
#include "retrolab/rng.hpp"

namespace retrolab {

namespace {

std::size_t subensemble_slot(Subensemble s) {
  return static_cast<std::size_t>(std::find(kSubensembles.begin(), kSubensembles.end(), s) -
                                  kSubensembles.begin());
}

ProbabilityTable uniform_table(Subensemble s) { return {s, JointMatrix::Constant(0.25)}; }

double wrapped_distance(double angle, double target) {
  return std::abs(std::remainder(angle - target, kTwoPi));
}

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.16e", v);
  return buffer;
}

}  // namespace

std::string to_string(Model m) { return m == Model::QM ? "qm" : "causal"; }
std::string to_string(NonLPolicy p) { return p == NonLPolicy::QM ? "qm" : "uniform"; }

Model parse_model(std::string_view text) {
  if (text == "qm") return Model::QM;
  if (text == "causal") return Model::Causal;
  throw DomainError("unknown model '" + std::string(text) + "' (expected qm or causal)");
}

NonLPolicy parse_non_L_policy(std::string_view text) {
  if (text == "qm") return NonLPolicy::QM;
  if (text == "uniform") return NonLPolicy::Uniform;
  throw DomainError("unknown non_L_policy '" + std::string(text) + "' (expected qm or uniform)");
}

void ExperimentConfig::validate() const {
  geometry.validate();
  if (n_events == 0) throw DomainError("n_events must be > 0");
  if (!std::isfinite(jitter_sigma) || jitter_sigma < 0.0) {
    throw DomainError("jitter_sigma must be >= 0");
  }
  if (!std::isfinite(window.center)) throw DomainError("window.center must be finite");
  if (!std::isfinite(window.half_width) || window.half_width <= 0.0) {
    throw DomainError("window.half_width must be > 0");
  }
  if (model == Model::Causal && !non_L_policy) {
    throw DomainError("non_L_policy must be set for the causal model");
  }
}

std::vector<std::string> coherence_warnings(const Geometry& geometry, double pair_coherence,
                                            double pump_coherence) {
  constexpr double kMargin = 10.0;
  std::vector<std::string> warnings;
  const double imbalance = geometry.long_arm - geometry.short_arm;
  if (!(imbalance >= kMargin * pair_coherence)) {
    warnings.push_back("arm imbalance " + format_double(imbalance) +
                       " m is not much larger than the pair coherence length " +
                       format_double(pair_coherence) + " m; time windows cannot separate paths");
  }
  if (!(imbalance * kMargin <= pump_coherence)) {
    warnings.push_back("arm imbalance " + format_double(imbalance) +
                       " m is not much smaller than the pump coherence length " +
                       format_double(pump_coherence) + " m; subensemble paths will not interfere");
  }
  return warnings;
}

EventSampler::EventSampler(const ExperimentConfig& config) : config_(config) {
  config_.validate();
  for (Subensemble s : kSubensembles) {
    switch (s) {
      case Subensemble::Long:
        if (config_.model == Model::QM) {
          tables_.push_back(qm_joint(s, config_.phases));
        } else {
          model_case_ = select_model_case(config_.geometry);
          tables_.push_back(causal_joint_for(*model_case_, config_.phases));
        }
        break;
      case Subensemble::Short:
        if (config_.model == Model::Causal && *config_.non_L_policy == NonLPolicy::Uniform) {
          tables_.push_back(uniform_table(s));
        } else {
          tables_.push_back(qm_joint(s, config_.phases));
        }
        break;
      default:
        tables_.push_back(uniform_table(s));
        break;
    }
  }
  for (PathPair p : kPathPairs) {
    const auto events = impact_times(config_.geometry, p);
    detector_times_[index(p)] = {event_at(events, Site::D1).t, event_at(events, Site::D2).t};
  }
  reference_offset_ = retrolab::reference_offset(config_.geometry);
}

const ProbabilityTable& EventSampler::table_for(Subensemble s) const {
  return tables_[subensemble_slot(s)];
}

DetectionRecord EventSampler::operator()(std::uint64_t index) const {
  const Philox4x32 rng(config_.seed);
  const EventDraws draws = draw_event(rng, index);

  const auto path_slot = std::min<std::size_t>(static_cast<std::size_t>(draws.path_uniform * 8.0), 7);
  const PathPair path = kPathPairs[path_slot];

  const auto p = table_for(subensemble_of(path)).entries();
  std::size_t outcome_slot = 3;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    cumulative += p[k];
    if (draws.outcome_uniform < cumulative) {
      outcome_slot = k;
      break;
    }
  }

  const auto& times = detector_times_[path_slot];
  return {index, kOutcomes[outcome_slot], times[0] + config_.jitter_sigma * draws.normal1,
          times[1] + config_.jitter_sigma * draws.normal2, path};
}

DetectionRecord sample_event(const ExperimentConfig& config, std::uint64_t index) {
  return EventSampler(config)(index);
}

std::vector<DetectionRecord> run_experiment(const ExperimentConfig& config) {
  const EventSampler sampler(config);
  std::vector<DetectionRecord> records(config.n_events);

  std::uint64_t workers = config.workers != 0 ? config.workers : std::thread::hardware_concurrency();
  workers = std::clamp<std::uint64_t>(workers, 1, config.n_events);

  auto fill = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) records[i] = sampler(i);
  };
  if (workers == 1) {
    fill(0, config.n_events);
    return records;
  }
  std::vector<std::jthread> pool;
  const std::uint64_t chunk = (config.n_events + workers - 1) / workers;
  for (std::uint64_t begin = 0; begin < config.n_events; begin += chunk) {
    pool.emplace_back(fill, begin, std::min(begin + chunk, config.n_events));
  }
  pool.clear();  // joins
  return records;
}

DelaySpectrum::DelaySpectrum(double bin_width) : bin_width_(bin_width) {
  if (!std::isfinite(bin_width) || bin_width <= 0.0) {
    throw DomainError("bin_width must be > 0");
  }
}

void DelaySpectrum::add(double delay, Outcome outcome, std::uint64_t count) {
  const auto bin = static_cast<std::int64_t>(std::floor(delay / bin_width_ + 0.5));
  bins_[bin][index(outcome)] += count;
}

void DelaySpectrum::merge(const DelaySpectrum& other) {
  if (other.bin_width_ != bin_width_) throw DomainError("cannot merge spectra with different bins");
  for (const auto& [bin, counts] : other.bins_) {
    auto& mine = bins_[bin];
    for (std::size_t k = 0; k < 4; ++k) mine[k] += counts[k];
  }
}

std::uint64_t DelaySpectrum::total() const {
  std::uint64_t sum = 0;
  for (const auto& [bin, counts] : bins_) sum += counts[0] + counts[1] + counts[2] + counts[3];
  return sum;
}

std::vector<SpectrumPeak> DelaySpectrum::find_peaks(double threshold_fraction) const {
  auto bin_total = [](const Counts& c) { return c[0] + c[1] + c[2] + c[3]; };
  std::uint64_t tallest = 0;
  for (const auto& [bin, counts] : bins_) tallest = std::max(tallest, bin_total(counts));
  if (tallest == 0) return {};
  const double threshold = threshold_fraction * static_cast<double>(tallest);

  struct Cluster {
    std::int64_t last = 0;
    double weighted = 0.0;
    double mass = 0.0;
  };
  std::vector<Cluster> clusters;
  for (const auto& [bin, counts] : bins_) {
    const auto n = static_cast<double>(bin_total(counts));
    if (n < threshold || n == 0.0) continue;
    if (clusters.empty() || clusters.back().last + 1 != bin) clusters.push_back({bin, 0.0, 0.0});
    clusters.back().last = bin;
    clusters.back().weighted += n * bin_center(bin);
    clusters.back().mass += n;
  }

  std::vector<SpectrumPeak> peaks;
  for (const auto& c : clusters) peaks.push_back({c.weighted / c.mass, 0});
  for (const auto& [bin, counts] : bins_) {
    const double x = bin_center(bin);
    auto nearest = std::min_element(peaks.begin(), peaks.end(), [&](const auto& a, const auto& b) {
      return std::abs(a.center - x) < std::abs(b.center - x);
    });
    nearest->area += bin_total(counts);
  }
  return peaks;
}

DelaySpectrum delay_spectrum(const std::vector<DetectionRecord>& records, double bin_width,
                             double reference_offset) {
  DelaySpectrum spectrum(bin_width);
  for (const auto& r : records) spectrum.add(record_delay(r, reference_offset), r.outcome);
  return spectrum;
}

CoincidenceCounts coincidence_select(const std::vector<DetectionRecord>& records,
                                     const CoincidenceWindow& window, double reference_offset) {
  if (!(window.half_width > 0.0)) throw DomainError("window.half_width must be > 0");
  CoincidenceCounts counts;
  counts.window = window;
  for (const auto& r : records) {
    if (window.contains(record_delay(r, reference_offset))) ++counts.R[index(r.outcome)];
  }
  return counts;
}

CorrelationEstimate estimate_correlation(const CoincidenceCounts& counts) {
  const std::uint64_t total = counts.total();
  if (total == 0) throw DomainError("no coincidences in window");
  double signed_sum = 0.0;
  for (Outcome o : kOutcomes) {
    signed_sum -= parity(o) * static_cast<double>(counts.R[index(o)]);
  }
  const double n = static_cast<double>(total);
  const double e = signed_sum / n;
  return {e, std::sqrt(std::max(0.0, 1.0 - e * e) / n)};
}

double analytic_correlation(const ExperimentConfig& config) {
  if (config.model == Model::QM) return qm_correlation(config.phases);
  return causal_joint_for(select_model_case(config.geometry), config.phases).correlation();
}

bool satisfies_discrimination_phases(const PhaseSettings& phases, double tolerance) {
  const double a = phases.alpha();
  const double b = phases.beta();
  const double g = phases.gamma();
  return wrapped_distance(a + g, 0.0) < tolerance && wrapped_distance(a + b, kPi / 2) < tolerance &&
         wrapped_distance(b - g, kPi / 2) < tolerance;
}

std::pair<ExperimentConfig, ExperimentConfig> discrimination_preset(std::uint64_t n_events,
                                                                    std::uint64_t seed) {
  ExperimentConfig qm;
  qm.geometry = Geometry::time_ordering_2();
  qm.phases = PhaseSettings::from_degrees(45.0, 45.0, -45.0);
  qm.model = Model::QM;
  qm.n_events = n_events;
  qm.seed = seed;
  ExperimentConfig causal = qm;
  causal.model = Model::Causal;
  // independent stream for the second model
  causal.seed = seed ^ 0x9E3779B97F4A7C15ull;
  return {qm, causal};
}

DiscriminationReport discriminate(const ExperimentConfig& qm_config,
                                  const ExperimentConfig& causal_config) {
  if (qm_config.model != Model::QM || causal_config.model != Model::Causal) {
    throw DomainError("discriminate expects a qm config and a causal config");
  }
  DiscriminationReport report;
  report.phases = qm_config.phases;
  report.preset_phases = satisfies_discrimination_phases(qm_config.phases);
  if (!report.preset_phases) {
    report.warnings.push_back(
        "phases do not satisfy alpha+gamma=0, alpha+beta=pi/2, beta-gamma=pi/2; "
        "analytic values refer to the actual phases");
  }
  const auto& a = qm_config.phases;
  const auto& b = causal_config.phases;
  if (a.alpha() != b.alpha() || a.beta() != b.beta() || a.gamma() != b.gamma()) {
    report.warnings.push_back("qm and causal configs use different phases");
  }
  report.analytic_qm = analytic_correlation(qm_config);
  report.analytic_causal = analytic_correlation(causal_config);

  auto estimate = [](const ExperimentConfig& config, std::uint64_t& coincidences) {
    const EventSampler sampler(config);
    const auto records = run_experiment(config);
    const auto counts = coincidence_select(records, config.window, sampler.reference_offset());
    coincidences = counts.total();
    return estimate_correlation(counts);
  };
  report.qm = estimate(qm_config, report.coincidences_qm);
  report.causal = estimate(causal_config, report.coincidences_causal);

  const double combined = std::hypot(report.qm.std_error, report.causal.std_error);
  const double gap = std::abs(report.qm.e_hat - report.causal.e_hat);
  report.separation_sigma = combined > 0.0 ? gap / combined
                            : gap > 0.0    ? std::numeric_limits<double>::infinity()
                                           : 0.0;
  report.sufficient = report.separation_sigma >= kRequiredSeparation;
  if (!report.sufficient) {
    report.warnings.push_back("insufficient separation: below 5 combined standard errors");
  }
  return report;
}

void write_events_csv(std::ostream& out, const std::vector<DetectionRecord>& records) {
  out << "index,sigma,omega,t1_s,t2_s,true_path\n";
  for (const auto& r : records) {
    const std::string path = to_string(r.true_path);  // "(l,Ll)"
    out << r.index << ',' << value(r.outcome.sigma) << ',' << value(r.outcome.omega) << ','
        << format_double(r.t1) << ',' << format_double(r.t2) << ',' << path[1] << ':'
        << path.substr(3, 2) << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const DelaySpectrum& spectrum) {
  out << "bin_center_s,count_pp,count_pm,count_mp,count_mm\n";
  const auto& bins = spectrum.bins();
  if (bins.empty()) return;
  const std::int64_t first = bins.begin()->first;
  const std::int64_t last = bins.rbegin()->first;
  for (std::int64_t k = first; k <= last; ++k) {
    const auto it = bins.find(k);
    const DelaySpectrum::Counts counts = it != bins.end() ? it->second : DelaySpectrum::Counts{};
    out << format_double(spectrum.bin_center(k)) << ',' << counts[0] << ',' << counts[1] << ','
        << counts[2] << ',' << counts[3] << '\n';
  }
}

}  // namespace retrolab
