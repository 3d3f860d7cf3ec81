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

#include "retrolab/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "retrolab/causal_model.hpp"
#include "retrolab/config.hpp"
#include "retrolab/experiment.hpp"
#include "retrolab/qm_model.hpp"
#include "retrolab/verification.hpp"

namespace retrolab::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PhaseFlags {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;
  bool degrees = false;
};

struct RunFlags {
  std::string config_path;
  std::optional<std::string> model;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> events;
  std::optional<double> window_center;
  std::optional<double> window_width;
  std::optional<double> jitter;
  std::optional<unsigned> workers;
  double bin_width = kDefaultBinWidth;
  std::string out_dir;
  PhaseFlags phases;
};

void add_phase_flags(CLI::App* cmd, PhaseFlags& f) {
  cmd->add_option("--alpha", f.alpha, "Phase alpha of the BS11 arm (radians unless --degrees)");
  cmd->add_option("--beta", f.beta, "Phase beta of the BS21 arm");
  cmd->add_option("--gamma", f.gamma, "Phase gamma of the BS22 arm");
  cmd->add_flag("--degrees", f.degrees, "Interpret --alpha/--beta/--gamma in degrees");
}

void add_run_flags(CLI::App* cmd, RunFlags& f, bool with_model) {
  cmd->add_option("--config", f.config_path, "JSON experiment config (or a run manifest)");
  if (with_model) cmd->add_option("--model", f.model, "Model: qm or causal");
  cmd->add_option("--seed", f.seed, "RNG seed (default: RETROLAB_SEED, then config)");
  cmd->add_option("--events", f.events, "Number of photon pairs");
  cmd->add_option("--window-center", f.window_center, "Coincidence window center (s)");
  cmd->add_option("--window-width", f.window_width, "Coincidence window full width (s)");
  cmd->add_option("--jitter", f.jitter, "Gaussian detector jitter sigma (s)");
  cmd->add_option("--workers", f.workers, "Generation threads (results do not depend on it)");
  add_phase_flags(cmd, f.phases);
}

PhaseSettings resolve_phases(const PhaseFlags& f, const PhaseSettings& base) {
  auto pick = [&](const std::optional<double>& flag, double fallback) {
    if (!flag) return fallback;
    return f.degrees ? degrees_to_radians(*flag) : *flag;
  };
  return {pick(f.alpha, base.alpha()), pick(f.beta, base.beta()), pick(f.gamma, base.gamma())};
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("RETROLAB_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string text(raw);
  std::size_t used = 0;
  std::uint64_t seed = 0;
  try {
    seed = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.front() == '-') {
    throw UsageError("RETROLAB_SEED must be a non-negative integer, got '" + text + "'");
  }
  return seed;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<file>", std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

/// Precedence, lowest first: `base`, RETROLAB_SEED, config file, flags.
ExperimentConfig resolve_config(const RunFlags& f, ExperimentConfig base) {
  if (auto seed = env_seed()) base.seed = *seed;
  if (!f.config_path.empty()) {
    nlohmann::json doc = read_json_file(f.config_path);
    if (doc.is_object() && doc.contains("command") && doc.contains("config")) {
      // a run manifest: spectrum adds bin_width, discriminate nests both models
      doc = doc["config"];
      if (doc.is_object() && doc.contains("qm")) doc = doc["qm"];
      if (doc.is_object()) doc.erase("bin_width");
    }
    base = config_from_json(doc, base);
  }
  if (f.model) {
    try {
      base.model = parse_model(*f.model);
    } catch (const DomainError& e) {
      throw ConfigError("model", e.what());
    }
  }
  base.phases = resolve_phases(f.phases, base.phases);
  if (f.seed) base.seed = *f.seed;
  if (f.events) base.n_events = *f.events;
  if (f.window_center) base.window.center = *f.window_center;
  if (f.window_width) base.window.half_width = *f.window_width / 2.0;
  if (f.jitter) base.jitter_sigma = *f.jitter;
  if (f.workers) base.workers = *f.workers;
  check_config(base);
  return base;
}

ordered_json table_json(const ProbabilityTable& t) {
  ordered_json j = ordered_json::object();
  for (Outcome o : kOutcomes) j[to_string(o)] = t(o);
  return j;
}

ordered_json singles_json(const SinglesPair& s) { return {{"+", s.plus}, {"-", s.minus}}; }

ordered_json counts_json(const CoincidenceCounts& c) {
  ordered_json r = ordered_json::object();
  for (Outcome o : kOutcomes) r[to_string(o)] = c.R[index(o)];
  return {{"window", {{"center", c.window.center}, {"half_width", c.window.half_width}}},
          {"R", r},
          {"total", c.total()}};
}

ordered_json peaks_json(const std::vector<SpectrumPeak>& peaks, std::uint64_t total) {
  ordered_json list = ordered_json::array();
  for (const auto& p : peaks) {
    list.push_back({{"center_s", p.center},
                    {"area", p.area},
                    {"fraction", total ? static_cast<double>(p.area) / total : 0.0}});
  }
  return list;
}

class Session {
 public:
  explicit Session(std::ostream& out) : out_(out), start_(Clock::now()) {}

  ordered_json manifest(const std::string& command, ordered_json config, ordered_json seed,
                        const std::vector<std::string>& outputs) const {
    const double seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    return {{"command", command},
            {"config", std::move(config)},
            {"seed", std::move(seed)},
            {"version", kVersion},
            {"outputs", outputs},
            {"duration_s", seconds}};
  }

  /// Writes manifest.json when an output directory is in use and attaches
  /// the manifest to the stdout report.
  void finish(ordered_json report, const std::string& command, ordered_json config,
              ordered_json seed, std::vector<std::string> outputs, const std::string& out_dir) {
    if (!out_dir.empty()) outputs.push_back((fs::path(out_dir) / "manifest.json").string());
    ordered_json m = manifest(command, std::move(config), std::move(seed), outputs);
    if (!out_dir.empty()) write_text(fs::path(out_dir) / "manifest.json", m.dump(2) + "\n");
    report["manifest"] = std::move(m);
    out_ << report.dump(2) << '\n';
  }

  static void write_text(const fs::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw fs::filesystem_error("cannot write", path, std::make_error_code(std::errc::io_error));
    file << text;
  }

 private:
  std::ostream& out_;
  Clock::time_point start_;
};

int cmd_predict(Session& session, const std::string& model, const std::string& subensemble_text,
                const PhaseFlags& flags, const std::string& out_dir) {
  const PhaseSettings phases = resolve_phases(flags, {});
  Subensemble subensemble;
  try {
    subensemble = parse_subensemble(subensemble_text);
  } catch (const DomainError& e) {
    throw ConfigError("subensemble", e.what());
  }

  std::optional<ProbabilityTable> table;
  SinglesPair side1, side2;
  double correlation = 0.0;
  if (model == "qm") {
    if (subensemble == Subensemble::Long) {
      table = qm_joint_closed_L(phases);
      correlation = qm_correlation(phases);
    } else {
      table = qm_joint(subensemble, phases);
      correlation = table->correlation();
    }
    side1 = qm_singles(Side::One, subensemble, phases);
    side2 = qm_singles(Side::Two, subensemble, phases);
  } else if (model == "causal") {
    table = causal_joint(phases, subensemble);
    correlation = causal_correlation(phases);
    side1 = causal_singles(Side::One, phases);
    side2 = causal_singles(Side::Two, phases);
  } else if (model == "bbb") {
    table = causal_joint_bbb(phases, subensemble);
    correlation = table->correlation();
    side1 = causal_singles_bbb(Side::One, phases);
    side2 = causal_singles_bbb(Side::Two, phases);
  } else {
    throw ConfigError("model", "unknown model '" + model + "' (expected qm, causal or bbb)");
  }

  ordered_json config{{"model", model}, {"subensemble", to_string(subensemble)},
                      {"phases", to_json(phases)}};
  ordered_json report{{"command", "predict"},
                      {"model", model},
                      {"subensemble", to_string(subensemble)},
                      {"phases", to_json(phases)},
                      {"joint", table_json(*table)},
                      {"singles", {{"side1", singles_json(side1)}, {"side2", singles_json(side2)}}},
                      {"correlation", correlation}};
  if (!out_dir.empty()) fs::create_directories(out_dir);
  session.finish(std::move(report), "predict", std::move(config), nullptr, {}, out_dir);
  return kSuccess;
}

struct Simulation {
  ExperimentConfig config;
  std::vector<DetectionRecord> records;
  DelaySpectrum spectrum;
  CoincidenceCounts counts;
  std::vector<std::string> warnings;
};

Simulation simulate(const ExperimentConfig& config, double bin_width) {
  if (!(bin_width > 0.0)) throw ConfigError("bin_width", "must be > 0");
  const EventSampler sampler(config);
  auto records = run_experiment(config);
  auto spectrum = delay_spectrum(records, bin_width, sampler.reference_offset());
  auto counts = coincidence_select(records, config.window, sampler.reference_offset());
  return {config, std::move(records), std::move(spectrum), counts,
          coherence_warnings(config.geometry)};
}

int cmd_simulate(Session& session, const RunFlags& flags) {
  const ExperimentConfig config = resolve_config(flags, {});
  const Simulation sim = simulate(config, flags.bin_width);
  const std::string out_dir = flags.out_dir.empty() ? "out" : flags.out_dir;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  {
    std::ofstream events(dir / "events.csv", std::ios::binary);
    write_events_csv(events, sim.records);
  }
  {
    std::ofstream spectrum(dir / "spectrum.csv", std::ios::binary);
    write_spectrum_csv(spectrum, sim.spectrum);
  }
  const ordered_json counts = counts_json(sim.counts);
  Session::write_text(dir / "counts.json", counts.dump(2) + "\n");

  int code = kSuccess;
  ordered_json estimate{{"analytic", analytic_correlation(config)},
                        {"coincidences", sim.counts.total()}};
  try {
    const CorrelationEstimate e = estimate_correlation(sim.counts);
    estimate["e_hat"] = e.e_hat;
    estimate["std_error"] = e.std_error;
  } catch (const DomainError& e) {
    estimate["error"] = e.what();
    code = kFailure;
  }
  Session::write_text(dir / "estimate.json", estimate.dump(2) + "\n");

  ordered_json report{{"command", "simulate"},
                      {"counts", counts},
                      {"estimate", estimate},
                      {"peaks", peaks_json(sim.spectrum.find_peaks(), sim.spectrum.total())},
                      {"warnings", sim.warnings}};
  std::vector<std::string> outputs;
  for (const char* name : {"events.csv", "spectrum.csv", "counts.json", "estimate.json"}) {
    outputs.push_back((dir / name).string());
  }
  session.finish(std::move(report), "simulate", to_json(config), config.seed, outputs, out_dir);
  return code;
}

int cmd_spectrum(Session& session, const RunFlags& flags) {
  const ExperimentConfig config = resolve_config(flags, {});
  const Simulation sim = simulate(config, flags.bin_width);
  const std::string out_dir = flags.out_dir.empty() ? "out" : flags.out_dir;
  fs::create_directories(out_dir);
  const fs::path csv = fs::path(out_dir) / "spectrum.csv";
  {
    std::ofstream file(csv, std::ios::binary);
    write_spectrum_csv(file, sim.spectrum);
  }
  ordered_json report{{"command", "spectrum"},
                      {"bin_width_s", flags.bin_width},
                      {"total", sim.spectrum.total()},
                      {"peaks", peaks_json(sim.spectrum.find_peaks(), sim.spectrum.total())},
                      {"warnings", sim.warnings}};
  ordered_json config_json = to_json(config);
  config_json["bin_width"] = flags.bin_width;
  session.finish(std::move(report), "spectrum", std::move(config_json), config.seed,
                 {csv.string()}, out_dir);
  return kSuccess;
}

int cmd_discriminate(Session& session, const RunFlags& flags) {
  auto [preset, unused] = discrimination_preset(1'000'000, 1);
  ExperimentConfig qm = resolve_config(flags, preset);
  qm.model = Model::QM;
  ExperimentConfig causal = discrimination_preset(qm.n_events, qm.seed).second;
  causal.geometry = qm.geometry;
  causal.phases = qm.phases;
  causal.jitter_sigma = qm.jitter_sigma;
  causal.window = qm.window;
  causal.workers = qm.workers;
  causal.non_L_policy = qm.non_L_policy ? qm.non_L_policy : NonLPolicy::QM;
  check_config(causal);

  const DiscriminationReport r = discriminate(qm, causal);
  auto row = [](const CorrelationEstimate& e, std::uint64_t n) {
    return ordered_json{{"e_hat", e.e_hat}, {"std_error", e.std_error}, {"coincidences", n}};
  };
  ordered_json report{
      {"command", "discriminate"},
      {"phases", to_json(r.phases)},
      {"preset_phases", r.preset_phases},
      {"analytic", {{"qm", r.analytic_qm}, {"causal", r.analytic_causal}}},
      {"empirical", {{"qm", row(r.qm, r.coincidences_qm)}, {"causal", row(r.causal, r.coincidences_causal)}}},
      {"separation_sigma", std::isfinite(r.separation_sigma) ? ordered_json(r.separation_sigma)
                                                             : ordered_json("inf")},
      {"required_sigma", kRequiredSeparation},
      {"sufficient", r.sufficient},
      {"warnings", r.warnings}};
  if (!flags.out_dir.empty()) fs::create_directories(flags.out_dir);
  session.finish(std::move(report), "discriminate",
                 {{"qm", to_json(qm)}, {"causal", to_json(causal)}}, qm.seed, {}, flags.out_dir);
  return r.sufficient ? kSuccess : kFailure;
}

int cmd_verify(Session& session, std::uint64_t grid_seed, const std::string& out_dir) {
  const VerificationSummary summary = run_verification(grid_seed);
  ordered_json properties = ordered_json::array();
  for (const auto& p : summary.properties) {
    properties.push_back({{"name", p.name},
                          {"max_deviation", p.max_deviation},
                          {"tolerance", p.tolerance},
                          {"passed", p.passed}});
  }
  ordered_json report{
      {"command", "verify"},
      {"grid_seed", grid_seed},
      {"properties", properties},
      {"contradiction",
       {{"phases", to_json(PhaseSettings{})},
        {"consistent", summary.contradiction_at_zero.consistent},
        {"discrepancy", summary.contradiction_at_zero.discrepancy}}},
      {"passed", summary.passed}};
  if (!out_dir.empty()) fs::create_directories(out_dir);
  session.finish(std::move(report), "verify", {{"grid_seed", grid_seed}}, grid_seed, {}, out_dir);
  return summary.passed ? kSuccess : kFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Predictions and Monte Carlo simulation for the two-photon impact-series "
               "interferometer",
               "retrolab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string predict_model = "qm";
  std::string predict_subensemble = "L";
  PhaseFlags predict_phases;
  std::string predict_out;
  auto* predict = app.add_subcommand("predict", "Joint table, singles and correlation of a model");
  predict->add_option("--model", predict_model, "qm, causal or bbb (all-before)")
      ->check(CLI::IsMember({"qm", "causal", "bbb"}));
  predict->add_option("--subensemble", predict_subensemble, "L or l");
  predict->add_option("--out", predict_out, "Directory for manifest.json");
  add_phase_flags(predict, predict_phases);

  RunFlags simulate_flags;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo run writing CSV and JSON outputs");
  add_run_flags(simulate_cmd, simulate_flags, true);
  simulate_cmd->add_option("--out", simulate_flags.out_dir, "Output directory (default: out)");
  simulate_cmd->add_option("--bin-width", simulate_flags.bin_width, "Spectrum bin width (s)");

  RunFlags spectrum_flags;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Time-delay spectrum of a Monte Carlo run");
  add_run_flags(spectrum_cmd, spectrum_flags, true);
  spectrum_cmd->add_option("--out", spectrum_flags.out_dir, "Output directory (default: out)");
  spectrum_cmd->add_option("--bin-width", spectrum_flags.bin_width, "Spectrum bin width (s)");

  RunFlags discriminate_flags;
  auto* discriminate_cmd =
      app.add_subcommand("discriminate", "Run both models at the discriminating phase settings");
  add_run_flags(discriminate_cmd, discriminate_flags, false);
  discriminate_cmd->add_option("--out", discriminate_flags.out_dir, "Directory for manifest.json");

  std::uint64_t verify_seed = kDefaultGridSeed;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Check every analytic identity on a phase grid");
  verify->add_option("--seed", verify_seed, "Phase-grid seed");
  verify->add_option("--out", verify_out, "Directory for manifest.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  Session session(out);
  try {
    if (*predict) {
      return cmd_predict(session, predict_model, predict_subensemble, predict_phases, predict_out);
    }
    if (*simulate_cmd) return cmd_simulate(session, simulate_flags);
    if (*spectrum_cmd) return cmd_spectrum(session, spectrum_flags);
    if (*discriminate_cmd) return cmd_discriminate(session, discriminate_flags);
    if (*verify) return cmd_verify(session, verify_seed, verify_out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace retrolab::cli
