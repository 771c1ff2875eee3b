// Copyright 2026 The scq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line layer: configuration parsing, run orchestration and output.
// Built as a library so the tests and the acceptance binary can drive it
// without spawning processes.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "scq/circuit.hpp"
#include "scq/error.hpp"
#include "scq/rates.hpp"
#include "scq/state_prep.hpp"
#include "scq/zgate.hpp"

namespace scq::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;
inline constexpr const char* kThreadsEnv = "SCQ_THREADS";

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("config-invalid", message) {}
};

enum class ScenarioKind {
  kRatesLoss,
  kRatesDephasing,
  kRatesGain,
  kRatesKerr,
  kZgate,
  kPrep,
  kCircuit,
  kCustom,
};

const char* scenario_name(ScenarioKind kind);

struct RatesSection {
  StudyGrid grid;
  double fit_alpha_sq_min = 2.0;
  double fit_alpha_sq_max = 5.0;
};

struct ZgateSection {
  std::vector<double> alpha_sq{4.0};
  std::vector<double> r{0.0, 0.2, 0.35};
  std::vector<double> t_gate;
  /// Run each point at t_opt instead of the t_gate list.
  bool at_t_opt = false;
  double theta = 3.141592653589793;
  double kappa_minus = 0.0;
  int cutoff = 0;
  EvolutionConfig engine = gate_engine_defaults();
};

struct PrepInitial {
  std::string label;  // vacuum, fock:<n> or thermal:<n_th>
};

struct PrepSection {
  double alpha_sq = 2.0;
  double ratio = 1e-2;
  double r = 0.2;
  double phi = 0.0;
  int cutoff = 0;
  std::vector<std::string> initial{"vacuum", "fock:1", "thermal:0.5"};
  EvolutionConfig engine = prep_engine_defaults();
};

/// Circuit quantities come in MHz (f = omega / 2 pi) and are converted to
/// angular units internally.
struct CircuitSection {
  CircuitParams params;  // angular units
  CodeParams code;
  bool two_mode = true;
  TwoModeConfig two_mode_config;
  bool skpo = true;
  double skpo_kerr = 1.0;  // in units of kappa2
  int skpo_cutoff = 0;
};

struct CustomSection {
  CodeParams code;
  NoiseParams noise;
  std::string initial = "plus";
  int cutoff = 0;
  std::vector<std::string> observables{"parity", "n", "fidelity_plus"};
  EvolutionConfig engine;
};

struct StudyConfig {
  ScenarioKind scenario = ScenarioKind::kRatesLoss;
  std::filesystem::path output = "out";
  bool plot = false;
  int threads = 1;
  RatesSection rates;
  ZgateSection zgate;
  PrepSection prep;
  CircuitSection circuit;
  CustomSection custom;
  /// Config with every default filled in, echoed into the manifest.
  Json resolved;
};

/// Parses and validates a configuration; every problem raises ConfigError
/// naming the offending field.
StudyConfig parse_config(const Json& doc);
StudyConfig load_config(const std::filesystem::path& path);

/// Writes through a temporary file in the same directory and renames.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Shortest round-trip decimal form, so that CSV output is byte-stable.
std::string format_number(double v);

std::string rates_csv(const std::vector<StudyRow>& rows);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = true;
  std::vector<PlotSeries> series;
};

std::string render_svg(const PlotSpec& spec);

struct RunOptions {
  std::optional<std::filesystem::path> out;
  bool plot = false;
  std::optional<int> threads;
  /// Suppresses progress lines on stderr.
  bool quiet = false;
};

/// Thread count: --threads, then the SCQ_THREADS variable, then the config.
int resolve_threads(const std::optional<int>& flag, int from_config);

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;
  std::filesystem::path out_dir;
  /// reproduce only: verdict of the figure checks.
  std::optional<bool> checks_passed;
};

/// Runs `command` (rates, zgate, prep, circuit) on a parsed config, writing
/// CSV, optional SVG and manifest.json under the output directory.
RunOutcome run(const std::string& command, const StudyConfig& config,
               const RunOptions& options);

/// Bundled desk-scale grid for a figure id (fig1..fig5).
StudyConfig figure_config(const std::string& figure_id);

RunOutcome reproduce(const std::string& figure_id, const RunOptions& options);

/// Machine-readable error line for stderr.
std::string error_json(const std::string& category, const std::string& message);

/// Entry point shared by the scq binary.
int main_entry(int argc, char** argv);

}  // namespace scq::cli
