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

// Pieces shared by run() and reproduce().

#pragma once

#include <chrono>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cli.hpp"

namespace scq::cli {

// One output directory: collects written files, warnings and per-point
// failures, and writes the manifest at the end.
class Session {
 public:
  Session(std::filesystem::path out, bool plot, bool quiet, int threads);

  int threads() const { return threads_; }
  const std::filesystem::path& out() const { return out_; }

  void write(const std::string& name, const std::string& content);
  void plot(const std::string& name, const PlotSpec& spec);
  void progress(const std::string& line);
  void warn(const std::string& message);
  void failure(const std::string& what, const Error& e);
  void failure(const std::string& what, const std::exception& e);

  RunOutcome finish(const std::string& command, const Json& config, Json extra = Json::object());

 private:
  std::filesystem::path out_;
  bool plot_;
  bool quiet_;
  int threads_;
  std::chrono::steady_clock::time_point start_;
  std::mutex mutex_;
  std::vector<std::filesystem::path> files_;
  std::vector<std::string> warnings_;
  Json failures_ = Json::array();
};

struct SuppressionRow {
  double knob_value = 0.0;
  double r = 0.0;
  SuppressionFit fit;
};

struct RatesResult {
  std::vector<StudyRow> rows;
  std::vector<SuppressionRow> fits;
};

struct ZgateRow {
  double alpha_sq = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double t_gate = 0.0;
  double kappa_minus = 0.0;
  double p_z_model = 0.0;
  double p_z_nonadiabatic = 0.0;
  GateResult result;
};

struct PrepRow {
  std::string initial;
  std::optional<PrepResult> result;
};

struct CircuitResult {
  PumpPlan plan;
  WasteDrive drive;
  std::optional<TwoModeReport> two_mode;
  std::optional<SkpoReport> skpo;
};

std::vector<StudyRow> run_rate_points(const StudyConfig& cfg, Session& session);
std::vector<SuppressionRow> suppression_fits(const StudyConfig& cfg,
                                             const std::vector<StudyRow>& rows);
RatesResult run_rates(const StudyConfig& cfg, Session& session);

std::vector<ZgateRow> run_gate_points(const ZgateSection& z, Session& session);
std::vector<BiasSlope> bias_slopes(const std::vector<ZgateRow>& rows);
std::string zgate_csv(const std::vector<ZgateRow>& rows);
/// Writes <stem>.csv (and <stem>_slopes.csv at t_opt).
std::vector<ZgateRow> run_zgate(const ZgateSection& z, Session& session, const std::string& stem);

DensityMatrix initial_state(FockSpace space, const std::string& label, const CodeParams& code);
std::vector<PrepRow> run_prep(const PrepSection& p, Session& session);
CircuitResult run_circuit(const CircuitSection& c, Session& session);
std::vector<std::pair<double, std::map<std::string, double>>> run_custom(const CustomSection& c,
                                                                         Session& session);

}  // namespace scq::cli
