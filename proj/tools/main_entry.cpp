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

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

namespace scq::cli {

namespace {

struct Flags {
  std::string config;
  std::string out;
  bool plot = false;
  int threads = 0;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--out", f.out, "Output directory (overrides the config)");
  cmd->add_flag("--plot", f.plot, "Write SVG plots");
  cmd->add_option("--threads", f.threads,
                  std::string("Worker threads (overrides ") + kThreadsEnv + " and the config)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--quiet", f.quiet, "No progress output");
}

RunOptions options_from(const Flags& f) {
  RunOptions o;
  if (!f.out.empty()) o.out = f.out;
  o.plot = f.plot;
  if (f.threads > 0) o.threads = f.threads;
  o.quiet = f.quiet;
  return o;
}

// The reproduce config names a figure and optionally an output directory.
std::string figure_from_config(const std::string& path, RunOptions& o) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  Json doc;
  try {
    doc = Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "schema_version" && it.key() != "figure" && it.key() != "output") {
      throw ConfigError(it.key() + ": unknown key");
    }
  }
  if (!doc.contains("schema_version") || doc["schema_version"] != kSchemaVersion) {
    throw ConfigError("schema_version: missing or unsupported (expected 1)");
  }
  if (!doc.contains("figure") || !doc["figure"].is_string()) {
    throw ConfigError("figure: missing or not a string");
  }
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) throw ConfigError("output: must be a string");
    if (!o.out) o.out = doc["output"].get<std::string>();
  }
  return doc["figure"].get<std::string>();
}

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"Squeezed cat qubit simulations: rates, gates, preparation and circuit planning"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SCQ_VERSION);

  Flags flags;
  std::string figure;
  std::vector<CLI::App*> runs;
  for (const char* name : {"rates", "zgate", "prep", "circuit"}) {
    CLI::App* cmd = app.add_subcommand(name, std::string("Run a ") + name + " study from a config");
    cmd->add_option("--config", flags.config, "Study configuration (JSON)")->required();
    add_common(cmd, flags);
    runs.push_back(cmd);
  }
  CLI::App* rep = app.add_subcommand("reproduce", "Run a bundled figure grid with checks");
  rep->add_option("figure", figure, "fig1, fig2, fig3, fig4 or fig5");
  rep->add_option("--config", flags.config, "JSON naming the figure");
  add_common(rep, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json("config-invalid", e.what()) << '\n';
    return kExitConfig;
  }

  try {
    RunOptions opts = options_from(flags);
    RunOutcome outcome;
    if (rep->parsed()) {
      if (!flags.config.empty()) {
        const std::string named = figure_from_config(flags.config, opts);
        if (!figure.empty() && figure != named) {
          throw ConfigError("figure: command line says " + figure + ", config says " + named);
        }
        figure = named;
      }
      if (figure.empty()) throw ConfigError("figure: give a figure id or --config");
      outcome = reproduce(figure, opts);
    } else {
      for (CLI::App* cmd : runs) {
        if (cmd->parsed()) outcome = run(cmd->get_name(), load_config(flags.config), opts);
      }
    }
    if (!opts.quiet) std::cerr << "wrote " << outcome.out_dir.string() << '\n';
    if (outcome.exit_code != kExitOk) {
      std::cerr << error_json("runtime-failure", "some points failed; see " +
                                                     (outcome.out_dir / "manifest.json").string())
                << '\n';
    }
    return outcome.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << error_json(e.category(), e.what()) << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << error_json(e.category(), e.what()) << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << error_json("runtime-failure", e.what()) << '\n';
    return kExitRuntime;
  }
}

}  // namespace scq::cli
