#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "table.hpp"

namespace mwgcli {

struct RunOptions {
  std::string command;  // derive-params | talbot | kdtli | farfield | ladder | rabi | figure
  std::string figure;   // 1 | 2 | 4 | 5 | 6 for the figure command
  std::optional<std::string> config_path;
  std::string out_dir;
  std::vector<std::string> sweeps;
  std::string format = "csv";
  int jobs = 0;  // 0: hardware concurrency
  std::string variant = "quantum";
  std::string ell;  // N | all | sum; empty: command default
};

struct RunResult {
  std::vector<Table> tables;
  std::vector<std::pair<std::string, std::string>> scripts;  // file name, contents
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<SweepAxis> sweeps;
};

const std::vector<std::string>& command_names();

// Computes every table of a run without touching the file system.
RunResult execute(const RunOptions& opts, const Config& config);

// Writes tables, plot scripts and manifest.json into opts.out_dir.
void write_outputs(const RunOptions& opts, const RunResult& result);

// Full run with error reporting on stderr; returns the process exit code.
int run(const RunOptions& opts);

}  // namespace mwgcli
