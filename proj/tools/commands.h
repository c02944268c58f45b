// tools/commands.h
//
// Subcommands of the phrasebreak tool. Each one is a thin wrapper around
// library calls; all reports go to stdout as aligned tables and, with
// --out, to a tab-separated file.

#pragma once

#include <string>
#include <vector>

#include "CLI11.hpp"

namespace phrasebreak::cli {

struct Options {
  std::vector<std::string> corpus;
  std::vector<std::string> speakers;
  std::vector<std::string> scores;    // score files or directories of <id>.scores
  std::vector<std::string> baseline;  // wav files or directories of <id>.wav
  std::vector<std::string> stitch;
  std::vector<std::string> average;
  std::string predictions;
  std::string external;
  std::string a, b;
  std::string op = "and";
  std::string scope = "all";
  std::string mode = "prosodic";
  std::string anchor = "midpoint";
  std::string thresholds = "0:1:0.05";
  std::string out;
  std::string peaks_dir;
  std::string config;
  double threshold = 0.5;
  double nms_radius = 0.25;
  double align_radius = 0.1;
  double frame_period = 0.02;
  double duration = 0;
  double chunk_len = 30;
  double step = 15;

  // --threshold of the subcommand being run; unset means the mode default.
  const CLI::Option *threshold_opt = nullptr;
};

// Registers every subcommand on `app`, binding flags into `opts`.
void AddCommands(CLI::App &app, Options &opts);

// Fills options the command line left unset from the JSON object in
// --config, if one was given. Flags win.
void ApplyConfigFile(CLI::App &sub, Options &opts);

// Runs the subcommand that was parsed. Throws phrasebreak::Error on bad
// input.
void RunCommand(const CLI::App &sub, Options &opts);

}  // namespace phrasebreak::cli
