// tools/phrasebreak_cli.cc
//
// Usage: phrasebreak <command> [options]
//
//   labels   fuzzy label curves for every recording of a corpus
//   score    baseline scores from audio, chunk stitching, seed averaging
//   detect   score curves -> word-level boundary predictions
//   eval     word-level metrics (and purity/coverage for score input)
//   curve    threshold sweep
//   combine  AND/OR of two word-level prediction sets
//   loo      per-speaker report plus an "all" row
//
// Exit status: 0 on success, 1 for invalid input or configuration, 2 for an
// internal error.

#include <exception>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "commands.h"
#include "phrasebreak/error.h"

int main(int argc, char **argv) {
  CLI::App app{"Prosodic boundary detection and evaluation"};
  app.require_subcommand(1);
  app.fallthrough(false);
  phrasebreak::cli::Options opts;
  phrasebreak::cli::AddCommands(app, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    CLI::App *sub = app.get_subcommands().front();
    phrasebreak::cli::ApplyConfigFile(*sub, opts);
    phrasebreak::cli::RunCommand(*sub, opts);
  } catch (const phrasebreak::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const phrasebreak::InvariantError &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
