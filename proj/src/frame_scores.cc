// src/frame_scores.cc

#include "phrasebreak/frame_scores.h"

#include <algorithm>
#include <cmath>

#include "phrasebreak/error.h"
#include "phrasebreak/text_io.h"

namespace phrasebreak {

namespace {
constexpr std::string_view kHeader = "#frame_period_s";
constexpr int kDecimals = 6;
}  // namespace

FrameScores ClipToUnit(FrameScores scores) {
  for (double &v : scores.values) v = std::clamp(v, 0.0, 1.0);
  return scores;
}

FrameScores AverageSeeds(std::span<const FrameScores> runs) {
  if (runs.empty()) throw ConfigError("average of zero runs");
  const size_t n = runs[0].size();
  const double period = runs[0].frame_period_s;
  for (size_t k = 1; k < runs.size(); ++k) {
    if (runs[k].size() != n) {
      throw ValidationError("run " + std::to_string(k) + " has " +
                            std::to_string(runs[k].size()) + " frames, expected " +
                            std::to_string(n));
    }
    if (std::abs(runs[k].frame_period_s - period) > 1e-12) {
      throw PeriodMismatchError("run " + std::to_string(k) +
                                " has a different frame period");
    }
  }

  FrameScores out;
  out.frame_period_s = period;
  out.source = "average-of-" + std::to_string(runs.size());
  out.values.resize(n);
  std::vector<double> column(runs.size());
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < runs.size(); ++k) column[k] = runs[k].values[i];
    // Summing in sorted order makes the result independent of run order.
    std::sort(column.begin(), column.end());
    double sum = 0;
    for (double v : column) sum += v;
    const double mean = sum / static_cast<double>(column.size());
    out.values[i] = std::clamp(mean, column.front(), column.back());
  }
  return out;
}

std::string FormatScores(const FrameScores &scores) {
  std::string out;
  out.reserve(16 * (scores.size() + 1));
  out += kHeader;
  out += ' ';
  out += FormatFixed(scores.frame_period_s, kDecimals);
  out += '\n';
  for (double v : scores.values) {
    out += FormatFixed(v, kDecimals);
    out += '\n';
  }
  return out;
}

FrameScores ParseScores(std::string_view text, const std::string &source,
                        std::optional<double> expected_period_s) {
  FrameScores scores;
  scores.source = source;
  auto lines = Split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(source, 1, "missing #frame_period_s header");

  auto header = SplitWhitespace(Trim(lines[0]));
  if (header.size() != 2 || header[0] != kHeader) {
    throw ParseError(source, 1, "missing #frame_period_s header");
  }
  auto period = ParseDouble(header[1]);
  if (!period || !(*period > 0) || !std::isfinite(*period)) {
    throw ParseError(source, 1, "invalid frame period '" + std::string(header[1]) + "'");
  }
  if (expected_period_s && std::abs(*period - *expected_period_s) > 1e-9) {
    throw PeriodMismatchError(source + ": frame period " + std::string(header[1]) +
                              " does not match expected " +
                              FormatFixed(*expected_period_s, kDecimals));
  }
  scores.frame_period_s = *period;

  scores.values.reserve(lines.size() - 1);
  for (size_t i = 1; i < lines.size(); ++i) {
    auto v = ParseDouble(lines[i]);
    if (!v) {
      throw ParseError(source, static_cast<int>(i + 1),
                       "non-numeric score '" + std::string(Trim(lines[i])) + "'");
    }
    if (!std::isfinite(*v)) {
      throw ParseError(source, static_cast<int>(i + 1), "non-finite score");
    }
    scores.values.push_back(*v);
  }
  return scores;
}

FrameScores ReadScores(const std::filesystem::path &path,
                       std::optional<double> expected_period_s) {
  return ParseScores(ReadFile(path), path.string(), expected_period_s);
}

void WriteScores(const FrameScores &scores, const std::filesystem::path &path) {
  WriteFileAtomic(path, FormatScores(scores));
}

}  // namespace phrasebreak
