// phrasebreak/frame_scores.h
//
// Per-frame boundary scores and the plain-text score file format:
//
//   #frame_period_s 0.020000
//   0.000000
//   0.134000
//   ...

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phrasebreak/frames.h"

namespace phrasebreak {

struct FrameScores {
  double frame_period_s = kDefaultFramePeriod;
  std::vector<double> values;
  std::string source;

  size_t size() const { return values.size(); }
  double time_of(size_t i) const {
    return FrameCenter(static_cast<int64_t>(i), frame_period_s);
  }
  // Length of the signal the frames cover.
  double span_s() const { return static_cast<double>(values.size()) * frame_period_s; }
};

// Clips every value into [0, 1].
FrameScores ClipToUnit(FrameScores scores);

// Pointwise mean of runs from identically configured models.
FrameScores AverageSeeds(std::span<const FrameScores> runs);

std::string FormatScores(const FrameScores &scores);
// Rejects a missing or malformed header, non-numeric or non-finite lines.
// When `expected_period_s` is given a different header period raises
// PeriodMismatchError.
FrameScores ParseScores(std::string_view text, const std::string &source,
                        std::optional<double> expected_period_s = std::nullopt);

FrameScores ReadScores(const std::filesystem::path &path,
                       std::optional<double> expected_period_s = std::nullopt);
void WriteScores(const FrameScores &scores, const std::filesystem::path &path);

}  // namespace phrasebreak
