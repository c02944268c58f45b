// phrasebreak/baseline.h
//
// Pause-based acoustic scorer. A frame is silent when its RMS is within
// quantile_margin_db of the silence_energy_quantile level and at least
// min_dynamic_range_db below the loudest frame. Silence runs each run long enough to count as a pause
// emits a triangular bump whose height grows with the pause length. It
// lets the whole pipeline run without a trained model.

#pragma once

#include <vector>

#include "phrasebreak/frame_scores.h"
#include "phrasebreak/wav.h"

namespace phrasebreak {

// Where a pause bump is centred.
enum class PauseAnchor {
  kMidpoint,  // middle of the silence run
  kOnset,     // start of the silence run, i.e. the end of the preceding speech
};

struct BaselineParams {
  double frame_period_s = kDefaultFramePeriod;
  double silence_energy_quantile = 0.10;
  double min_pause_s = 0.08;
  double full_credit_pause_s = 0.4;
  double ramp_halfwidth_s = 0.2;
  double quantile_margin_db = 6.0;
  double min_dynamic_range_db = 20.0;
  PauseAnchor anchor = PauseAnchor::kMidpoint;
};

void Validate(const BaselineParams &params);

struct PauseRun {
  int64_t first_frame = 0;
  int64_t last_frame = 0;  // inclusive
  double start_s = 0;
  double end_s = 0;
  double anchor_s = 0;
  double peak = 0;

  double duration_s() const { return end_s - start_s; }
};

// RMS energy of each frame; the final partial frame uses the samples it has.
std::vector<double> FrameRms(const Audio &audio, double frame_period_s);

std::vector<bool> SilentFrames(const std::vector<double> &rms, const BaselineParams &params);

std::vector<PauseRun> DetectPauses(const Audio &audio, const BaselineParams &params);

FrameScores BaselineScore(const Audio &audio, const BaselineParams &params = {});

}  // namespace phrasebreak
