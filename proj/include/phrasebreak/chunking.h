// phrasebreak/chunking.h
//
// Long recordings are scored in overlapping fixed-length windows. Each
// window owns the middle part of its span (its keep interval); the keep
// intervals tile the recording, so stitching copies every frame from
// exactly one window.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phrasebreak/frame_scores.h"

namespace phrasebreak {

struct ChunkWindow {
  double start_s = 0;
  double end_s = 0;
  double keep_start_s = 0;
  double keep_end_s = 0;
};

struct ChunkPlan {
  double duration_s = 0;
  double chunk_len_s = 30.0;
  double step_s = 15.0;
  std::vector<ChunkWindow> windows;
};

// First global frame index and frame count of one window.
struct WindowFrames {
  int64_t first = 0;
  int64_t count = 0;
};

ChunkPlan PlanChunks(double duration_s, double chunk_len_s = 30.0,
                     double step_s = 15.0);

// Throws StitchError when window starts are off the frame grid.
WindowFrames FramesOf(const ChunkPlan &plan, size_t window, double frame_period_s);

// `chunks[i]` holds the scores computed on `plan.windows[i]`.
FrameScores Stitch(std::span<const FrameScores> chunks, const ChunkPlan &plan);

}  // namespace phrasebreak
