// src/chunking.cc

#include "phrasebreak/chunking.h"

#include <cmath>
#include <string>

#include "phrasebreak/error.h"

namespace phrasebreak {

ChunkPlan PlanChunks(double duration_s, double chunk_len_s, double step_s) {
  if (!(duration_s > 0) || !std::isfinite(duration_s)) {
    throw ConfigError("chunk plan: duration must be positive");
  }
  if (!(chunk_len_s > 0) || !(step_s > 0)) {
    throw ConfigError("chunk plan: chunk length and step must be positive");
  }
  if (step_s > chunk_len_s) {
    throw ConfigError("chunk plan: step exceeds chunk length, windows would leave gaps");
  }

  ChunkPlan plan;
  plan.duration_s = duration_s;
  plan.chunk_len_s = chunk_len_s;
  plan.step_s = step_s;

  const double eps = 1e-9 * std::max(1.0, duration_s);
  for (int64_t k = 0;; ++k) {
    ChunkWindow w;
    w.start_s = static_cast<double>(k) * step_s;
    w.end_s = w.start_s + chunk_len_s;
    const bool last = w.end_s >= duration_s - eps;
    if (last) w.end_s = duration_s;
    plan.windows.push_back(w);
    if (last) break;
  }

  auto &ws = plan.windows;
  ws.front().keep_start_s = 0;
  for (size_t k = 0; k + 1 < ws.size(); ++k) {
    // Midpoint of the overlap between neighbours.
    const double cut = 0.5 * (ws[k + 1].start_s + ws[k].end_s);
    ws[k].keep_end_s = cut;
    ws[k + 1].keep_start_s = cut;
  }
  ws.back().keep_end_s = duration_s;
  return plan;
}

WindowFrames FramesOf(const ChunkPlan &plan, size_t window, double frame_period_s) {
  const ChunkWindow &w = plan.windows.at(window);
  const double pos = w.start_s / frame_period_s;
  const double first = std::round(pos);
  if (std::abs(pos - first) > 1e-6) {
    throw StitchError("window " + std::to_string(window) +
                      " does not start on a frame boundary");
  }
  WindowFrames f;
  f.first = static_cast<int64_t>(first);
  f.count = FrameCount(plan.duration_s, frame_period_s) - f.first;
  if (window + 1 < plan.windows.size()) {
    f.count = std::min(f.count, FrameCount(w.end_s - w.start_s, frame_period_s));
  }
  return f;
}

FrameScores Stitch(std::span<const FrameScores> chunks, const ChunkPlan &plan) {
  if (chunks.size() != plan.windows.size()) {
    throw StitchError("got " + std::to_string(chunks.size()) + " chunks for " +
                      std::to_string(plan.windows.size()) + " windows");
  }
  const double period = chunks.front().frame_period_s;
  std::vector<WindowFrames> frames(chunks.size());
  for (size_t k = 0; k < chunks.size(); ++k) {
    if (std::abs(chunks[k].frame_period_s - period) > 1e-12) {
      throw StitchError("chunk " + std::to_string(k) + " has a different frame period");
    }
    frames[k] = FramesOf(plan, k, period);
    if (static_cast<int64_t>(chunks[k].size()) != frames[k].count) {
      throw StitchError("chunk " + std::to_string(k) + " has " +
                        std::to_string(chunks[k].size()) + " frames, window needs " +
                        std::to_string(frames[k].count));
    }
  }

  FrameScores out;
  out.frame_period_s = period;
  out.source = "stitched-" + std::to_string(chunks.size());
  const int64_t total = FrameCount(plan.duration_s, period);
  out.values.resize(static_cast<size_t>(total));

  size_t owner = 0;
  for (int64_t i = 0; i < total; ++i) {
    const double t = FrameCenter(i, period);
    while (owner + 1 < plan.windows.size() && plan.windows[owner + 1].keep_start_s <= t) {
      ++owner;
    }
    const int64_t local = i - frames[owner].first;
    if (local < 0 || local >= frames[owner].count) {
      throw StitchError("frame " + std::to_string(i) + " is outside chunk " +
                        std::to_string(owner));
    }
    out.values[static_cast<size_t>(i)] = chunks[owner].values[static_cast<size_t>(local)];
  }
  return out;
}

}  // namespace phrasebreak
