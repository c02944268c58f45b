// phrasebreak/frames.h
//
// Time <-> frame index conversion shared by labels, scores and detection.
// Frame i covers [i*p, (i+1)*p) and is timestamped at its center.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace phrasebreak {

inline constexpr double kDefaultFramePeriod = 0.02;

// ceil(x) that treats values within a relative 1e-9 of an integer as that
// integer, so 60 / 0.02 gives 3000 frames and not 3001.
inline int64_t RobustCeil(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) {
    return static_cast<int64_t>(r);
  }
  return static_cast<int64_t>(std::ceil(x));
}

inline int64_t RobustFloor(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) {
    return static_cast<int64_t>(r);
  }
  return static_cast<int64_t>(std::floor(x));
}

// Number of frames needed to cover `duration_s`; a trailing partial frame
// counts as a full one.
inline int64_t FrameCount(double duration_s, double frame_period_s) {
  if (duration_s <= 0) return 0;
  return RobustCeil(duration_s / frame_period_s);
}

inline double FrameCenter(int64_t i, double frame_period_s) {
  return (static_cast<double>(i) + 0.5) * frame_period_s;
}

// Largest k with k*p <= radius_s, i.e. how many neighbouring frames on each
// side lie within the radius (center to center).
inline int64_t RadiusInFrames(double radius_s, double frame_period_s) {
  return RobustFloor(radius_s / frame_period_s);
}

}  // namespace phrasebreak
