// phrasebreak/fuzzy_labels.h
//
// Per-frame regression targets: a triangular ramp around every reference
// boundary, peaking at the boundary strength and falling linearly to zero
// at +-ramp_halfwidth_s. Overlapping ramps combine by pointwise maximum.

#pragma once

#include <cmath>
#include <vector>

#include "phrasebreak/corpus.h"
#include "phrasebreak/frame_scores.h"

namespace phrasebreak {

struct LabelConfig {
  double frame_period_s = kDefaultFramePeriod;
  double ramp_halfwidth_s = 0.2;
  double prosodic_peak = 1.0;
  double intermediate_peak = 0.5;
  BoundaryKind mode = BoundaryKind::kProsodicOnly;
};

void Validate(const LabelConfig &cfg);

struct LabelCurve {
  double frame_period_s = kDefaultFramePeriod;
  std::vector<double> values;

  FrameScores ToFrameScores() const;
};

// Height of a single ramp of peak `peak` centred at `center_s`, at time t.
inline double RampValue(double peak, double center_s, double halfwidth_s, double t) {
  const double v = peak * (1.0 - std::abs(t - center_s) / halfwidth_s);
  return v > 0 ? v : 0.0;
}

// The continuous labeling function of one recording.
class FuzzyLabeler {
 public:
  FuzzyLabeler(const Recording &rec, const LabelConfig &cfg);

  double ValueAt(double t) const;
  // Samples ValueAt at every frame center.
  LabelCurve Curve() const;

 private:
  struct Anchor {
    double time_s;
    double peak;
  };
  LabelConfig cfg_;
  double duration_s_;
  std::vector<Anchor> anchors_;  // sorted by time
};

LabelCurve MakeLabelCurve(const Recording &rec, const LabelConfig &cfg);

}  // namespace phrasebreak
