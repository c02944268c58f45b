// src/fuzzy_labels.cc

#include "phrasebreak/fuzzy_labels.h"

#include <algorithm>
#include <cmath>

#include "phrasebreak/error.h"

namespace phrasebreak {

void Validate(const LabelConfig &cfg) {
  if (!(cfg.frame_period_s > 0)) throw ConfigError("frame_period_s must be > 0");
  if (!(cfg.ramp_halfwidth_s > 0)) throw ConfigError("ramp_halfwidth_s must be > 0");
  if (!(cfg.intermediate_peak > 0 && cfg.intermediate_peak <= cfg.prosodic_peak &&
        cfg.prosodic_peak <= 1.0)) {
    throw ConfigError("label peaks must satisfy 0 < intermediate <= prosodic <= 1");
  }
}

FrameScores LabelCurve::ToFrameScores() const {
  FrameScores s;
  s.frame_period_s = frame_period_s;
  s.values = values;
  s.source = "labels";
  return s;
}

FuzzyLabeler::FuzzyLabeler(const Recording &rec, const LabelConfig &cfg)
    : cfg_(cfg), duration_s_(rec.duration_s) {
  Validate(cfg_);
  for (const auto &b : ReferenceBoundaries(rec, cfg_.mode, Scope::kAll)) {
    if (b.time_s < 0 || b.time_s > rec.duration_s) {
      throw ValidationError("boundary at " + std::to_string(b.time_s) +
                            " s lies outside recording '" + rec.id + "'");
    }
    const double peak = b.label == BoundaryLabel::kProsodic ? cfg_.prosodic_peak
                                                            : cfg_.intermediate_peak;
    anchors_.push_back({b.time_s, peak});
  }
}

double FuzzyLabeler::ValueAt(double t) const {
  const double hw = cfg_.ramp_halfwidth_s;
  auto it = std::lower_bound(anchors_.begin(), anchors_.end(), t - hw,
                             [](const Anchor &a, double x) { return a.time_s < x; });
  double v = 0;
  for (; it != anchors_.end() && it->time_s <= t + hw; ++it) {
    v = std::max(v, RampValue(it->peak, it->time_s, hw, t));
  }
  return v;
}

LabelCurve FuzzyLabeler::Curve() const {
  LabelCurve curve;
  curve.frame_period_s = cfg_.frame_period_s;
  const int64_t n = FrameCount(duration_s_, cfg_.frame_period_s);
  curve.values.resize(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) {
    curve.values[static_cast<size_t>(i)] = ValueAt(FrameCenter(i, cfg_.frame_period_s));
  }
  return curve;
}

LabelCurve MakeLabelCurve(const Recording &rec, const LabelConfig &cfg) {
  return FuzzyLabeler(rec, cfg).Curve();
}

}  // namespace phrasebreak
