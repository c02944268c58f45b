// phrasebreak/sweep.h
//
// Corpus-level evaluation of score curves: detect -> align -> filter ->
// count per recording, with counts and overlap sums pooled across
// recordings; and threshold sweeps that rerun that pipeline per threshold.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "phrasebreak/corpus.h"
#include "phrasebreak/detect.h"
#include "phrasebreak/frame_scores.h"
#include "phrasebreak/metrics.h"

namespace phrasebreak {

struct ScoredRecording {
  const Recording *recording = nullptr;
  FrameScores scores;
};

struct ScoreEvaluation {
  DetectionCounts counts;
  FpBreakdown fp;
  OverlapSum purity;    // system segments against reference segments
  OverlapSum coverage;  // reference segments against system segments
  size_t peaks = 0;
  size_t aligned = 0;
  size_t dropped = 0;
  size_t merged = 0;

  ScoreEvaluation &operator+=(const ScoreEvaluation &o);
};

// Reference segmentation: prosodic boundaries including sentence ends.
Segmentation ReferenceSegmentation(const Recording &rec);
// System segmentation: raw (unaligned) peak times.
Segmentation SystemSegmentation(const std::vector<BoundaryPrediction> &peaks,
                                double duration_s);

ScoreEvaluation EvaluateRecording(const FrameScores &scores, const Recording &rec,
                                  const DetectorConfig &cfg, Scope scope);
ScoreEvaluation EvaluateScores(std::span<const ScoredRecording> items,
                               const DetectorConfig &cfg, Scope scope);

struct SweepRow {
  double threshold = 0;
  ScoreEvaluation eval;
  DetectionMetrics metrics;
};

// `thresholds` must be sorted ascending and within [0, 1].
std::vector<SweepRow> Sweep(std::span<const ScoredRecording> items,
                            const std::vector<double> &thresholds,
                            const DetectorConfig &cfg, Scope scope);

// Inclusive range lo, lo+step, ..., hi; hi is hit exactly when it lies on
// the grid.
std::vector<double> ThresholdRange(double lo, double hi, double step);

// Tab-separated: threshold precision recall accuracy f1 purity coverage
// fp_intermediate_fraction, then the raw counts.
std::string FormatCurveTable(const std::vector<SweepRow> &rows);

}  // namespace phrasebreak
