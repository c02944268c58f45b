// src/sweep.cc

#include "phrasebreak/sweep.h"

#include <cmath>

#include "phrasebreak/error.h"
#include "phrasebreak/frames.h"
#include "phrasebreak/report.h"
#include "phrasebreak/text_io.h"

namespace phrasebreak {

ScoreEvaluation &ScoreEvaluation::operator+=(const ScoreEvaluation &o) {
  counts += o.counts;
  fp += o.fp;
  purity += o.purity;
  coverage += o.coverage;
  peaks += o.peaks;
  aligned += o.aligned;
  dropped += o.dropped;
  merged += o.merged;
  return *this;
}

namespace {

std::vector<double> Interior(std::vector<double> times, double duration_s) {
  std::vector<double> out;
  for (double t : times) {
    if (t > 0 && t < duration_s && (out.empty() || t > out.back())) out.push_back(t);
  }
  return out;
}

}  // namespace

Segmentation ReferenceSegmentation(const Recording &rec) {
  std::vector<double> times;
  for (const auto &b : ReferenceBoundaries(rec, BoundaryKind::kProsodicOnly, Scope::kAll)) {
    times.push_back(b.time_s);
  }
  return SegmentationFromBoundaries(Interior(std::move(times), rec.duration_s),
                                    rec.duration_s);
}

Segmentation SystemSegmentation(const std::vector<BoundaryPrediction> &peaks,
                                double duration_s) {
  std::vector<double> times;
  for (const auto &p : peaks) times.push_back(p.time_s);
  return SegmentationFromBoundaries(Interior(std::move(times), duration_s), duration_s);
}

ScoreEvaluation EvaluateRecording(const FrameScores &scores, const Recording &rec,
                                  const DetectorConfig &cfg, Scope scope) {
  const Detection d = RunDetection(scores, rec, cfg, scope);
  ScoreEvaluation e;
  e.counts = CountWordLevel(d.in_scope, rec, scope);
  e.fp = FalsePositiveBreakdown(d.in_scope, rec, scope);
  const auto sys = SystemSegmentation(d.peaks, rec.duration_s);
  const auto ref = ReferenceSegmentation(rec);
  e.purity = DirectedOverlap(sys, ref);
  e.coverage = DirectedOverlap(ref, sys);
  e.peaks = d.peaks.size();
  e.aligned = d.alignment.aligned.size();
  e.dropped = d.alignment.dropped.size();
  e.merged = d.alignment.merged;
  if (e.aligned + e.dropped + e.merged != e.peaks) {
    throw InvariantError("alignment lost predictions in recording '" + rec.id + "'");
  }
  return e;
}

ScoreEvaluation EvaluateScores(std::span<const ScoredRecording> items,
                               const DetectorConfig &cfg, Scope scope) {
  ScoreEvaluation total;
  for (const auto &item : items) {
    total += EvaluateRecording(item.scores, *item.recording, cfg, scope);
  }
  return total;
}

std::vector<SweepRow> Sweep(std::span<const ScoredRecording> items,
                            const std::vector<double> &thresholds,
                            const DetectorConfig &cfg, Scope scope) {
  for (size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] >= 0 && thresholds[i] <= 1)) {
      throw ConfigError("sweep threshold outside [0, 1]");
    }
    if (i > 0 && thresholds[i] < thresholds[i - 1]) {
      throw ConfigError("sweep thresholds must be sorted");
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(thresholds.size());
  for (double th : thresholds) {
    DetectorConfig c = cfg;
    c.threshold = th;
    SweepRow row;
    row.threshold = th;
    row.eval = EvaluateScores(items, c, scope);
    row.metrics = ComputeMetrics(row.eval.counts);
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> ThresholdRange(double lo, double hi, double step) {
  if (!(step > 0)) throw ConfigError("threshold step must be > 0");
  if (hi < lo) throw ConfigError("threshold range is empty");
  std::vector<double> out;
  const int64_t n = RobustFloor((hi - lo) / step);
  for (int64_t i = 0; i <= n; ++i) {
    // Round to 1e-9 so 0.1 + 0.05*k prints and compares as expected.
    out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e9) / 1e9);
  }
  return out;
}

std::string FormatCurveTable(const std::vector<SweepRow> &rows) {
  std::string out =
      "threshold\tprecision\trecall\taccuracy\tf1\tpurity\tcoverage\t"
      "fp_intermediate_fraction\ttp\tfp\tfn\ttn\tpeaks\n";
  for (const auto &r : rows) {
    const auto &c = r.eval.counts;
    out += FormatFixed(r.threshold, 4) + '\t' + FormatFraction(r.metrics.precision) + '\t' +
           FormatFraction(r.metrics.recall) + '\t' + FormatFraction(r.metrics.accuracy) +
           '\t' + FormatFraction(r.metrics.f1) + '\t' +
           FormatFraction(r.eval.purity.ratio()) + '\t' +
           FormatFraction(r.eval.coverage.ratio()) + '\t' +
           FormatFraction(r.eval.fp.intermediate_fraction()) + '\t' + std::to_string(c.tp) +
           '\t' + std::to_string(c.fp) + '\t' + std::to_string(c.fn) + '\t' +
           std::to_string(c.tn) + '\t' + std::to_string(r.eval.peaks) + '\n';
  }
  return out;
}

}  // namespace phrasebreak
