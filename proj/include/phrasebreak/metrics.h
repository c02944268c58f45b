// phrasebreak/metrics.h
//
// Word-level boundary classification (precision, recall, accuracy, F1) and
// frame-level segmentation purity/coverage.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "phrasebreak/corpus.h"
#include "phrasebreak/detect.h"

namespace phrasebreak {

struct DetectionCounts {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  int64_t tn = 0;

  int64_t total() const { return tp + fp + fn + tn; }
  DetectionCounts &operator+=(const DetectionCounts &o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  bool operator==(const DetectionCounts &) const = default;
};

inline DetectionCounts operator+(DetectionCounts a, const DetectionCounts &b) {
  return a += b;
}

// A metric is std::nullopt when its denominator is zero.
using Metric = std::optional<double>;

struct DetectionMetrics {
  Metric precision;
  Metric recall;
  Metric accuracy;
  Metric f1;
};

DetectionMetrics ComputeMetrics(const DetectionCounts &c);

// Candidates are the word ends in `scope`; references are prosodic
// boundaries only (intermediate boundaries count as negatives). Throws
// ValidationError for a prediction outside the scope.
DetectionCounts CountWordLevel(const std::set<WordRef> &predicted,
                               const Recording &rec, Scope scope);
DetectionCounts CountWordLevel(const std::vector<WordPrediction> &preds,
                               const Recording &rec, Scope scope);

struct FpBreakdown {
  int64_t fp_intermediate = 0;
  int64_t fp_nobreak = 0;

  int64_t fp() const { return fp_intermediate + fp_nobreak; }
  FpBreakdown &operator+=(const FpBreakdown &o) {
    fp_intermediate += o.fp_intermediate;
    fp_nobreak += o.fp_nobreak;
    return *this;
  }
  // Share of false positives sitting on intermediate boundaries.
  Metric intermediate_fraction() const;
};

FpBreakdown FalsePositiveBreakdown(const std::set<WordRef> &predicted,
                                   const Recording &rec, Scope scope);
FpBreakdown FalsePositiveBreakdown(const std::vector<WordPrediction> &preds,
                                   const Recording &rec, Scope scope);

struct Segment {
  double start_s = 0;
  double end_s = 0;

  double length() const { return end_s - start_s; }
  bool operator==(const Segment &) const = default;
};

using Segmentation = std::vector<Segment>;

// Throws ValidationError if segments overlap, are empty or out of order.
void Validate(const Segmentation &seg);

// `boundaries` strictly increasing and strictly inside (0, duration_s).
Segmentation SegmentationFromBoundaries(const std::vector<double> &boundaries,
                                        double duration_s);

// Sum over segments of `a` of the longest overlap with any segment of `b`,
// and the total length of `a`. purity(S, R) = Directed(S, R);
// coverage(S, R) = Directed(R, S).
struct OverlapSum {
  double matched = 0;
  double total = 0;

  OverlapSum &operator+=(const OverlapSum &o) {
    matched += o.matched;
    total += o.total;
    return *this;
  }
  Metric ratio() const {
    if (!(total > 0)) return std::nullopt;
    return matched / total;
  }
};

OverlapSum DirectedOverlap(const Segmentation &a, const Segmentation &b);

struct PurityCoverage {
  Metric purity;
  Metric coverage;
};

PurityCoverage ComputePurityCoverage(const Segmentation &sys, const Segmentation &ref);

}  // namespace phrasebreak
