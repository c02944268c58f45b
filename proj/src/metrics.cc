// src/metrics.cc

#include "phrasebreak/metrics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "phrasebreak/error.h"

namespace phrasebreak {

namespace {

Metric Ratio(int64_t num, int64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::set<WordRef> Refs(const std::vector<WordPrediction> &preds, const Recording &rec) {
  std::set<WordRef> out;
  for (const auto &p : preds) out.insert(Resolve(p, rec));
  return out;
}

void CheckInScope(const std::set<WordRef> &predicted, const Recording &rec,
                  Scope scope) {
  for (WordRef r : predicted) {
    if (r.sentence < 0 || r.sentence >= static_cast<int32_t>(rec.sentences.size()) ||
        r.word < 0 ||
        r.word >= static_cast<int32_t>(rec.sentences[r.sentence].words.size())) {
      throw ValidationError("prediction refers to a word that recording '" + rec.id +
                            "' does not have");
    }
    if (!rec.InScope(r, scope)) {
      throw ValidationError("prediction on sentence-final word of sentence '" +
                            rec.sentences[r.sentence].id +
                            "' is outside the within-sentence scope");
    }
  }
}

}  // namespace

DetectionMetrics ComputeMetrics(const DetectionCounts &c) {
  DetectionMetrics m;
  m.precision = Ratio(c.tp, c.tp + c.fp);
  m.recall = Ratio(c.tp, c.tp + c.fn);
  m.accuracy = Ratio(c.tp + c.tn, c.total());
  if (m.precision && m.recall) {
    const double p = *m.precision, r = *m.recall;
    // P = R = 0 only when tp = 0 with fp, fn > 0: F1 = 2tp / (2tp + fp + fn) = 0.
    m.f1 = (p + r > 0) ? 2.0 * p * r / (p + r) : 0.0;
  }
  return m;
}

DetectionCounts CountWordLevel(const std::set<WordRef> &predicted,
                               const Recording &rec, Scope scope) {
  CheckInScope(predicted, rec, scope);
  DetectionCounts c;
  for (WordRef r : rec.AllWords()) {
    if (!rec.InScope(r, scope)) continue;
    const bool ref = rec.word(r).boundary_after == BoundaryLabel::kProsodic;
    const bool hyp = predicted.count(r) > 0;
    if (ref && hyp) {
      ++c.tp;
    } else if (hyp) {
      ++c.fp;
    } else if (ref) {
      ++c.fn;
    } else {
      ++c.tn;
    }
  }
  return c;
}

DetectionCounts CountWordLevel(const std::vector<WordPrediction> &preds,
                               const Recording &rec, Scope scope) {
  return CountWordLevel(Refs(preds, rec), rec, scope);
}

Metric FpBreakdown::intermediate_fraction() const {
  return Ratio(fp_intermediate, fp());
}

FpBreakdown FalsePositiveBreakdown(const std::set<WordRef> &predicted,
                                   const Recording &rec, Scope scope) {
  CheckInScope(predicted, rec, scope);
  FpBreakdown b;
  for (WordRef r : predicted) {
    switch (rec.word(r).boundary_after) {
      case BoundaryLabel::kProsodic:
        break;
      case BoundaryLabel::kIntermediate:
        ++b.fp_intermediate;
        break;
      case BoundaryLabel::kNone:
        ++b.fp_nobreak;
        break;
    }
  }
  return b;
}

FpBreakdown FalsePositiveBreakdown(const std::vector<WordPrediction> &preds,
                                   const Recording &rec, Scope scope) {
  return FalsePositiveBreakdown(Refs(preds, rec), rec, scope);
}

void Validate(const Segmentation &seg) {
  for (size_t i = 0; i < seg.size(); ++i) {
    if (!(seg[i].start_s < seg[i].end_s)) {
      throw ValidationError("segment " + std::to_string(i) + " is empty or reversed");
    }
    if (i > 0 && seg[i].start_s < seg[i - 1].end_s) {
      throw ValidationError("segment " + std::to_string(i) + " overlaps its predecessor");
    }
  }
}

Segmentation SegmentationFromBoundaries(const std::vector<double> &boundaries,
                                        double duration_s) {
  if (!(duration_s > 0)) throw ValidationError("segmentation span must be positive");
  Segmentation seg;
  double start = 0;
  for (double b : boundaries) {
    if (!(b > 0 && b < duration_s)) {
      throw ValidationError("boundary " + std::to_string(b) + " s outside (0, " +
                            std::to_string(duration_s) + ")");
    }
    if (!(b > start)) throw ValidationError("boundaries must be strictly increasing");
    seg.push_back({start, b});
    start = b;
  }
  seg.push_back({start, duration_s});
  return seg;
}

OverlapSum DirectedOverlap(const Segmentation &a, const Segmentation &b) {
  OverlapSum sum;
  size_t j = 0;
  for (const auto &s : a) {
    sum.total += s.length();
    while (j < b.size() && b[j].end_s <= s.start_s) ++j;
    double best = 0;
    for (size_t k = j; k < b.size() && b[k].start_s < s.end_s; ++k) {
      const double overlap = std::min(s.end_s, b[k].end_s) - std::max(s.start_s, b[k].start_s);
      best = std::max(best, overlap);
    }
    sum.matched += best;
  }
  return sum;
}

PurityCoverage ComputePurityCoverage(const Segmentation &sys, const Segmentation &ref) {
  Validate(sys);
  Validate(ref);
  return {DirectedOverlap(sys, ref).ratio(), DirectedOverlap(ref, sys).ratio()};
}

}  // namespace phrasebreak
