// src/detect.cc

#include "phrasebreak/detect.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "phrasebreak/error.h"
#include "phrasebreak/text_io.h"

namespace phrasebreak {

namespace {
// Time comparisons within this distance are treated as ties.
constexpr double kTimeEps = 1e-9;
}  // namespace

void Validate(const DetectorConfig &cfg) {
  if (!(cfg.threshold >= 0 && cfg.threshold <= 1)) {
    throw ConfigError("threshold must be in [0, 1]");
  }
  if (!(cfg.nms_radius_s > 0)) throw ConfigError("nms radius must be > 0");
  if (!(cfg.align_radius_s > 0)) throw ConfigError("align radius must be > 0");
}

double DefaultThreshold(BoundaryKind training_mode) {
  return training_mode == BoundaryKind::kProsodicOnly ? 0.5 : 0.75;
}

std::vector<BoundaryPrediction> DetectPeaks(const FrameScores &scores,
                                            const DetectorConfig &cfg) {
  Validate(cfg);
  const auto &v = scores.values;
  const size_t n = v.size();
  const auto w = static_cast<size_t>(RadiusInFrames(cfg.nms_radius_s, scores.frame_period_s));

  // left[i] = max(v[i-w .. i-1]), right[i] = max(v[i+1 .. i+w]); -inf if empty.
  const double none = -HUGE_VAL;
  std::vector<double> left(n, none), right(n, none);
  std::deque<size_t> dq;
  for (size_t i = 0; i < n; ++i) {
    while (!dq.empty() && dq.front() + w < i) dq.pop_front();
    if (!dq.empty()) left[i] = v[dq.front()];
    while (!dq.empty() && v[dq.back()] <= v[i]) dq.pop_back();
    dq.push_back(i);
  }
  dq.clear();
  for (size_t i = n; i-- > 0;) {
    while (!dq.empty() && dq.front() > i + w) dq.pop_front();
    if (!dq.empty()) right[i] = v[dq.front()];
    while (!dq.empty() && v[dq.back()] <= v[i]) dq.pop_back();
    dq.push_back(i);
  }

  std::vector<BoundaryPrediction> out;
  for (size_t i = 0; i < n; ++i) {
    if (v[i] >= cfg.threshold && left[i] < v[i] && right[i] <= v[i]) {
      out.push_back({scores.time_of(i), v[i], static_cast<int64_t>(i)});
    }
  }
  return out;
}

AlignResult AlignToWords(const std::vector<BoundaryPrediction> &preds,
                         const Recording &rec, const DetectorConfig &cfg) {
  Validate(cfg);
  const auto words = rec.AllWords();
  std::vector<double> ends;
  ends.reserve(words.size());
  for (WordRef r : words) ends.push_back(rec.word(r).end_s);

  AlignResult result;
  std::map<WordRef, size_t> hit;
  for (const auto &p : preds) {
    if (ends.empty()) {
      result.dropped.push_back(p);
      continue;
    }
    auto it = std::lower_bound(ends.begin(), ends.end(), p.time_s);
    size_t best = static_cast<size_t>(it - ends.begin());
    if (best == ends.size()) {
      best = ends.size() - 1;
    } else if (best > 0) {
      const double d_prev = p.time_s - ends[best - 1];
      const double d_next = ends[best] - p.time_s;
      // Equidistant: prefer the earlier word.
      if (d_prev <= d_next + kTimeEps) best = best - 1;
    }
    if (std::abs(ends[best] - p.time_s) > cfg.align_radius_s + kTimeEps) {
      result.dropped.push_back(p);
      continue;
    }
    const WordRef ref = words[best];
    auto [pos, inserted] = hit.emplace(ref, result.aligned.size());
    if (inserted) {
      result.aligned.push_back(MakeWordPrediction(rec, ref, p.peak_value));
    } else {
      ++result.merged;
      auto &kept = result.aligned[pos->second];
      kept.peak_value = std::max(kept.peak_value, p.peak_value);
    }
  }
  std::stable_sort(result.aligned.begin(), result.aligned.end(),
                   [](const WordPrediction &a, const WordPrediction &b) {
                     return a.time_s < b.time_s;
                   });
  return result;
}

WordRef Resolve(const WordPrediction &pred, const Recording &rec) {
  auto s = rec.FindSentence(pred.sentence_id);
  if (!s || pred.word_index < 0 ||
      pred.word_index >= static_cast<int32_t>(rec.sentences[*s].words.size())) {
    throw ValidationError("recording '" + rec.id + "' has no word " +
                          std::to_string(pred.word_index) + " in sentence '" +
                          pred.sentence_id + "'");
  }
  return {*s, pred.word_index};
}

WordPrediction MakeWordPrediction(const Recording &rec, WordRef ref, double peak_value) {
  return {rec.sentences[ref.sentence].id, ref.word, rec.word(ref).end_s, peak_value};
}

std::vector<WordPrediction> FilterScope(const std::vector<WordPrediction> &preds,
                                        const Recording &rec, Scope scope) {
  if (scope == Scope::kAll) return preds;
  std::vector<WordPrediction> out;
  for (const auto &p : preds) {
    if (!rec.IsSentenceFinal(Resolve(p, rec))) out.push_back(p);
  }
  return out;
}

Detection RunDetection(const FrameScores &scores, const Recording &rec,
                       const DetectorConfig &cfg, Scope scope) {
  Detection d;
  d.peaks = DetectPeaks(scores, cfg);
  d.alignment = AlignToWords(d.peaks, rec, cfg);
  d.in_scope = FilterScope(d.alignment.aligned, rec, scope);
  return d;
}

std::string FormatTimePredictions(const std::vector<BoundaryPrediction> &preds) {
  std::string out;
  for (const auto &p : preds) {
    out += FormatFixed(p.time_s, 6);
    out += '\t';
    out += FormatFixed(p.peak_value, 6);
    out += '\n';
  }
  return out;
}

std::vector<BoundaryPrediction> ParseTimePredictions(std::string_view text,
                                                     const std::string &source) {
  std::vector<BoundaryPrediction> out;
  int line_no = 0;
  for (auto line : Split(text, '\n')) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto fields = Split(Trim(line), '\t');
    if (fields.size() != 2) throw ParseError(source, line_no, "expected time_s<TAB>peak_value");
    auto t = ParseDouble(fields[0]);
    auto v = ParseDouble(fields[1]);
    if (!t || !v || !std::isfinite(*t) || !std::isfinite(*v)) {
      throw ParseError(source, line_no, "non-numeric field");
    }
    if (!out.empty() && *t < out.back().time_s) {
      throw ParseError(source, line_no, "predictions are not sorted by time");
    }
    out.push_back({*t, *v, -1});
  }
  return out;
}

std::string FormatWordPredictions(const std::string &recording_id,
                                  const std::vector<WordPrediction> &preds) {
  std::string out;
  for (const auto &p : preds) {
    out += recording_id;
    out += '\t';
    out += p.sentence_id;
    out += '\t';
    out += std::to_string(p.word_index);
    out += '\t';
    out += FormatFixed(p.peak_value, 6);
    out += '\n';
  }
  return out;
}

WordPredictionsByRecording ParseWordPredictions(std::string_view text,
                                                const std::string &source,
                                                const Corpus &corpus) {
  WordPredictionsByRecording out;
  std::set<std::pair<std::string, WordRef>> seen;
  int line_no = 0;
  for (auto line : Split(text, '\n')) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto fields = Split(Trim(line), '\t');
    if (fields.size() != 4) {
      throw ParseError(source, line_no,
                       "expected recording_id<TAB>sentence_id<TAB>word_index<TAB>peak_value");
    }
    auto index = ParseInt(fields[2]);
    auto value = ParseDouble(fields[3]);
    if (!index || !value || !std::isfinite(*value)) {
      throw ParseError(source, line_no, "non-numeric field");
    }
    const Recording *rec = corpus.Find(fields[0]);
    if (!rec) {
      throw ParseError(source, line_no, "unknown recording '" + std::string(fields[0]) + "'");
    }
    WordPrediction p{std::string(fields[1]), static_cast<int32_t>(*index), 0, *value};
    WordRef ref;
    try {
      ref = Resolve(p, *rec);
    } catch (const ValidationError &e) {
      throw ParseError(source, line_no, e.what());
    }
    p.time_s = rec->word(ref).end_s;
    if (!seen.emplace(rec->id, ref).second) {
      throw ParseError(source, line_no, "duplicate prediction for one word");
    }
    out[rec->id].push_back(std::move(p));
  }
  for (auto &[id, list] : out) {
    std::stable_sort(list.begin(), list.end(),
                     [](const auto &a, const auto &b) { return a.time_s < b.time_s; });
  }
  return out;
}

}  // namespace phrasebreak
