// phrasebreak/detect.h
//
// Score curve -> boundary decisions. A frame is a predicted boundary when
// its score reaches the threshold and no frame within nms_radius_s scores
// strictly higher; among equal scores within the radius the earliest frame
// wins. Predictions are then snapped to the nearest reference word end.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "phrasebreak/corpus.h"
#include "phrasebreak/frame_scores.h"

namespace phrasebreak {

struct DetectorConfig {
  double threshold = 0.5;
  double nms_radius_s = 0.25;
  double align_radius_s = 0.1;
};

void Validate(const DetectorConfig &cfg);

// 0.5 for models trained on prosodic boundaries only; 0.75 (midway between
// the prosodic and intermediate label heights) otherwise.
double DefaultThreshold(BoundaryKind training_mode);

struct BoundaryPrediction {
  double time_s = 0;
  double peak_value = 0;
  int64_t frame = 0;

  bool operator==(const BoundaryPrediction &) const = default;
};

struct WordPrediction {
  std::string sentence_id;
  int32_t word_index = 0;
  double time_s = 0;  // end of the word
  double peak_value = 0;

  bool operator==(const WordPrediction &) const = default;
};

std::vector<BoundaryPrediction> DetectPeaks(const FrameScores &scores,
                                            const DetectorConfig &cfg);

struct AlignResult {
  std::vector<WordPrediction> aligned;     // time order, one per word end
  std::vector<BoundaryPrediction> dropped; // no word end within the radius
  size_t merged = 0;                       // collapsed onto an already-hit word end
};

// `preds` must be sorted by time.
AlignResult AlignToWords(const std::vector<BoundaryPrediction> &preds,
                         const Recording &rec, const DetectorConfig &cfg);

// kWithinSentence removes predictions on sentence-final words.
std::vector<WordPrediction> FilterScope(const std::vector<WordPrediction> &preds,
                                        const Recording &rec, Scope scope);

// Resolves a prediction to its word; throws ValidationError if it names a
// word the recording does not have.
WordRef Resolve(const WordPrediction &pred, const Recording &rec);

WordPrediction MakeWordPrediction(const Recording &rec, WordRef ref, double peak_value);

// detect -> align -> filter for one recording.
struct Detection {
  std::vector<BoundaryPrediction> peaks;
  AlignResult alignment;
  std::vector<WordPrediction> in_scope;
};
Detection RunDetection(const FrameScores &scores, const Recording &rec,
                       const DetectorConfig &cfg, Scope scope);

// Time-domain file: "time_s<TAB>peak_value" per line.
std::string FormatTimePredictions(const std::vector<BoundaryPrediction> &preds);
std::vector<BoundaryPrediction> ParseTimePredictions(std::string_view text,
                                                     const std::string &source);

// Word-domain file: "recording_id<TAB>sentence_id<TAB>word_index<TAB>peak_value".
using WordPredictionsByRecording = std::map<std::string, std::vector<WordPrediction>>;

std::string FormatWordPredictions(const std::string &recording_id,
                                  const std::vector<WordPrediction> &preds);
// Validates every row against `corpus` and fills in word end times.
WordPredictionsByRecording ParseWordPredictions(std::string_view text,
                                                const std::string &source,
                                                const Corpus &corpus);

}  // namespace phrasebreak
