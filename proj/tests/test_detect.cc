#include <random>

#include "doctest.h"
#include "oracles.h"
#include "phrasebreak/detect.h"
#include "phrasebreak/error.h"
#include "phrasebreak/fuzzy_labels.h"
#include "synthetic.h"

using namespace phrasebreak;
using doctest::Approx;

namespace {

FrameScores Zeros(size_t n) {
  FrameScores s;
  s.values.assign(n, 0.0);
  return s;
}

// Triangle of height `peak` on frame `center`, `half` frames wide.
void AddBump(FrameScores &s, size_t center, double peak, int half = 10) {
  for (int d = -half; d <= half; ++d) {
    const long i = static_cast<long>(center) + d;
    if (i < 0 || i >= static_cast<long>(s.size())) continue;
    s.values[i] = std::max(s.values[i], peak * (1.0 - std::abs(d) / double(half)));
  }
}

Recording Words(std::vector<double> ends, double duration = 20) {
  Recording rec;
  rec.id = "r";
  rec.duration_s = duration;
  Sentence s{"s", {}};
  double t = 0;
  for (size_t i = 0; i < ends.size(); ++i) {
    s.words.push_back({"w" + std::to_string(i), t, ends[i], BoundaryLabel::kNone});
    t = ends[i];
  }
  rec.sentences.push_back(s);
  return rec;
}

}  // namespace

TEST_CASE("all-zero scores yield nothing") {
  CHECK(DetectPeaks(Zeros(1000), DetectorConfig{}).empty());
  CHECK(DetectPeaks(Zeros(0), DetectorConfig{}).empty());
}

TEST_CASE("isolated bump") {
  FrameScores s = Zeros(600);
  AddBump(s, 250, 0.9);  // frame 250 is centred on 5.01 s
  const auto peaks = DetectPeaks(s, DetectorConfig{});
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].time_s == Approx(5.01));
  CHECK(peaks[0].peak_value == 0.9);
  CHECK(peaks[0].frame == 250);
}

TEST_CASE("a higher peak within 0.25 s suppresses a lower one") {
  FrameScores s = Zeros(1000);
  s.values[500] = 0.6;  // 10.01 s
  s.values[510] = 0.8;  // 10.21 s
  const auto peaks = DetectPeaks(s, DetectorConfig{});
  const auto oracle = testing::PeaksOracle(s.values, 0.02, 0.5, 0.25);
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].peak_value == 0.8);
  REQUIRE(oracle.size() == 1);
  CHECK(oracle[0].frame == 510);
}

TEST_CASE("suppressors below the threshold still suppress") {
  FrameScores s = Zeros(100);
  s.values[40] = 0.55;
  s.values[45] = 0.56;
  DetectorConfig cfg;
  cfg.threshold = 0.555;
  const auto peaks = DetectPeaks(s, cfg);
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].frame == 45);
  cfg.threshold = 0.565;
  CHECK(DetectPeaks(s, cfg).empty());
}

TEST_CASE("plateaus report their earliest frame and the threshold is inclusive") {
  FrameScores s = Zeros(100);
  for (int i = 30; i < 36; ++i) s.values[i] = 0.5;
  const auto peaks = DetectPeaks(s, DetectorConfig{});
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].frame == 30);
}

TEST_CASE("peaks farther apart than the radius both survive") {
  FrameScores s = Zeros(200);
  s.values[50] = 0.7;
  s.values[63] = 0.9;  // 0.26 s apart
  CHECK(DetectPeaks(s, DetectorConfig{}).size() == 2);
}

TEST_CASE("detect_peaks equals the neighbourhood oracle on random input") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<size_t> len(1, 800);
  std::uniform_real_distribution<double> th(0, 1);
  for (int iter = 0; iter < 300; ++iter) {
    const FrameScores s = testing::RandomScores(rng, len(rng), 0.02, iter % 2 == 0);
    DetectorConfig cfg;
    cfg.threshold = th(rng);
    cfg.nms_radius_s = std::uniform_real_distribution<double>(0.01, 0.5)(rng);
    const auto got = DetectPeaks(s, cfg);
    const auto want = testing::PeaksOracle(s.values, 0.02, cfg.threshold, cfg.nms_radius_s);
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].frame == static_cast<int64_t>(want[i].frame));
      CHECK(got[i].peak_value == want[i].value);
    }
    for (size_t i = 1; i < got.size(); ++i) {
      CHECK(got[i].time_s - got[i - 1].time_s > cfg.nms_radius_s);
    }
  }
}

TEST_CASE("raising the threshold only filters") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    const FrameScores s = testing::RandomScores(rng, 500, 0.02, iter % 2 == 1);
    DetectorConfig lo, hi;
    lo.threshold = std::uniform_real_distribution<double>(0, 1)(rng);
    hi.threshold = std::uniform_real_distribution<double>(lo.threshold, 1)(rng);
    const auto a = DetectPeaks(s, lo);
    const auto b = DetectPeaks(s, hi);
    for (const auto &p : b) {
      CHECK(std::find(a.begin(), a.end(), p) != a.end());
    }
  }
}

TEST_CASE("fuzzy label curves round-trip through the detector") {
  std::mt19937_64 rng(17);
  testing::RecordingOptions opts;
  opts.min_prosodic_spacing_s = 0.41;
  for (int iter = 0; iter < 100; ++iter) {
    const Recording rec = testing::RandomRecording(rng, opts);
    const auto curve = MakeLabelCurve(rec, LabelConfig{}).ToFrameScores();
    const auto peaks = DetectPeaks(curve, DetectorConfig{});
    const auto refs = ReferenceBoundaries(rec, BoundaryKind::kProsodicOnly, Scope::kAll);
    REQUIRE(peaks.size() == refs.size());
    for (size_t i = 0; i < refs.size(); ++i) {
      CHECK(std::abs(peaks[i].time_s - refs[i].time_s) <= 0.01 + 1e-9);
    }
  }
}

TEST_CASE("alignment to the nearest word end") {
  const Recording rec = Words({4.9, 5.0, 5.1, 5.6, 7.15});
  DetectorConfig cfg;
  SUBCASE("nearest within 100 ms") {
    const auto r = AlignToWords({{5.03, 0.8, 0}}, rec, cfg);
    REQUIRE(r.aligned.size() == 1);
    CHECK(r.aligned[0].word_index == 1);
    CHECK(r.aligned[0].time_s == 5.0);
    CHECK(r.aligned[0].peak_value == 0.8);
  }
  SUBCASE("beyond the radius is dropped") {
    const auto r = AlignToWords({{7.0, 0.8, 0}}, rec, cfg);
    CHECK(r.aligned.empty());
    REQUIRE(r.dropped.size() == 1);
    CHECK(r.dropped[0].time_s == 7.0);
  }
  SUBCASE("two predictions on one word keep the higher peak") {
    const auto r = AlignToWords({{5.58, 0.6, 0}, {5.63, 0.9, 0}}, rec, cfg);
    REQUIRE(r.aligned.size() == 1);
    CHECK(r.aligned[0].peak_value == 0.9);
    CHECK(r.merged == 1);
  }
}

TEST_CASE("equidistant predictions go to the earlier word end") {
  const Recording rec = Words({4.9, 5.1});
  const auto r = AlignToWords({{5.0, 0.7, 0}}, rec, DetectorConfig{});
  REQUIRE(r.aligned.size() == 1);
  CHECK(r.aligned[0].time_s == 4.9);
}

TEST_CASE("alignment conserves predictions") {
  std::mt19937_64 rng(31);
  testing::RecordingOptions opts;
  for (int iter = 0; iter < 200; ++iter) {
    const Recording rec = testing::RandomRecording(rng, opts);
    std::vector<BoundaryPrediction> preds;
    std::uniform_real_distribution<double> t(0, rec.duration_s);
    for (int k = 0; k < 20; ++k) preds.push_back({t(rng), 0.5 + 0.01 * k, 0});
    std::sort(preds.begin(), preds.end(),
              [](const auto &a, const auto &b) { return a.time_s < b.time_s; });
    const auto r = AlignToWords(preds, rec, DetectorConfig{});
    CHECK(r.aligned.size() + r.dropped.size() + r.merged == preds.size());
    std::set<std::pair<std::string, int>> words;
    for (const auto &a : r.aligned) CHECK(words.insert({a.sentence_id, a.word_index}).second);
    // Brute-force nearest word end.
    for (const auto &p : r.dropped) {
      for (const auto &s : rec.sentences) {
        for (const auto &w : s.words) CHECK(std::abs(w.end_s - p.time_s) > 0.1);
      }
    }
  }
}

TEST_CASE("scope filtering") {
  Recording rec = Words({1.0, 2.0, 3.0});
  rec.sentences.push_back({"t", {{"x", 3.5, 4.0, BoundaryLabel::kNone},
                                 {"y", 4.0, 4.5, BoundaryLabel::kProsodic}}});
  const std::vector<WordPrediction> preds = {MakeWordPrediction(rec, {0, 0}, 0.9),
                                             MakeWordPrediction(rec, {0, 2}, 0.9),
                                             MakeWordPrediction(rec, {1, 1}, 0.9)};
  CHECK(FilterScope(preds, rec, Scope::kAll) == preds);
  const auto within = FilterScope(preds, rec, Scope::kWithinSentence);
  REQUIRE(within.size() == 1);
  CHECK(within[0].word_index == 0);
}

TEST_CASE("scope filtering matches a recount on random sets") {
  std::mt19937_64 rng(41);
  testing::RecordingOptions opts;
  for (int iter = 0; iter < 200; ++iter) {
    const Recording rec = testing::RandomRecording(rng, opts);
    std::vector<WordPrediction> preds;
    size_t non_final = 0;
    for (WordRef r : rec.AllWords()) {
      if (std::bernoulli_distribution(0.4)(rng)) {
        preds.push_back(MakeWordPrediction(rec, r, 0.6));
        if (r.word + 1 < static_cast<int>(rec.sentences[r.sentence].words.size())) ++non_final;
      }
    }
    const auto out = FilterScope(preds, rec, Scope::kWithinSentence);
    CHECK(out.size() == non_final);
    for (const auto &p : out) CHECK(std::find(preds.begin(), preds.end(), p) != preds.end());
  }
}

TEST_CASE("prediction files") {
  const std::vector<BoundaryPrediction> preds = {{1.01, 0.75, 50}, {2.33, 1.0, 116}};
  const std::string text = FormatTimePredictions(preds);
  CHECK(text == "1.010000\t0.750000\n2.330000\t1.000000\n");
  const auto back = ParseTimePredictions(text, "t");
  REQUIRE(back.size() == 2);
  CHECK(back[1].time_s == 2.33);
  CHECK_THROWS_AS(ParseTimePredictions("2\t0.5\n1\t0.5\n", "t"), ParseError);

  Corpus corpus({Words({1.0, 2.0, 3.0})});
  const auto &rec = corpus.Get("r");
  const std::vector<WordPrediction> wp = {MakeWordPrediction(rec, {0, 1}, 0.8)};
  const std::string wtext = FormatWordPredictions("r", wp);
  CHECK(wtext == "r\ts\t1\t0.800000\n");
  const auto parsed = ParseWordPredictions(wtext, "t", corpus);
  REQUIRE(parsed.at("r").size() == 1);
  CHECK(parsed.at("r")[0].time_s == 2.0);
  CHECK_THROWS_AS(ParseWordPredictions("r\ts\t7\t0.8\n", "t", corpus), ParseError);
  CHECK_THROWS_AS(ParseWordPredictions("q\ts\t0\t0.8\n", "t", corpus), ParseError);
  CHECK_THROWS_AS(ParseWordPredictions(wtext + wtext, "t", corpus), ParseError);
}

TEST_CASE("detector configuration") {
  CHECK(DefaultThreshold(BoundaryKind::kProsodicOnly) == 0.5);
  CHECK(DefaultThreshold(BoundaryKind::kProsodicAndIntermediate) == 0.75);
  DetectorConfig bad;
  bad.threshold = 1.5;
  CHECK_THROWS_AS(DetectPeaks(Zeros(3), bad), ConfigError);
  bad = {};
  bad.nms_radius_s = 0;
  CHECK_THROWS_AS(DetectPeaks(Zeros(3), bad), ConfigError);
}
