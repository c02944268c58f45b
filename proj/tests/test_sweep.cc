#include <random>

#include "doctest.h"
#include "phrasebreak/error.h"
#include "phrasebreak/fuzzy_labels.h"
#include "phrasebreak/sweep.h"
#include "synthetic.h"

using namespace phrasebreak;

namespace {

struct Fixture {
  std::vector<Recording> recs;
  std::vector<ScoredRecording> items;
};

// Label curves with noise so that peaks land at many different heights.
Fixture NoisyLabelFixture(std::mt19937_64 &rng, int n) {
  Fixture f;
  testing::RecordingOptions opts;
  opts.min_prosodic_spacing_s = 0.45;
  for (int i = 0; i < n; ++i) f.recs.push_back(testing::RandomRecording(rng, opts, "r" + std::to_string(i)));
  std::normal_distribution<double> noise(0, 0.15);
  for (const auto &rec : f.recs) {
    auto s = MakeLabelCurve(rec, {}).ToFrameScores();
    for (double &v : s.values) v = std::clamp(v * 0.9 + noise(rng), 0.0, 1.0);
    f.items.push_back({&rec, s});
  }
  return f;
}

int64_t InScopeWords(const std::vector<Recording> &recs, Scope scope) {
  int64_t n = 0;
  for (const auto &r : recs)
    for (WordRef w : r.AllWords()) n += r.InScope(w, scope);
  return n;
}

}  // namespace

TEST_CASE("threshold range") {
  const auto t = ThresholdRange(0, 1, 0.05);
  REQUIRE(t.size() == 21);
  CHECK(t.front() == 0.0);
  CHECK(t[1] == 0.05);
  CHECK(t.back() == 1.0);
  CHECK(ThresholdRange(0.5, 0.5, 0.1) == std::vector<double>{0.5});
  CHECK_THROWS_AS(ThresholdRange(0, 1, 0), ConfigError);
  CHECK_THROWS_AS(ThresholdRange(1, 0, 0.1), ConfigError);
}

TEST_CASE("perfect label curves score perfectly") {
  std::mt19937_64 rng(8);
  testing::RecordingOptions opts;
  opts.min_prosodic_spacing_s = 0.45;
  for (int i = 0; i < 100; ++i) {
    const Recording rec = testing::RandomRecording(rng, opts);
    const auto scores = MakeLabelCurve(rec, {}).ToFrameScores();
    const auto e = EvaluateRecording(scores, rec, {}, Scope::kAll);
    CHECK(e.counts.fp == 0);
    CHECK(e.counts.fn == 0);
    CHECK(e.dropped == 0);
    CHECK(e.merged == 0);
    const size_t nref = ReferenceBoundaries(rec, BoundaryKind::kProsodicOnly, Scope::kAll).size();
    CHECK(e.peaks == nref);
    // Each raw peak is within half a frame of its boundary.
    CHECK(e.purity.matched >= e.purity.total - 0.02 * double(nref) - 1e-9);
    CHECK(e.coverage.matched >= e.coverage.total - 0.02 * double(nref) - 1e-9);
  }
}

TEST_CASE("sweep: extremes, monotonicity, conservation") {
  std::mt19937_64 rng(9);
  const Fixture f = NoisyLabelFixture(rng, 40);
  const auto thresholds = ThresholdRange(0, 1, 0.05);
  for (auto scope : {Scope::kAll, Scope::kWithinSentence}) {
    const auto rows = Sweep(f.items, thresholds, {}, scope);
    REQUIRE(rows.size() == thresholds.size());
    const int64_t words = InScopeWords(f.recs, scope);
    for (size_t i = 0; i < rows.size(); ++i) {
      const auto &e = rows[i].eval;
      CHECK(e.counts.total() == words);
      CHECK(e.aligned + e.dropped + e.merged == e.peaks);
      CHECK(e.fp.fp() == e.counts.fp);
      if (i == 0) continue;
      const auto &p = rows[i - 1].eval;
      CHECK(e.peaks <= p.peaks);
      CHECK(e.counts.tp <= p.counts.tp);
      CHECK(e.counts.fp <= p.counts.fp);
      CHECK(e.counts.tp + e.counts.fn == p.counts.tp + p.counts.fn);
      if (rows[i].metrics.recall && rows[i - 1].metrics.recall) {
        CHECK(*rows[i].metrics.recall <= *rows[i - 1].metrics.recall);
      }
    }
    // Lowest threshold: recall cannot be beaten by any other threshold.
    for (const auto &r : rows) CHECK(r.eval.counts.tp <= rows.front().eval.counts.tp);
  }
}

TEST_CASE("threshold 1 with no unit peaks predicts nothing") {
  std::mt19937_64 rng(10);
  Fixture f = NoisyLabelFixture(rng, 10);
  for (auto &it : f.items)
    for (double &v : it.scores.values) v = std::min(v, 0.99);
  const auto rows = Sweep(f.items, {1.0}, {}, Scope::kAll);
  CHECK(rows[0].eval.peaks == 0);
  CHECK(rows[0].eval.counts.tp == 0);
  CHECK(rows[0].eval.counts.fp == 0);
  CHECK(rows[0].metrics.recall == 0.0);
  CHECK_FALSE(rows[0].metrics.precision.has_value());
}

TEST_CASE("sweep rejects bad thresholds") {
  std::mt19937_64 rng(11);
  const Fixture f = NoisyLabelFixture(rng, 2);
  CHECK_THROWS_AS(Sweep(f.items, {0.5, 0.4}, {}, Scope::kAll), ConfigError);
  CHECK_THROWS_AS(Sweep(f.items, {1.5}, {}, Scope::kAll), ConfigError);
  CHECK_THROWS_AS(Sweep(f.items, {-0.1}, {}, Scope::kAll), ConfigError);
}

TEST_CASE("curve table layout") {
  std::mt19937_64 rng(12);
  const Fixture f = NoisyLabelFixture(rng, 3);
  const auto rows = Sweep(f.items, ThresholdRange(0, 1, 0.25), {}, Scope::kAll);
  const std::string text = FormatCurveTable(rows);
  CHECK(text.rfind("threshold\tprecision\trecall\taccuracy\tf1\tpurity\tcoverage\t"
                   "fp_intermediate_fraction\ttp\tfp\tfn\ttn\tpeaks\n",
                   0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);
  CHECK(text.find("\n0.2500\t") != std::string::npos);
}

TEST_CASE("system segmentation keeps interior, increasing peak times") {
  std::vector<BoundaryPrediction> peaks = {{0.0, 1, 0}, {1.0, 1, 50}, {3.0, 1, 150}, {5.0, 1, 250}};
  const auto seg = SystemSegmentation(peaks, 5.0);
  CHECK(seg == Segmentation{{0, 1}, {1, 3}, {3, 5}});
}
