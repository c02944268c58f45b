#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "phrasebreak/combine.h"
#include "phrasebreak/corpus.h"
#include "phrasebreak/text_io.h"

using namespace phrasebreak;
namespace fs = std::filesystem;

namespace {

const std::string kCli = PHRASEBREAK_CLI;
const fs::path kFixtures = PHRASEBREAK_FIXTURES;

struct Result {
  int rc;
  std::string out, err;
};

fs::path Scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("phrasebreak_cli_" + std::to_string(getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Result Run(const std::string &args) {
  const fs::path out = Scratch() / "stdout", err = Scratch() / "stderr";
  const std::string cmd = "'" + kCli + "' " + args + " >'" + out.string() + "' 2>'" +
                          err.string() + "'";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ReadFile(out), ReadFile(err)};
}

std::string Corpus_() { return "--corpus '" + (kFixtures / "corpus").string() + "'"; }
std::string Scores() { return "--scores '" + (kFixtures / "scores").string() + "'"; }
std::string Q(const fs::path &p) { return "'" + p.string() + "'"; }

// Rows of a tab-separated report keyed by label.
std::map<std::string, std::vector<std::string>> ReportRows(const std::string &tsv) {
  std::map<std::string, std::vector<std::string>> rows;
  bool header = true;
  for (auto line : Split(tsv, '\n')) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> f;
    for (auto x : Split(line, '\t')) f.emplace_back(x);
    rows[f[0]] = f;
  }
  return rows;
}

// Columns tp..tn in a report row.
std::vector<int> Counts(const std::vector<std::string> &row) {
  return {std::stoi(row[5]), std::stoi(row[6]), std::stoi(row[7]), std::stoi(row[8])};
}

}  // namespace

TEST_CASE("cli: help and usage errors") {
  CHECK(Run("--help").rc == 0);
  CHECK(Run("").rc == 1);
  CHECK(Run("frobnicate").rc == 1);
  CHECK(Run("eval --bogus-flag 1").rc == 1);
  const auto r = Run("eval " + Corpus_() + " " + Scores() + " --scope sideways");
  CHECK(r.rc == 1);
  CHECK(r.err.find("--scope") != std::string::npos);
  CHECK(Run("eval --corpus /nonexistent/x.json " + Scores()).rc == 1);
}

TEST_CASE("cli: eval on reference-equal predictions is perfect") {
  const Corpus corpus = Corpus::Load({kFixtures / "corpus"});
  WordBoundarySet ref;
  for (const auto &rec : corpus.recordings()) {
    for (const auto &b : ReferenceBoundaries(rec, BoundaryKind::kProsodicOnly, Scope::kAll)) {
      ref.entries.insert({rec.id, rec.sentences[b.ref.sentence].id, b.ref.word});
    }
  }
  const fs::path pred = Scratch() / "reference.txt";
  WriteFileAtomic(pred, FormatExternalPredictions(ref, corpus));
  for (const std::string scope : {"all", "within-sentence"}) {
    const fs::path report = Scratch() / ("ref_eval_" + scope + ".tsv");
    const auto r = Run("eval " + Corpus_() + " --predictions " + Q(pred) + " --scope " + scope +
                       " --out " + Q(report));
    REQUIRE(r.rc == 0);
    const auto rows = ReportRows(ReadFile(report));
    REQUIRE(rows.count("all"));
    const auto &all = rows.at("all");
    CHECK(all[1] == "100.00");
    CHECK(all[6] == "0");
    CHECK(all[7] == "0");
    CHECK(r.out.find("100.00") != std::string::npos);
  }
}

TEST_CASE("cli: curve table has one row per threshold") {
  const fs::path out = Scratch() / "curve.tsv";
  const auto r = Run("curve " + Corpus_() + " " + Scores() + " --thresholds 0:1:0.05 --out " + Q(out));
  REQUIRE(r.rc == 0);
  const std::string text = ReadFile(out);
  CHECK(std::count(text.begin(), text.end(), '\n') == 22);
  CHECK(text.find("\n1.0000\t") != std::string::npos);
  CHECK(text == r.out);
}

TEST_CASE("cli: detect and eval are deterministic") {
  std::string first_detect, first_eval;
  for (int i = 0; i < 3; ++i) {
    const fs::path pred = Scratch() / ("det" + std::to_string(i) + ".tsv");
    const fs::path rep = Scratch() / ("rep" + std::to_string(i) + ".tsv");
    REQUIRE(Run("detect " + Corpus_() + " " + Scores() + " --out " + Q(pred)).rc == 0);
    REQUIRE(Run("eval " + Corpus_() + " " + Scores() + " --out " + Q(rep)).rc == 0);
    if (i == 0) {
      first_detect = ReadFile(pred);
      first_eval = ReadFile(rep);
      CHECK_FALSE(first_detect.empty());
    } else {
      CHECK(ReadFile(pred) == first_detect);
      CHECK(ReadFile(rep) == first_eval);
    }
  }
}

TEST_CASE("cli: detect then eval equals a fused run") {
  for (const std::string scope : {"all", "within-sentence"}) {
    const fs::path pred = Scratch() / ("compose_" + scope + ".tsv");
    const fs::path fused = Scratch() / ("fused_" + scope + ".tsv");
    const fs::path staged = Scratch() / ("staged_" + scope + ".tsv");
    REQUIRE(Run("detect " + Corpus_() + " " + Scores() + " --scope " + scope + " --out " + Q(pred)).rc == 0);
    REQUIRE(Run("eval " + Corpus_() + " " + Scores() + " --scope " + scope + " --out " + Q(fused)).rc == 0);
    REQUIRE(Run("eval " + Corpus_() + " --predictions " + Q(pred) + " --scope " + scope +
                " --out " + Q(staged)).rc == 0);
    const auto a = ReportRows(ReadFile(fused)), b = ReportRows(ReadFile(staged));
    REQUIRE(a.size() == b.size());
    for (const auto &[label, row] : a) {
      REQUIRE(b.count(label));
      CHECK(Counts(row) == Counts(b.at(label)));
      for (int c = 1; c <= 10; ++c) CHECK(row[c] == b.at(label)[c]);
    }
  }
}

TEST_CASE("cli: leave-one-out report") {
  const fs::path out = Scratch() / "loo.tsv";
  REQUIRE(Run("loo " + Corpus_() + " " + Scores() + " --scope within-sentence --out " + Q(out)).rc == 0);
  auto rows = ReportRows(ReadFile(out));
  CHECK(rows.size() == 4);  // three speakers plus "all"
  std::vector<int> sum(4, 0);
  for (const auto &[label, row] : rows) {
    if (label == "all") continue;
    for (int i = 0; i < 4; ++i) sum[i] += Counts(row)[i];
  }
  CHECK(sum == Counts(rows.at("all")));

  REQUIRE(Run("loo " + Corpus_() + " " + Scores() + " --speakers spk1,spk3 --out " + Q(out)).rc == 0);
  rows = ReportRows(ReadFile(out));
  CHECK(rows.size() == 3);
  CHECK(rows.count("spk1"));
  CHECK(rows.count("spk3"));
  CHECK(rows.count("all"));

  CHECK(Run("loo " + Corpus_() + " " + Scores() + " --speakers spk9").rc == 1);
}

TEST_CASE("cli: missing score file names the speaker") {
  const fs::path dir = Scratch() / "partial_scores";
  fs::create_directories(dir);
  for (const char *id : {"rec_a", "rec_b", "rec_d"}) {
    fs::copy_file(kFixtures / "scores" / (std::string(id) + ".scores"),
                  dir / (std::string(id) + ".scores"), fs::copy_options::overwrite_existing);
  }
  const auto r = Run("loo " + Corpus_() + " --scores " + Q(dir));
  CHECK(r.rc == 1);
  CHECK(r.err.find("spk2") != std::string::npos);
  CHECK(r.err.find("spk1") == std::string::npos);
  CHECK(Run("loo " + Corpus_() + " --scores " + Q(dir) + " --speakers spk1,spk3").rc == 0);
}

TEST_CASE("cli: config file fills unset options; flags win") {
  const fs::path cfg = Scratch() / "cfg.json";
  WriteFileAtomic(cfg, R"({"threshold": 0.1, "scope": "within-sentence", "speakers": ["spk1"]})");
  const fs::path a = Scratch() / "cfg_a.tsv", b = Scratch() / "cfg_b.tsv", c = Scratch() / "cfg_c.tsv";
  REQUIRE(Run("eval " + Corpus_() + " " + Scores() + " --config " + Q(cfg) + " --out " + Q(a)).rc == 0);
  REQUIRE(Run("eval " + Corpus_() + " " + Scores() +
              " --threshold 0.1 --scope within-sentence --speakers spk1 --out " + Q(b)).rc == 0);
  CHECK(ReadFile(a) == ReadFile(b));
  REQUIRE(Run("eval " + Corpus_() + " " + Scores() + " --config " + Q(cfg) +
              " --threshold 0.5 --out " + Q(c)).rc == 0);
  CHECK(ReadFile(a) != ReadFile(c));
  CHECK(ReportRows(ReadFile(c)).count("rec_b"));
  CHECK_FALSE(ReportRows(ReadFile(c)).count("rec_c"));

  WriteFileAtomic(cfg, R"({"no_such_option": 1})");
  CHECK(Run("eval " + Corpus_() + " " + Scores() + " --config " + Q(cfg)).rc == 1);
  WriteFileAtomic(cfg, R"({"threshold": "high"})");
  CHECK(Run("eval " + Corpus_() + " " + Scores() + " --config " + Q(cfg)).rc == 1);
}

TEST_CASE("cli: labels, score averaging and combine") {
  const fs::path labels = Scratch() / "labels";
  REQUIRE(Run("labels " + Corpus_() + " --out " + Q(labels)).rc == 0);
  CHECK(fs::exists(labels / "rec_a.labels"));
  CHECK(fs::exists(labels / "rec_d.labels"));

  // Labels evaluated as scores give perfect results on this corpus.
  const fs::path rep = Scratch() / "labels_eval.tsv";
  REQUIRE(Run("eval " + Corpus_() + " --scores " + Q(labels / "rec_a.labels") + " --speakers spk1" +
              " --out " + Q(rep)).rc == 1);  // rec_b has no labels file given
  fs::path lbl_dir = Scratch() / "labels_as_scores";
  fs::create_directories(lbl_dir);
  for (const auto &e : fs::directory_iterator(labels)) {
    fs::copy_file(e.path(), lbl_dir / (e.path().stem().string() + ".scores"),
                  fs::copy_options::overwrite_existing);
  }
  REQUIRE(Run("eval " + Corpus_() + " --scores " + Q(lbl_dir) + " --out " + Q(rep)).rc == 0);
  const auto all = ReportRows(ReadFile(rep)).at("all");
  CHECK(all[6] == "0");
  CHECK(all[7] == "0");

  const fs::path s = kFixtures / "scores" / "rec_a.scores";
  const fs::path avg = Scratch() / "avg.scores";
  REQUIRE(Run("score --average " + Q(s) + " " + Q(s) + " --out " + Q(avg)).rc == 0);
  CHECK(ReadFile(avg) == ReadFile(s));
  CHECK(Run("score --average " + Q(s) + " " + Q(kFixtures / "scores" / "rec_b.scores") +
            " --out " + Q(avg)).rc == 1);

  const fs::path pred = Scratch() / "combine_pred.tsv";
  const fs::path comb = Scratch() / "combined.txt";
  REQUIRE(Run("detect " + Corpus_() + " " + Scores() + " --out " + Q(pred)).rc == 0);
  const auto r = Run("combine " + Corpus_() + " --a " + Q(pred) + " --b " +
                     Q(kFixtures / "text_predictions.txt") + " --op or --out " + Q(comb));
  REQUIRE(r.rc == 0);
  CHECK(r.out.find("a_or_b") != std::string::npos);
  CHECK(fs::exists(comb));
}

TEST_CASE("cli: threshold defaults follow the label mode") {
  const fs::path a = Scratch() / "mode_a.tsv", b = Scratch() / "mode_b.tsv", c = Scratch() / "mode_c.tsv";
  REQUIRE(Run("eval " + Corpus_() + " " + Scores() + " --mode prosodic+intermediate --out " + Q(a)).rc == 0);
  REQUIRE(Run("eval " + Corpus_() + " " + Scores() + " --threshold 0.75 --out " + Q(b)).rc == 0);
  REQUIRE(Run("eval " + Corpus_() + " " + Scores() + " --out " + Q(c)).rc == 0);
  CHECK(ReadFile(a) == ReadFile(b));
  CHECK(ReadFile(a) != ReadFile(c));
  const fs::path d = Scratch() / "mode_d.tsv";
  REQUIRE(Run("eval " + Corpus_() + " " + Scores() + " --mode prosodic+intermediate --threshold 0.5 --out " + Q(d)).rc == 0);
  CHECK(ReadFile(d) == ReadFile(c));
}
