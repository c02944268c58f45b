// tools/commands.cc

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include "json.hpp"
#include "phrasebreak/baseline.h"
#include "phrasebreak/chunking.h"
#include "phrasebreak/combine.h"
#include "phrasebreak/corpus.h"
#include "phrasebreak/detect.h"
#include "phrasebreak/error.h"
#include "phrasebreak/frame_scores.h"
#include "phrasebreak/fuzzy_labels.h"
#include "phrasebreak/metrics.h"
#include "phrasebreak/report.h"
#include "phrasebreak/sweep.h"
#include "phrasebreak/text_io.h"
#include "phrasebreak/wav.h"

namespace fs = std::filesystem;

namespace phrasebreak::cli {
namespace {

Scope ParseScope(const std::string &s) {
  if (s == "all") return Scope::kAll;
  if (s == "within-sentence") return Scope::kWithinSentence;
  throw ConfigError("--scope must be 'all' or 'within-sentence', got '" + s + "'");
}

BoundaryKind ParseMode(const std::string &s) {
  if (s == "prosodic") return BoundaryKind::kProsodicOnly;
  if (s == "prosodic+intermediate") return BoundaryKind::kProsodicAndIntermediate;
  throw ConfigError("--mode must be 'prosodic' or 'prosodic+intermediate', got '" + s + "'");
}

PauseAnchor ParseAnchor(const std::string &s) {
  if (s == "midpoint") return PauseAnchor::kMidpoint;
  if (s == "onset") return PauseAnchor::kOnset;
  throw ConfigError("--anchor must be 'midpoint' or 'onset', got '" + s + "'");
}

CombineMode ParseOp(const std::string &s) {
  if (s == "and") return CombineMode::kAnd;
  if (s == "or") return CombineMode::kOr;
  throw ConfigError("--op must be 'and' or 'or', got '" + s + "'");
}

void WriteOutput(const fs::path &path, const std::string &text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  WriteFileAtomic(path, text);
}

Corpus LoadFullCorpus(const Options &o) {
  if (o.corpus.empty()) throw ConfigError("--corpus is required");
  std::vector<fs::path> paths(o.corpus.begin(), o.corpus.end());
  return Corpus::Load(paths);
}

Corpus Selected(const Corpus &full, const Options &o) {
  if (o.speakers.empty()) return full;
  return full.Subset(o.speakers);
}

DetectorConfig MakeDetector(const Options &o) {
  DetectorConfig cfg;
  cfg.threshold = o.threshold_opt && o.threshold_opt->count() > 0
                      ? o.threshold
                      : DefaultThreshold(ParseMode(o.mode));
  cfg.nms_radius_s = o.nms_radius;
  cfg.align_radius_s = o.align_radius;
  Validate(cfg);
  return cfg;
}

// Expands files and directories into a map from file stem to path.
std::map<std::string, fs::path> CollectByStem(const std::vector<std::string> &inputs,
                                              const std::string &ext) {
  std::map<std::string, fs::path> out;
  auto add = [&](const fs::path &p) {
    const std::string stem = p.stem().string();
    auto [it, fresh] = out.emplace(stem, p);
    if (!fresh && it->second != p) {
      throw ConfigError("two inputs for recording '" + stem + "': " + it->second.string() +
                        " and " + p.string());
    }
  };
  for (const auto &in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto &e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ext) files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto &f : files) add(f);
    } else if (fs::is_regular_file(p)) {
      add(p);
    } else {
      throw IoError("no such file or directory: " + in);
    }
  }
  return out;
}

// Per-recording score curves from imported score files or baseline audio.
class ScoreSource {
 public:
  explicit ScoreSource(const Options &o) : frame_period_(o.frame_period) {
    if (!o.scores.empty() && !o.baseline.empty()) {
      throw ConfigError("--scores and --baseline are mutually exclusive");
    }
    if (o.scores.empty() && o.baseline.empty()) {
      throw ConfigError("one of --scores or --baseline is required");
    }
    if (!o.scores.empty()) {
      files_ = CollectByStem(o.scores, ".scores");
    } else {
      files_ = CollectByStem(o.baseline, ".wav");
      baseline_ = true;
      params_.frame_period_s = o.frame_period;
      params_.anchor = ParseAnchor(o.anchor);
      Validate(params_);
    }
  }

  bool Has(const Recording &rec) const { return files_.count(rec.id) > 0; }

  // Throws ValidationError naming every recording (and its speaker) that
  // has no input.
  void RequireAll(const Corpus &corpus) const {
    std::set<std::string> speakers;
    std::string recs;
    for (const auto &rec : corpus.recordings()) {
      if (Has(rec)) continue;
      speakers.insert(rec.speaker_id);
      recs += (recs.empty() ? "" : ", ") + rec.id;
    }
    if (speakers.empty()) return;
    std::string spk;
    for (const auto &s : speakers) spk += (spk.empty() ? "" : ", ") + s;
    throw ValidationError(std::string("missing ") + (baseline_ ? "audio" : "score") +
                          " files for speaker(s) " + spk + " (recordings: " + recs + ")");
  }

  FrameScores Load(const Recording &rec) const {
    const fs::path &path = files_.at(rec.id);
    FrameScores s;
    if (baseline_) {
      s = BaselineScore(ReadWav(path), params_);
    } else {
      s = ClipToUnit(ReadScores(path, frame_period_));
    }
    const int64_t expected = FrameCount(rec.duration_s, s.frame_period_s);
    const auto n = static_cast<int64_t>(s.size());
    if (std::abs(n - expected) > 1) {
      throw ValidationError(path.string() + ": " + std::to_string(n) +
                            " frames, but recording '" + rec.id + "' spans " +
                            std::to_string(expected));
    }
    return s;
  }

 private:
  double frame_period_;
  bool baseline_ = false;
  BaselineParams params_;
  std::map<std::string, fs::path> files_;
};

// Word-domain TSV (4 fields) or external text (3 fields), told apart by
// the first non-blank line.
WordBoundarySet ReadPredictionSet(const fs::path &path, const Corpus &corpus) {
  const std::string text = ReadFile(path);
  size_t fields = 0;
  for (auto line : Split(text, '\n')) {
    if (Trim(line).empty()) continue;
    fields = Split(Trim(line), '\t').size();
    break;
  }
  if (fields == 4) {
    return FromWordPredictions(ParseWordPredictions(text, path.string(), corpus), corpus,
                               path.string());
  }
  if (fields == 3 || fields == 0) return ParseExternalPredictions(text, path.string(), corpus);
  throw ParseError(path.string(), 0,
                   "unrecognised prediction format (expected 3 or 4 tab-separated fields)");
}

ReportRow RowFromSet(const std::string &label, const WordBoundarySet &set,
                     const std::vector<const Recording *> &recs, Scope scope) {
  ReportRow row;
  row.label = label;
  FpBreakdown fp;
  for (const Recording *rec : recs) {
    const auto refs = RefsFor(set, *rec);
    row.counts += CountWordLevel(refs, *rec, scope);
    fp += FalsePositiveBreakdown(refs, *rec, scope);
  }
  row.fp = fp;
  return row;
}

ReportRow RowFromEvaluation(const std::string &label, const ScoreEvaluation &e) {
  return {label, e.counts, e.fp, e.purity, e.coverage};
}

void EmitReport(const std::vector<ReportRow> &rows, const Options &o) {
  std::cout << FormatReportTable(rows);
  if (!o.out.empty()) WriteOutput(o.out, FormatReportTsv(rows));
}

std::vector<const Recording *> Pointers(const Corpus &c) {
  std::vector<const Recording *> out;
  for (const auto &r : c.recordings()) out.push_back(&r);
  return out;
}

std::vector<double> ParseThresholdSpec(const std::string &spec) {
  auto parts = Split(spec, ':');
  if (parts.size() == 3) {
    auto lo = ParseDouble(parts[0]), hi = ParseDouble(parts[1]), step = ParseDouble(parts[2]);
    if (lo && hi && step) return ThresholdRange(*lo, *hi, *step);
  }
  std::vector<double> out;
  for (auto p : Split(spec, ',')) {
    auto v = ParseDouble(Trim(p));
    if (!v) throw ConfigError("bad --thresholds '" + spec + "' (want lo:hi:step or a,b,c)");
    out.push_back(*v);
  }
  return out;
}

// ---------------------------------------------------------------- commands

void CmdLabels(const Options &o) {
  if (o.out.empty()) throw ConfigError("--out directory is required");
  const Corpus corpus = Selected(LoadFullCorpus(o), o);
  LabelConfig cfg;
  cfg.frame_period_s = o.frame_period;
  cfg.mode = ParseMode(o.mode);
  fs::create_directories(o.out);
  for (const auto &rec : corpus.recordings()) {
    WriteScores(MakeLabelCurve(rec, cfg).ToFrameScores(), fs::path(o.out) / (rec.id + ".labels"));
  }
  std::cout << "wrote " << corpus.recordings().size() << " label files to " << o.out << "\n";
}

void CmdScore(const Options &o) {
  const int modes = !o.baseline.empty() + !o.stitch.empty() + !o.average.empty();
  if (modes != 1) throw ConfigError("give exactly one of --baseline, --stitch, --average");
  if (o.out.empty()) throw ConfigError("--out is required");

  if (!o.baseline.empty()) {
    BaselineParams params;
    params.frame_period_s = o.frame_period;
    params.anchor = ParseAnchor(o.anchor);
    Validate(params);
    const auto inputs = CollectByStem(o.baseline, ".wav");
    const bool single_file = o.baseline.size() == 1 && fs::is_regular_file(o.baseline[0]);
    for (const auto &[stem, path] : inputs) {
      const fs::path dest = single_file ? fs::path(o.out) : fs::path(o.out) / (stem + ".scores");
      if (dest.has_parent_path()) fs::create_directories(dest.parent_path());
      WriteScores(BaselineScore(ReadWav(path), params), dest);
    }
    std::cout << "scored " << inputs.size() << " audio file(s)\n";
    return;
  }

  std::vector<FrameScores> runs;
  const auto &inputs = o.stitch.empty() ? o.average : o.stitch;
  for (const auto &p : inputs) runs.push_back(ReadScores(p, o.frame_period));
  FrameScores result;
  if (!o.stitch.empty()) {
    if (!(o.duration > 0)) throw ConfigError("--stitch needs --duration");
    const ChunkPlan plan = PlanChunks(o.duration, o.chunk_len, o.step);
    if (runs.size() != plan.windows.size()) {
      throw StitchError("plan for " + FormatFixed(o.duration, 3) + " s has " +
                        std::to_string(plan.windows.size()) + " chunks, got " +
                        std::to_string(runs.size()) + " files");
    }
    result = Stitch(runs, plan);
  } else {
    result = AverageSeeds(runs);
  }
  WriteOutput(o.out, FormatScores(result));
  std::cout << "wrote " << result.size() << " frames to " << o.out << "\n";
}

void CmdDetect(const Options &o) {
  if (o.out.empty()) throw ConfigError("--out is required");
  const Corpus corpus = Selected(LoadFullCorpus(o), o);
  const ScoreSource source(o);
  source.RequireAll(corpus);
  const DetectorConfig cfg = MakeDetector(o);
  const Scope scope = ParseScope(o.scope);

  std::string text;
  size_t peaks = 0, aligned = 0, dropped = 0, merged = 0;
  for (const auto &rec : corpus.recordings()) {
    const Detection d = RunDetection(source.Load(rec), rec, cfg, scope);
    text += FormatWordPredictions(rec.id, d.in_scope);
    peaks += d.peaks.size();
    aligned += d.alignment.aligned.size();
    dropped += d.alignment.dropped.size();
    merged += d.alignment.merged;
    if (!o.peaks_dir.empty()) {
      WriteOutput(fs::path(o.peaks_dir) / (rec.id + ".peaks"), FormatTimePredictions(d.peaks));
    }
  }
  WriteOutput(o.out, text);
  std::cout << "recordings " << corpus.recordings().size() << "\tpeaks " << peaks
            << "\taligned " << aligned << "\tdropped " << dropped << "\tmerged " << merged
            << "\n";
}

void CmdEval(const Options &o) {
  const Corpus full = LoadFullCorpus(o);
  const Corpus corpus = Selected(full, o);
  const Scope scope = ParseScope(o.scope);
  std::vector<ReportRow> rows;

  if (!o.predictions.empty()) {
    if (!o.scores.empty() || !o.baseline.empty()) {
      throw ConfigError("--predictions excludes --scores/--baseline");
    }
    const auto set = RestrictToScope(ReadPredictionSet(o.predictions, full), full, scope);
    for (const auto &rec : corpus.recordings()) rows.push_back(RowFromSet(rec.id, set, {&rec}, scope));
  } else {
    const ScoreSource source(o);
    source.RequireAll(corpus);
    const DetectorConfig cfg = MakeDetector(o);
    for (const auto &rec : corpus.recordings()) {
      rows.push_back(RowFromEvaluation(rec.id, EvaluateRecording(source.Load(rec), rec, cfg, scope)));
    }
  }
  rows.push_back(AggregateRow(rows));
  EmitReport(rows, o);
}

void CmdCurve(const Options &o) {
  const Corpus corpus = Selected(LoadFullCorpus(o), o);
  const ScoreSource source(o);
  source.RequireAll(corpus);
  DetectorConfig cfg;
  cfg.nms_radius_s = o.nms_radius;
  cfg.align_radius_s = o.align_radius;
  Validate(cfg);
  std::vector<ScoredRecording> items;
  for (const auto &rec : corpus.recordings()) items.push_back({&rec, source.Load(rec)});
  const auto rows = Sweep(items, ParseThresholdSpec(o.thresholds), cfg, ParseScope(o.scope));
  const std::string table = FormatCurveTable(rows);
  std::cout << table;
  if (!o.out.empty()) WriteOutput(o.out, table);
}

void CmdCombine(const Options &o) {
  if (o.a.empty() || o.b.empty()) throw ConfigError("--a and --b are required");
  const Corpus full = LoadFullCorpus(o);
  const Corpus corpus = Selected(full, o);
  const Scope scope = ParseScope(o.scope);
  const CombineMode mode = ParseOp(o.op);
  const auto a = ReadPredictionSet(o.a, full);
  const auto b = ReadPredictionSet(o.b, full);
  const auto combined = Combine(a, b, mode, full);
  if (!o.out.empty()) WriteOutput(o.out, FormatExternalPredictions(combined, full));

  const auto recs = Pointers(corpus);
  std::vector<ReportRow> rows = {
      RowFromSet("a", RestrictToScope(a, full, scope), recs, scope),
      RowFromSet("b", RestrictToScope(b, full, scope), recs, scope),
      RowFromSet(mode == CombineMode::kAnd ? "a_and_b" : "a_or_b",
                 RestrictToScope(combined, full, scope), recs, scope)};
  std::cout << FormatReportTable(rows);
}

void CmdLoo(const Options &o) {
  const Corpus full = LoadFullCorpus(o);
  const Corpus corpus = Selected(full, o);
  const Scope scope = ParseScope(o.scope);
  const ScoreSource source(o);
  source.RequireAll(corpus);
  const DetectorConfig cfg = MakeDetector(o);
  std::optional<WordBoundarySet> external;
  if (!o.external.empty()) {
    external = RestrictToScope(ReadPredictionSet(o.external, full), full, scope);
  }
  const CombineMode mode = ParseOp(o.op);

  std::vector<ReportRow> rows;
  for (const auto &spk : corpus.Speakers()) {
    const Corpus part = corpus.Subset({spk});
    if (!external) {
      ScoreEvaluation e;
      for (const auto &rec : part.recordings()) e += EvaluateRecording(source.Load(rec), rec, cfg, scope);
      rows.push_back(RowFromEvaluation(spk, e));
      continue;
    }
    WordPredictionsByRecording preds;
    for (const auto &rec : part.recordings()) {
      preds[rec.id] = RunDetection(source.Load(rec), rec, cfg, scope).in_scope;
    }
    const auto audio = FromWordPredictions(preds, full, "audio");
    rows.push_back(RowFromSet(spk, Combine(audio, *external, mode), Pointers(part), scope));
  }
  rows.push_back(AggregateRow(rows));
  EmitReport(rows, o);
}

// ----------------------------------------------------------------- options

void AddCorpus(CLI::App *sub, Options &o) {
  sub->add_option("--corpus", o.corpus, "Annotation JSON files or directories");
  sub->add_option("--speakers", o.speakers, "Only these speakers (comma separated)")
      ->delimiter(',');
}

void AddScoreSource(CLI::App *sub, Options &o) {
  sub->add_option("--scores", o.scores, "Score files or directories of <recording>.scores");
  sub->add_option("--baseline", o.baseline, "Audio files or directories of <recording>.wav");
  sub->add_option("--anchor", o.anchor, "Baseline pause anchor: midpoint|onset");
  sub->add_option("--frame-period", o.frame_period, "Frame period in seconds");
}

void AddDetector(CLI::App *sub, Options &o, bool with_threshold = true) {
  if (with_threshold) {
    sub->add_option(
        "--threshold", o.threshold,
        "Peak threshold (default 0.5, or 0.75 with --mode prosodic+intermediate)");
  }
  sub->add_option("--nms-radius", o.nms_radius, "Peak suppression radius in seconds");
  sub->add_option("--align-radius", o.align_radius, "Max distance to a word end in seconds");
  sub->add_option("--mode", o.mode, "Label mode: prosodic|prosodic+intermediate");
}

void AddCommon(CLI::App *sub, Options &o) {
  sub->add_option("--config", o.config, "JSON object of option values; flags win");
}

}  // namespace

void AddCommands(CLI::App &app, Options &o) {
  auto *labels = app.add_subcommand("labels", "Write fuzzy label curves for a corpus");
  AddCorpus(labels, o);
  labels->add_option("--mode", o.mode, "prosodic|prosodic+intermediate");
  labels->add_option("--frame-period", o.frame_period, "Frame period in seconds");
  labels->add_option("--out", o.out, "Output directory");
  AddCommon(labels, o);

  auto *score = app.add_subcommand("score", "Baseline scoring, chunk stitching, seed averaging");
  score->add_option("--baseline", o.baseline, "Audio files or directories");
  score->add_option("--anchor", o.anchor, "Pause anchor: midpoint|onset");
  score->add_option("--stitch", o.stitch, "Chunk score files in window order");
  score->add_option("--duration", o.duration, "Recording duration for --stitch");
  score->add_option("--chunk-len", o.chunk_len, "Chunk length in seconds");
  score->add_option("--step", o.step, "Chunk step in seconds");
  score->add_option("--average", o.average, "Per-seed score files of one recording");
  score->add_option("--frame-period", o.frame_period, "Frame period in seconds");
  score->add_option("--out", o.out, "Output file (directory for several audio files)");
  AddCommon(score, o);

  auto *detect = app.add_subcommand("detect", "Score curves to word-level predictions");
  AddCorpus(detect, o);
  AddScoreSource(detect, o);
  AddDetector(detect, o);
  detect->add_option("--scope", o.scope, "all|within-sentence");
  detect->add_option("--out", o.out, "Word prediction file");
  detect->add_option("--peaks-dir", o.peaks_dir, "Also write raw peaks as <recording>.peaks");
  AddCommon(detect, o);

  auto *eval = app.add_subcommand("eval", "Evaluate predictions or score curves");
  AddCorpus(eval, o);
  eval->add_option("--predictions", o.predictions,
                   "Word prediction file or external text predictions");
  AddScoreSource(eval, o);
  AddDetector(eval, o);
  eval->add_option("--scope", o.scope, "all|within-sentence");
  eval->add_option("--out", o.out, "Tab-separated report");
  AddCommon(eval, o);

  auto *curve = app.add_subcommand("curve", "Threshold sweep");
  AddCorpus(curve, o);
  AddScoreSource(curve, o);
  AddDetector(curve, o, false);
  curve->add_option("--thresholds", o.thresholds, "lo:hi:step or a,b,c");
  curve->add_option("--scope", o.scope, "all|within-sentence");
  curve->add_option("--out", o.out, "Curve table");
  AddCommon(curve, o);

  auto *combine = app.add_subcommand("combine", "AND/OR of two prediction sets");
  AddCorpus(combine, o);
  combine->add_option("--a", o.a, "First prediction file");
  combine->add_option("--b", o.b, "Second prediction file");
  combine->add_option("--op", o.op, "and|or");
  combine->add_option("--scope", o.scope, "all|within-sentence");
  combine->add_option("--out", o.out, "Combined predictions (external text format)");
  AddCommon(combine, o);

  auto *loo = app.add_subcommand("loo", "Per-speaker report with an aggregate row");
  AddCorpus(loo, o);
  AddScoreSource(loo, o);
  AddDetector(loo, o);
  loo->add_option("--external", o.external, "Text predictions to combine with");
  loo->add_option("--op", o.op, "and|or (with --external)");
  loo->add_option("--scope", o.scope, "all|within-sentence");
  loo->add_option("--out", o.out, "Tab-separated report");
  AddCommon(loo, o);
}

void ApplyConfigFile(CLI::App &sub, Options &o) {
  if (o.config.empty()) return;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ReadFile(o.config));
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(o.config + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(o.config + ": expected a JSON object");
  auto as_string = [](const nlohmann::json &v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  for (const auto &[key, value] : j.items()) {
    CLI::Option *opt = sub.get_option_no_throw("--" + key);
    if (!opt || key == "config") {
      throw ConfigError(o.config + ": unknown option '" + key + "' for " + sub.get_name());
    }
    if (opt->count() > 0) continue;
    std::vector<std::string> inputs;
    if (value.is_array()) {
      for (const auto &v : value) inputs.push_back(as_string(v));
    } else {
      inputs.push_back(as_string(value));
    }
    try {
      opt->add_result(inputs);
      opt->run_callback();
    } catch (const CLI::Error &e) {
      throw ConfigError(o.config + ": " + e.what());
    }
  }
}

void RunCommand(const CLI::App &sub, Options &o) {
  const std::string &name = sub.get_name();
  o.threshold_opt = sub.get_option_no_throw("--threshold");
  if (name == "labels") return CmdLabels(o);
  if (name == "score") return CmdScore(o);
  if (name == "detect") return CmdDetect(o);
  if (name == "eval") return CmdEval(o);
  if (name == "curve") return CmdCurve(o);
  if (name == "combine") return CmdCombine(o);
  if (name == "loo") return CmdLoo(o);
  throw ConfigError("unknown command " + name);
}

}  // namespace phrasebreak::cli
