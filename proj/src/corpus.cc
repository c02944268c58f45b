// src/corpus.cc

#include "phrasebreak/corpus.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"
#include "phrasebreak/error.h"
#include "phrasebreak/text_io.h"

namespace phrasebreak {

using nlohmann::json;

std::string_view ToString(BoundaryLabel label) {
  switch (label) {
    case BoundaryLabel::kNone:
      return "none";
    case BoundaryLabel::kIntermediate:
      return "intermediate";
    case BoundaryLabel::kProsodic:
      return "prosodic";
  }
  return "none";
}

std::optional<BoundaryLabel> BoundaryLabelFromString(std::string_view s) {
  if (s == "none") return BoundaryLabel::kNone;
  if (s == "intermediate") return BoundaryLabel::kIntermediate;
  if (s == "prosodic") return BoundaryLabel::kProsodic;
  return std::nullopt;
}

bool Matches(BoundaryLabel label, BoundaryKind kind) {
  if (label == BoundaryLabel::kProsodic) return true;
  return label == BoundaryLabel::kIntermediate &&
         kind == BoundaryKind::kProsodicAndIntermediate;
}

std::optional<int32_t> Recording::FindSentence(
    std::string_view sentence_id) const {
  for (size_t i = 0; i < sentences.size(); ++i) {
    if (sentences[i].id == sentence_id) return static_cast<int32_t>(i);
  }
  return std::nullopt;
}

std::vector<WordRef> Recording::AllWords() const {
  std::vector<WordRef> out;
  for (size_t s = 0; s < sentences.size(); ++s) {
    for (size_t w = 0; w < sentences[s].words.size(); ++w) {
      out.push_back({static_cast<int32_t>(s), static_cast<int32_t>(w)});
    }
  }
  return out;
}

namespace {

std::string Describe(const Recording &rec, size_t s, size_t w) {
  const auto &sent = rec.sentences[s];
  return "recording '" + rec.id + "' sentence '" + sent.id + "' word " +
         std::to_string(w) + " ('" + sent.words[w].text + "')";
}

}  // namespace

void Validate(const Recording &rec) {
  if (rec.id.empty()) throw ValidationError("recording id is empty");
  if (!(rec.duration_s > 0) || !std::isfinite(rec.duration_s)) {
    throw ValidationError("recording '" + rec.id +
                          "': duration_s must be positive and finite");
  }
  std::set<std::string> sentence_ids;
  std::set<double> word_ends;
  double prev_end = 0;
  bool first = true;
  for (size_t s = 0; s < rec.sentences.size(); ++s) {
    const auto &sent = rec.sentences[s];
    if (!sentence_ids.insert(sent.id).second) {
      throw ValidationError("recording '" + rec.id + "': duplicate sentence id '" +
                            sent.id + "'");
    }
    if (sent.words.empty()) {
      throw ValidationError("recording '" + rec.id + "' sentence '" + sent.id +
                            "' has no words");
    }
    for (size_t w = 0; w < sent.words.size(); ++w) {
      const Word &word = sent.words[w];
      if (word.text.empty() ||
          word.text.find_first_of(" \t\r\n") != std::string::npos ||
          word.text == "|") {
        throw ValidationError(Describe(rec, s, w) +
                              ": text must be a single non-empty token");
      }
      if (!std::isfinite(word.start_s) || !std::isfinite(word.end_s) ||
          word.start_s < 0 || !(word.start_s < word.end_s)) {
        throw ValidationError(Describe(rec, s, w) +
                              ": requires 0 <= start_s < end_s");
      }
      if (word.end_s > rec.duration_s) {
        throw ValidationError(Describe(rec, s, w) + ": ends after duration_s");
      }
      if (!first && word.start_s < prev_end) {
        throw ValidationError(Describe(rec, s, w) +
                              ": overlaps or precedes the previous word");
      }
      if (!word_ends.insert(word.end_s).second) {
        throw ValidationError(Describe(rec, s, w) +
                              ": end time shared with another word");
      }
      prev_end = word.end_s;
      first = false;
    }
  }
}

namespace {

int LineOfByte(std::string_view text, size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + byte, '\n'));
}

const json &Field(const json &obj, const char *key, const std::string &where,
                  const std::string &source) {
  if (!obj.is_object()) throw ParseError(source, 0, where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(source, 0, where + ": missing field '" + key + "'");
  }
  return *it;
}

std::string StringField(const json &obj, const char *key, const std::string &where,
                        const std::string &source) {
  const json &v = Field(obj, key, where, source);
  if (!v.is_string()) {
    throw ParseError(source, 0, where + "." + key + ": expected a string");
  }
  return v.get<std::string>();
}

double NumberField(const json &obj, const char *key, const std::string &where,
                   const std::string &source) {
  const json &v = Field(obj, key, where, source);
  if (!v.is_number()) {
    throw ParseError(source, 0, where + "." + key + ": expected a number");
  }
  return v.get<double>();
}

}  // namespace

Recording ParseAnnotationsText(std::string_view text, const std::string &source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    throw ParseError(source, LineOfByte(text, e.byte == 0 ? 0 : e.byte - 1),
                     "malformed JSON");
  }

  Recording rec;
  rec.id = StringField(doc, "recording_id", "$", source);
  rec.speaker_id = StringField(doc, "speaker_id", "$", source);
  rec.duration_s = NumberField(doc, "duration_s", "$", source);
  const json &sentences = Field(doc, "sentences", "$", source);
  if (!sentences.is_array()) {
    throw ParseError(source, 0, "$.sentences: expected an array");
  }
  for (size_t s = 0; s < sentences.size(); ++s) {
    const std::string where = "$.sentences[" + std::to_string(s) + "]";
    Sentence sent;
    sent.id = StringField(sentences[s], "id", where, source);
    const json &words = Field(sentences[s], "words", where, source);
    if (!words.is_array()) throw ParseError(source, 0, where + ".words: expected an array");
    for (size_t w = 0; w < words.size(); ++w) {
      const std::string wwhere = where + ".words[" + std::to_string(w) + "]";
      Word word;
      word.text = StringField(words[w], "text", wwhere, source);
      word.start_s = NumberField(words[w], "start_s", wwhere, source);
      word.end_s = NumberField(words[w], "end_s", wwhere, source);
      const std::string label = StringField(words[w], "boundary_after", wwhere, source);
      auto parsed = BoundaryLabelFromString(label);
      if (!parsed) {
        throw ParseError(source, 0,
                         wwhere + ".boundary_after: unknown label '" + label + "'");
      }
      word.boundary_after = *parsed;
      sent.words.push_back(std::move(word));
    }
    rec.sentences.push_back(std::move(sent));
  }
  try {
    Validate(rec);
  } catch (const ValidationError &e) {
    throw ValidationError(source + ": " + e.what());
  }
  return rec;
}

Recording ParseAnnotations(const std::filesystem::path &path) {
  return ParseAnnotationsText(ReadFile(path), path.string());
}

std::string SerializeAnnotations(const Recording &rec) {
  json doc = json::object();
  doc["recording_id"] = rec.id;
  doc["speaker_id"] = rec.speaker_id;
  doc["duration_s"] = rec.duration_s;
  json sentences = json::array();
  for (const auto &sent : rec.sentences) {
    json words = json::array();
    for (const auto &w : sent.words) {
      words.push_back({{"text", w.text},
                       {"start_s", w.start_s},
                       {"end_s", w.end_s},
                       {"boundary_after", std::string(ToString(w.boundary_after))}});
    }
    sentences.push_back({{"id", sent.id}, {"words", std::move(words)}});
  }
  doc["sentences"] = std::move(sentences);
  return doc.dump(2) + "\n";
}

void WriteAnnotations(const Recording &rec, const std::filesystem::path &path) {
  WriteFileAtomic(path, SerializeAnnotations(rec));
}

std::vector<ReferenceBoundary> ReferenceBoundaries(const Recording &rec,
                                                   BoundaryKind kind,
                                                   Scope scope) {
  std::vector<ReferenceBoundary> out;
  for (WordRef r : rec.AllWords()) {
    const Word &w = rec.word(r);
    if (!rec.InScope(r, scope) || !Matches(w.boundary_after, kind)) continue;
    out.push_back({w.end_s, w.boundary_after, r});
  }
  return out;
}

Corpus::Corpus(std::vector<Recording> recordings)
    : recordings_(std::move(recordings)) {
  for (size_t i = 0; i < recordings_.size(); ++i) {
    if (!index_.emplace(recordings_[i].id, i).second) {
      throw ValidationError("duplicate recording id '" + recordings_[i].id + "'");
    }
  }
}

Corpus Corpus::Load(const std::vector<std::filesystem::path> &paths) {
  namespace fs = std::filesystem;
  std::vector<Recording> recs;
  for (const auto &p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto &e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".json") {
          files.push_back(e.path());
        }
      }
      std::sort(files.begin(), files.end());
      for (const auto &f : files) recs.push_back(ParseAnnotations(f));
    } else {
      recs.push_back(ParseAnnotations(p));
    }
  }
  return Corpus(std::move(recs));
}

const Recording *Corpus::Find(std::string_view recording_id) const {
  auto it = index_.find(recording_id);
  return it == index_.end() ? nullptr : &recordings_[it->second];
}

const Recording &Corpus::Get(std::string_view recording_id) const {
  const Recording *r = Find(recording_id);
  if (!r) {
    throw ValidationError("unknown recording '" + std::string(recording_id) + "'");
  }
  return *r;
}

std::vector<std::string> Corpus::Speakers() const {
  std::vector<std::string> out;
  for (const auto &r : recordings_) {
    if (std::find(out.begin(), out.end(), r.speaker_id) == out.end()) {
      out.push_back(r.speaker_id);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Corpus Corpus::Subset(const std::vector<std::string> &speakers) const {
  const auto known = Speakers();
  for (const auto &s : speakers) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      throw ConfigError("speaker '" + s + "' is not in the corpus");
    }
  }
  std::vector<Recording> recs;
  for (const auto &r : recordings_) {
    if (std::find(speakers.begin(), speakers.end(), r.speaker_id) != speakers.end()) {
      recs.push_back(r);
    }
  }
  return Corpus(std::move(recs));
}

}  // namespace phrasebreak
