// phrasebreak/corpus.h
//
// Time-aligned transcripts with expert boundary labels. A boundary always
// sits at the end of the word that carries it.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phrasebreak {

enum class BoundaryLabel { kNone, kIntermediate, kProsodic };

std::string_view ToString(BoundaryLabel label);
std::optional<BoundaryLabel> BoundaryLabelFromString(std::string_view s);

// Which reference labels count as boundaries.
enum class BoundaryKind { kProsodicOnly, kProsodicAndIntermediate };

// kAll includes sentence-final word ends; kWithinSentence drops them.
enum class Scope { kAll, kWithinSentence };

bool Matches(BoundaryLabel label, BoundaryKind kind);

struct Word {
  std::string text;
  double start_s = 0;
  double end_s = 0;
  BoundaryLabel boundary_after = BoundaryLabel::kNone;

  bool operator==(const Word &) const = default;
};

struct Sentence {
  std::string id;
  std::vector<Word> words;

  bool operator==(const Sentence &) const = default;
};

// Identifies one word end within a recording.
struct WordRef {
  int32_t sentence = 0;  // index into Recording::sentences
  int32_t word = 0;      // index into Sentence::words

  auto operator<=>(const WordRef &) const = default;
};

struct ReferenceBoundary {
  double time_s = 0;
  BoundaryLabel label = BoundaryLabel::kNone;
  WordRef ref;

  bool operator==(const ReferenceBoundary &) const = default;
};

struct Recording {
  std::string id;
  std::string speaker_id;
  double duration_s = 0;
  std::vector<Sentence> sentences;

  bool operator==(const Recording &) const = default;

  const Word &word(WordRef r) const { return sentences[r.sentence].words[r.word]; }
  bool IsSentenceFinal(WordRef r) const {
    return r.word + 1 == static_cast<int32_t>(sentences[r.sentence].words.size());
  }
  bool InScope(WordRef r, Scope scope) const {
    return scope == Scope::kAll || !IsSentenceFinal(r);
  }

  // Index of the sentence with the given id, if any.
  std::optional<int32_t> FindSentence(std::string_view sentence_id) const;

  // Every word end in time order.
  std::vector<WordRef> AllWords() const;
};

// Throws ValidationError naming the offending word when any data-model
// invariant is violated.
void Validate(const Recording &rec);

Recording ParseAnnotations(const std::filesystem::path &path);
// `source` is used in error messages only.
Recording ParseAnnotationsText(std::string_view text,
                               const std::string &source = "<memory>");

std::string SerializeAnnotations(const Recording &rec);
void WriteAnnotations(const Recording &rec, const std::filesystem::path &path);

// Reference boundaries of the requested kind, ordered by (strictly
// increasing) time.
std::vector<ReferenceBoundary> ReferenceBoundaries(const Recording &rec,
                                                   BoundaryKind kind,
                                                   Scope scope);

// A set of recordings keyed by id, as loaded from one or more annotation
// files.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Recording> recordings);

  // Accepts annotation files and directories (every *.json inside, sorted).
  static Corpus Load(const std::vector<std::filesystem::path> &paths);

  const std::vector<Recording> &recordings() const { return recordings_; }
  const Recording *Find(std::string_view recording_id) const;
  const Recording &Get(std::string_view recording_id) const;

  std::vector<std::string> Speakers() const;
  // Recordings of the given speakers, in corpus order.
  Corpus Subset(const std::vector<std::string> &speakers) const;

 private:
  std::vector<Recording> recordings_;
  std::map<std::string, size_t, std::less<>> index_;
};

}  // namespace phrasebreak
