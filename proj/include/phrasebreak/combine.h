// phrasebreak/combine.h
//
// Word-level boundary sets from different predictors and their fusion.
// External (text model) predictions use one sentence per line:
//
//   recording_id<TAB>sentence_id<TAB>word word | word word
//
// where a "|" token marks a boundary after the preceding word.

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>

#include "phrasebreak/corpus.h"
#include "phrasebreak/detect.h"

namespace phrasebreak {

struct WordKey {
  std::string recording_id;
  std::string sentence_id;
  int32_t word_index = 0;

  auto operator<=>(const WordKey &) const = default;
};

struct WordBoundarySet {
  std::set<WordKey> entries;
  std::string origin;

  bool operator==(const WordBoundarySet &o) const { return entries == o.entries; }
};

enum class CombineMode { kAnd, kOr };

WordBoundarySet Combine(const WordBoundarySet &a, const WordBoundarySet &b,
                        CombineMode mode);
// Validates both inputs against `corpus` first.
WordBoundarySet Combine(const WordBoundarySet &a, const WordBoundarySet &b,
                        CombineMode mode, const Corpus &corpus);

// Throws AlignmentError for an entry naming a word the corpus lacks.
void ValidateAgainst(const WordBoundarySet &set, const Corpus &corpus);

// Drops entries on sentence-final words when scope is kWithinSentence.
WordBoundarySet RestrictToScope(const WordBoundarySet &set, const Corpus &corpus,
                                Scope scope);

// Entries of one recording as word references.
std::set<WordRef> RefsFor(const WordBoundarySet &set, const Recording &rec);

WordBoundarySet FromWordPredictions(const WordPredictionsByRecording &preds,
                                    const Corpus &corpus, std::string origin);

WordBoundarySet ParseExternalPredictions(std::string_view text, const std::string &source,
                                         const Corpus &corpus);
WordBoundarySet ReadExternalPredictions(const std::filesystem::path &path,
                                        const Corpus &corpus);

// One line per sentence of `corpus`, in corpus order.
std::string FormatExternalPredictions(const WordBoundarySet &set, const Corpus &corpus);

}  // namespace phrasebreak
