// src/combine.cc

#include "phrasebreak/combine.h"

#include <algorithm>
#include <iterator>

#include "phrasebreak/error.h"
#include "phrasebreak/text_io.h"

namespace phrasebreak {

WordBoundarySet Combine(const WordBoundarySet &a, const WordBoundarySet &b,
                        CombineMode mode) {
  WordBoundarySet out;
  const char *op = mode == CombineMode::kAnd ? " AND " : " OR ";
  out.origin = a.origin + op + b.origin;
  auto dst = std::inserter(out.entries, out.entries.end());
  if (mode == CombineMode::kAnd) {
    std::set_intersection(a.entries.begin(), a.entries.end(), b.entries.begin(),
                          b.entries.end(), dst);
  } else {
    std::set_union(a.entries.begin(), a.entries.end(), b.entries.begin(),
                   b.entries.end(), dst);
  }
  return out;
}

WordBoundarySet Combine(const WordBoundarySet &a, const WordBoundarySet &b,
                        CombineMode mode, const Corpus &corpus) {
  ValidateAgainst(a, corpus);
  ValidateAgainst(b, corpus);
  return Combine(a, b, mode);
}

namespace {

std::optional<WordRef> Lookup(const WordKey &k, const Corpus &corpus) {
  const Recording *rec = corpus.Find(k.recording_id);
  if (!rec) return std::nullopt;
  auto s = rec->FindSentence(k.sentence_id);
  if (!s || k.word_index < 0 ||
      k.word_index >= static_cast<int32_t>(rec->sentences[*s].words.size())) {
    return std::nullopt;
  }
  return WordRef{*s, k.word_index};
}

}  // namespace

void ValidateAgainst(const WordBoundarySet &set, const Corpus &corpus) {
  for (const auto &k : set.entries) {
    if (!Lookup(k, corpus)) {
      throw AlignmentError(set.origin + ": no word " + std::to_string(k.word_index) +
                           " in sentence '" + k.sentence_id + "' of recording '" +
                           k.recording_id + "'");
    }
  }
}

WordBoundarySet RestrictToScope(const WordBoundarySet &set, const Corpus &corpus,
                                Scope scope) {
  ValidateAgainst(set, corpus);
  if (scope == Scope::kAll) return set;
  WordBoundarySet out;
  out.origin = set.origin;
  for (const auto &k : set.entries) {
    const WordRef r = *Lookup(k, corpus);
    if (!corpus.Get(k.recording_id).IsSentenceFinal(r)) out.entries.insert(k);
  }
  return out;
}

std::set<WordRef> RefsFor(const WordBoundarySet &set, const Recording &rec) {
  std::set<WordRef> out;
  auto it = set.entries.lower_bound(WordKey{rec.id, "", INT32_MIN});
  for (; it != set.entries.end() && it->recording_id == rec.id; ++it) {
    auto s = rec.FindSentence(it->sentence_id);
    if (!s || it->word_index < 0 ||
        it->word_index >= static_cast<int32_t>(rec.sentences[*s].words.size())) {
      throw AlignmentError("no word " + std::to_string(it->word_index) + " in sentence '" +
                           it->sentence_id + "' of recording '" + rec.id + "'");
    }
    out.insert({*s, it->word_index});
  }
  return out;
}

WordBoundarySet FromWordPredictions(const WordPredictionsByRecording &preds,
                                    const Corpus &corpus, std::string origin) {
  WordBoundarySet out;
  out.origin = std::move(origin);
  for (const auto &[rec_id, list] : preds) {
    const Recording &rec = corpus.Get(rec_id);
    for (const auto &p : list) {
      Resolve(p, rec);
      out.entries.insert({rec_id, p.sentence_id, p.word_index});
    }
  }
  return out;
}

WordBoundarySet ParseExternalPredictions(std::string_view text, const std::string &source,
                                         const Corpus &corpus) {
  WordBoundarySet out;
  out.origin = source;
  std::set<std::pair<std::string, std::string>> seen;
  int line_no = 0;
  for (auto line : Split(text, '\n')) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto fields = Split(Trim(line), '\t');
    if (fields.size() != 3) {
      throw ParseError(source, line_no, "expected recording_id<TAB>sentence_id<TAB>tokens");
    }
    const std::string rec_id(fields[0]), sent_id(fields[1]);
    const Recording *rec = corpus.Find(rec_id);
    if (!rec) throw ParseError(source, line_no, "unknown recording '" + rec_id + "'");
    auto s = rec->FindSentence(sent_id);
    if (!s) {
      throw ParseError(source, line_no,
                       "unknown sentence '" + sent_id + "' in recording '" + rec_id + "'");
    }
    if (!seen.emplace(rec_id, sent_id).second) {
      throw ParseError(source, line_no, "sentence '" + sent_id + "' listed twice");
    }

    int32_t words = 0;
    bool prev_was_word = false;
    std::vector<int32_t> breaks;
    for (auto tok : SplitWhitespace(fields[2])) {
      if (tok == "|") {
        if (!prev_was_word) {
          throw ParseError(source, line_no,
                           "sentence '" + sent_id + "': '|' must follow a word");
        }
        breaks.push_back(words - 1);
        prev_was_word = false;
      } else {
        ++words;
        prev_was_word = true;
      }
    }
    const auto expected = static_cast<int32_t>(rec->sentences[*s].words.size());
    if (words != expected) {
      throw AlignmentError(source + ":" + std::to_string(line_no) + ": sentence '" +
                           sent_id + "' has " + std::to_string(words) +
                           " words, annotation has " + std::to_string(expected));
    }
    for (int32_t w : breaks) out.entries.insert({rec_id, sent_id, w});
  }
  return out;
}

WordBoundarySet ReadExternalPredictions(const std::filesystem::path &path,
                                        const Corpus &corpus) {
  return ParseExternalPredictions(ReadFile(path), path.string(), corpus);
}

std::string FormatExternalPredictions(const WordBoundarySet &set, const Corpus &corpus) {
  ValidateAgainst(set, corpus);
  std::string out;
  for (const auto &rec : corpus.recordings()) {
    for (const auto &sent : rec.sentences) {
      out += rec.id + '\t' + sent.id + '\t';
      for (size_t w = 0; w < sent.words.size(); ++w) {
        if (w) out += ' ';
        out += sent.words[w].text;
        if (set.entries.count({rec.id, sent.id, static_cast<int32_t>(w)})) out += " |";
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace phrasebreak
