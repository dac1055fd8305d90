// Copyright 2026 The termmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TERMMAP_NLP_HPP_
#define TERMMAP_NLP_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace termmap::nlp {

// Coarse part-of-speech tag set. The noun-phrase filter only distinguishes
// nouns and adjectives from everything else.
enum class Tag {
  kNoun,
  kProperNoun,
  kAdjective,
  kVerb,
  kDeterminer,
  kPreposition,
  kAdverb,
  kPronoun,
  kNumber,
  kPunctuation,
  kOther,
};

std::string_view ToString(Tag tag);
std::optional<Tag> ParseTag(std::string_view name);

inline bool IsNounTag(Tag tag) { return tag == Tag::kNoun || tag == Tag::kProperNoun; }

// A sentence is a sequence of raw token strings.
using Sentence = std::vector<std::string>;

// Splits text into sentences and tokens. Sentences end at '.', '!' or '?'
// followed by an uppercase letter or the end of input, unless the period
// belongs to a known abbreviation. Hyphenated words stay single tokens.
std::vector<Sentence> Tokenize(std::string_view text);

// True when the lowercased token (including its final period) is treated as
// an abbreviation rather than a sentence end.
bool IsAbbreviation(std::string_view token);

struct TaggedToken {
  std::string surface;
  std::string lower;
  Tag tag = Tag::kOther;
  std::size_t sentence_index = 0;
};

// Lexicon- and rule-based tagger. The lexicon lists one `word<TAB>tag` per
// line; a word may appear on several lines, most likely tag first.
// Immutable after construction and safe to share between threads.
class Tagger {
 public:
  explicit Tagger(std::string_view lexicon_text);

  static Tagger FromFile(const std::string& path);
  // Tagger over the lexicon compiled into the library.
  static const Tagger& Builtin();

  std::vector<TaggedToken> Tag(const std::vector<Sentence>& sentences) const;
  std::vector<TaggedToken> TagSentence(const Sentence& tokens,
                                       std::size_t sentence_index = 0) const;

  // Candidate tags for a token before context disambiguation.
  std::vector<nlp::Tag> Candidates(std::string_view token, bool sentence_initial) const;

  std::size_t lexicon_size() const { return lexicon_.size(); }

 private:
  const std::vector<nlp::Tag>* Lookup(const std::string& lower) const;
  std::vector<nlp::Tag> GuessUnknown(const std::string& lower) const;
  nlp::Tag Disambiguate(const std::vector<nlp::Tag>& candidates,
                        const std::vector<TaggedToken>& done,
                        const Sentence& tokens, std::size_t index) const;

  std::unordered_map<std::string, std::vector<nlp::Tag>> lexicon_;
};

// Maps plural head nouns to singular. Irregular plurals and invariant words
// come from a `plural<TAB>singular` table; everything else goes through
// suffix rules.
class Singularizer {
 public:
  explicit Singularizer(std::string_view irregular_text);

  static Singularizer FromFile(const std::string& path);
  static const Singularizer& Builtin();

  // Singular form of one lowercase word.
  std::string SingularWord(std::string_view word) const;

  // Lowercases all words and singularizes the final one; words are joined
  // with single spaces.
  std::string Singularize(const std::vector<std::string>& words) const;

 private:
  std::unordered_map<std::string, std::string> irregular_;
  std::unordered_set<std::string> singulars_;
};

struct NounPhrase {
  std::string normalized;
  std::size_t word_count = 0;
};

// One phrase occurrence; [begin, end) indexes the tagged token sequence.
struct PhraseOccurrence {
  NounPhrase phrase;
  std::size_t sentence_index = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
};

inline constexpr std::size_t kMaxPhraseWords = 6;

// Applies the noun-phrase filter: within a sentence, every maximal run of
// nouns and adjectives is cut back to its last noun, and the run plus each
// of its suffixes is emitted. Phrases longer than kMaxPhraseWords words are
// skipped.
std::vector<PhraseOccurrence> Chunk(const std::vector<TaggedToken>& tagged,
                                    const Singularizer& singularizer);

// Bundles tokenizer, tagger and chunker. Returns the distinct normalized
// phrases of a text, sorted.
class PhraseExtractor {
 public:
  PhraseExtractor();
  PhraseExtractor(const Tagger& tagger, const Singularizer& singularizer);

  std::vector<std::string> Extract(std::string_view text) const;

 private:
  const Tagger* tagger_;
  const Singularizer* singularizer_;
};

}  // namespace termmap::nlp

#endif  // TERMMAP_NLP_HPP_
