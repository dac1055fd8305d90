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

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "termmap/error.hpp"
#include "termmap/nlp.hpp"
#include "termmap/util.hpp"

namespace termmap::nlp {

using PosTag = Tag;

namespace detail {
extern const std::string_view kBuiltinLexicon;
}  // namespace detail

namespace {

constexpr std::array<std::pair<PosTag, std::string_view>, 11> kTagNames = {{
    {PosTag::kNoun, "noun"},
    {PosTag::kProperNoun, "proper-noun"},
    {PosTag::kAdjective, "adjective"},
    {PosTag::kVerb, "verb"},
    {PosTag::kDeterminer, "determiner"},
    {PosTag::kPreposition, "preposition"},
    {PosTag::kAdverb, "adverb"},
    {PosTag::kPronoun, "pronoun"},
    {PosTag::kNumber, "number"},
    {PosTag::kPunctuation, "punctuation"},
    {PosTag::kOther, "other"},
}};

bool Contains(const std::vector<PosTag>& tags, PosTag tag) {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool OneOf(std::string_view word, std::initializer_list<std::string_view> words) {
  return std::find(words.begin(), words.end(), word) != words.end();
}

bool IsModal(std::string_view w) {
  return OneOf(w, {"can", "could", "may", "might", "must", "shall", "should", "will", "would"});
}

bool IsSubjectPronoun(std::string_view w) {
  return OneOf(w, {"i", "we", "you", "they", "he", "she", "it"});
}

bool IsPossessive(std::string_view w) {
  return OneOf(w, {"our", "their", "its", "his", "her", "my", "your", "whose"});
}

bool IsAuxiliary(std::string_view w) {
  return OneOf(w, {"be", "is", "are", "was", "were", "been", "being", "am", "has", "have",
                   "had", "having", "get", "gets", "got"});
}

bool LooksPlural(std::string_view w) {
  return w.size() > 3 && w.back() == 's' && !EndsWith(w, "ss") && !EndsWith(w, "us") &&
         !EndsWith(w, "is");
}

bool IsPunctuationToken(std::string_view tok) {
  for (std::size_t i = 0; i < tok.size();) {
    const auto c = static_cast<unsigned char>(tok[i]);
    if (c == 0xE2 && i + 2 < tok.size() && static_cast<unsigned char>(tok[i + 1]) == 0x80) {
      i += 3;
      continue;
    }
    if (c >= 0x80 || std::isalnum(c)) return false;
    ++i;
  }
  return !tok.empty();
}

bool IsNumberToken(std::string_view tok) {
  if (tok.empty()) return false;
  std::size_t start = (tok[0] == '-' || tok[0] == '+') && tok.size() > 1 ? 1 : 0;
  if (!std::isdigit(static_cast<unsigned char>(tok[start]))) return false;
  // Leading digit: "10,000", "3.5", "1990s", "2nd", "95%".
  return true;
}

bool IsAcronym(std::string_view tok) {
  int upper = 0;
  for (char c : tok) {
    if (c >= 'A' && c <= 'Z') {
      ++upper;
    } else if (!(c >= '0' && c <= '9') && c != '-') {
      return false;
    }
  }
  return upper >= 2;
}

}  // namespace

std::string_view ToString(PosTag tag) {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "other";
}

std::optional<PosTag> ParseTag(std::string_view name) {
  for (const auto& [t, n] : kTagNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

Tagger::Tagger(std::string_view lexicon_text) {
  std::size_t line_no = 0;
  for (const std::string& line : util::Lines(lexicon_text)) {
    ++line_no;
    const std::string_view trimmed = util::Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto fields = util::Split(trimmed, '\t');
    if (fields.size() != 2) {
      throw FormatError("lexicon line " + std::to_string(line_no) + ": expected word<TAB>tag");
    }
    const auto tag = ParseTag(util::Trim(fields[1]));
    if (!tag) {
      throw FormatError("lexicon line " + std::to_string(line_no) + ": unknown tag '" +
                        fields[1] + "'");
    }
    auto& tags = lexicon_[util::ToLower(util::Trim(fields[0]))];
    if (!Contains(tags, *tag)) tags.push_back(*tag);
  }
}

Tagger Tagger::FromFile(const std::string& path) { return Tagger(util::ReadFile(path)); }

const Tagger& Tagger::Builtin() {
  static const Tagger tagger(detail::kBuiltinLexicon);
  return tagger;
}

const std::vector<PosTag>* Tagger::Lookup(const std::string& lower) const {
  auto it = lexicon_.find(lower);
  return it == lexicon_.end() ? nullptr : &it->second;
}

std::vector<PosTag> Tagger::GuessUnknown(const std::string& w) const {
  // Inflected forms of lexicon entries.
  auto stem_tags = [&](std::initializer_list<std::string> stems) -> const std::vector<PosTag>* {
    for (const auto& stem : stems) {
      if (stem.size() < 2) continue;
      if (const auto* tags = Lookup(stem)) return tags;
    }
    return nullptr;
  };
  auto verb_stem = [&](std::initializer_list<std::string> stems) {
    return std::any_of(stems.begin(), stems.end(), [&](const std::string& stem) {
      const auto* tags = stem.size() < 2 ? nullptr : Lookup(stem);
      return tags && Contains(*tags, PosTag::kVerb);
    });
  };
  auto drop = [&](std::size_t n) { return w.substr(0, w.size() - n); };

  if (w.size() > 3 && w.back() == 's' && !EndsWith(w, "ss")) {
    const std::vector<PosTag>* base = nullptr;
    if (EndsWith(w, "ies")) base = stem_tags({drop(3) + "y"});
    if (!base && EndsWith(w, "es")) base = stem_tags({drop(2), drop(1)});
    if (!base) base = stem_tags({drop(1)});
    if (base) {
      std::vector<PosTag> out;
      for (PosTag t : *base) {
        if ((IsNounTag(t) || t == PosTag::kVerb) && !Contains(out, t == PosTag::kProperNoun ? PosTag::kNoun : t)) {
          out.push_back(t == PosTag::kProperNoun ? PosTag::kNoun : t);
        }
      }
      if (!out.empty()) return out;
    }
  }
  if (w.size() > 4 && EndsWith(w, "ed")) {
    const std::string d = drop(2);
    const std::string doubled = d.size() > 2 && d[d.size() - 1] == d[d.size() - 2] ? drop(3) : "";
    if (verb_stem({d, drop(1), EndsWith(w, "ied") ? drop(3) + "y" : "", doubled})) {
      return {PosTag::kVerb};
    }
  }
  if (w.size() > 4 && EndsWith(w, "ing")) {
    const std::string d = drop(3);
    const std::string doubled = d.size() > 2 && d[d.size() - 1] == d[d.size() - 2] ? drop(4) : "";
    if (verb_stem({d, d + "e", doubled})) return {PosTag::kVerb, PosTag::kNoun};
  }

  // Derivational suffixes.
  if (w.size() > 4 && EndsWith(w, "ly")) return {PosTag::kAdverb};
  if (w.size() > 5 && EndsWith(w, "ing")) return {PosTag::kVerb, PosTag::kNoun};
  if (w.size() > 4 && EndsWith(w, "ed")) return {PosTag::kVerb};
  for (std::string_view suffix : {"ous", "ive", "able", "ible", "ful", "less", "ical", "al",
                                  "ian", "ary", "istic"}) {
    if (w.size() > suffix.size() + 2 && EndsWith(w, suffix)) return {PosTag::kAdjective};
  }
  return {PosTag::kNoun};
}

std::vector<PosTag> Tagger::Candidates(std::string_view token, bool sentence_initial) const {
  if (IsPunctuationToken(token)) return {PosTag::kPunctuation};
  if (IsNumberToken(token)) return {PosTag::kNumber};
  const std::string lower = util::ToLower(token);
  const bool capitalized = token[0] >= 'A' && token[0] <= 'Z';
  if (IsAcronym(token) && !Lookup(lower)) return {PosTag::kProperNoun};
  if (IsAcronym(token) && token.size() > 2) return {PosTag::kProperNoun};
  if (const auto* tags = Lookup(lower)) return *tags;
  if (capitalized && !sentence_initial) return {PosTag::kProperNoun};

  if (lower.find('-') != std::string::npos) {
    const auto parts = util::Split(lower, '-');
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      if (const auto* tags = Lookup(parts[i])) {
        const PosTag first = tags->front();
        if (first == PosTag::kDeterminer || first == PosTag::kPreposition || first == PosTag::kOther ||
            first == PosTag::kPronoun) {
          return {PosTag::kAdjective};
        }
      }
    }
    const std::string& last = parts.back();
    if (last.empty()) return {PosTag::kNoun};
    std::vector<PosTag> tags;
    if (const auto* known = Lookup(last)) {
      tags = *known;
    } else {
      tags = GuessUnknown(last);
    }
    if (tags.front() == PosTag::kVerb) return {PosTag::kAdjective};
    if (tags.front() == PosTag::kProperNoun) return {PosTag::kNoun};
    return tags;
  }
  return GuessUnknown(lower);
}

PosTag Tagger::Disambiguate(const std::vector<PosTag>& cand, const std::vector<TaggedToken>& done,
                         const Sentence& tokens, std::size_t index) const {
  if (cand.size() == 1) return cand.front();

  const bool has_prev = index > 0 && !done.empty();
  const PosTag prev = has_prev ? done.back().tag : PosTag::kPunctuation;
  const std::string prev_lower = has_prev ? done.back().lower : std::string();
  const std::string word = util::ToLower(tokens[index]);
  const std::vector<PosTag> next =
      index + 1 < tokens.size() ? Candidates(tokens[index + 1], false) : std::vector<PosTag>{};
  const PosTag next_first = next.empty() ? PosTag::kPunctuation : next.front();
  auto next_is = [&](std::initializer_list<PosTag> tags) {
    return std::find(tags.begin(), tags.end(), next_first) != tags.end();
  };

  const bool noun = Contains(cand, PosTag::kNoun);
  const bool verb = Contains(cand, PosTag::kVerb);
  const bool adjective = Contains(cand, PosTag::kAdjective);

  if (word == "that") {
    const bool det_context = !has_prev || prev == PosTag::kPreposition || prev == PosTag::kPunctuation;
    if (det_context && next_is({PosTag::kNoun, PosTag::kAdjective}) && Contains(cand, PosTag::kDeterminer)) {
      return PosTag::kDeterminer;
    }
    return Contains(cand, PosTag::kOther) ? PosTag::kOther : cand.front();
  }

  if (Contains(cand, PosTag::kDeterminer) && Contains(cand, PosTag::kAdverb)) {
    return next_is({PosTag::kAdjective, PosTag::kAdverb}) ? PosTag::kAdverb : PosTag::kDeterminer;
  }
  if (Contains(cand, PosTag::kDeterminer) && Contains(cand, PosTag::kPronoun)) {
    return next_is({PosTag::kNoun, PosTag::kProperNoun, PosTag::kAdjective, PosTag::kNumber})
               ? PosTag::kDeterminer
               : PosTag::kPronoun;
  }

  if (noun && verb) {
    if (prev_lower == "to" || IsModal(prev_lower) || IsSubjectPronoun(prev_lower)) {
      return PosTag::kVerb;
    }
    if (prev == PosTag::kDeterminer || prev == PosTag::kAdjective || prev == PosTag::kNumber ||
        IsPossessive(prev_lower)) {
      return PosTag::kNoun;
    }
    if (prev == PosTag::kPreposition) {
      if (EndsWith(word, "ing") && next_is({PosTag::kDeterminer, PosTag::kPronoun})) return PosTag::kVerb;
      return PosTag::kNoun;
    }
    if (prev == PosTag::kAdverb) return PosTag::kVerb;
    if (IsNounTag(prev)) {
      if (EndsWith(word, "ing")) return cand.front();
      if (LooksPlural(prev_lower) && !LooksPlural(word)) return PosTag::kVerb;
      if (!LooksPlural(prev_lower) && LooksPlural(word) &&
          next_is({PosTag::kDeterminer, PosTag::kPronoun, PosTag::kPreposition, PosTag::kNumber})) {
        return PosTag::kVerb;
      }
      return PosTag::kNoun;
    }
    if (prev == PosTag::kVerb) {
      if (IsAuxiliary(prev_lower) && EndsWith(word, "ed")) return PosTag::kVerb;
      return PosTag::kNoun;
    }
    if (prev == PosTag::kOther && done.size() >= 2) {
      // Coordination: "collect and analyze" versus "terms and concepts".
      const PosTag before = done[done.size() - 2].tag;
      if (before == PosTag::kVerb) return PosTag::kVerb;
      if (IsNounTag(before)) return PosTag::kNoun;
    }
    if (!has_prev || prev == PosTag::kPunctuation) {
      if (EndsWith(word, "ing")) return cand.front();
      return next_is({PosTag::kDeterminer, PosTag::kPronoun}) ? PosTag::kVerb : PosTag::kNoun;
    }
    return cand.front();
  }

  if (adjective && verb) {
    if (IsAuxiliary(prev_lower)) return PosTag::kVerb;
    return cand.front();
  }

  if (adjective && noun) {
    if (next_is({PosTag::kNoun, PosTag::kProperNoun, PosTag::kAdjective})) return PosTag::kAdjective;
    if (prev == PosTag::kDeterminer || prev == PosTag::kAdjective) return PosTag::kNoun;
    return cand.front();
  }
  return cand.front();
}

std::vector<TaggedToken> Tagger::TagSentence(const Sentence& tokens,
                                             std::size_t sentence_index) const {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    // The first word after any opening punctuation counts as sentence-initial.
    const bool initial = std::all_of(out.begin(), out.end(), [](const TaggedToken& t) {
      return t.tag == PosTag::kPunctuation;
    });
    const std::vector<PosTag> cand = Candidates(tokens[i], initial);
    TaggedToken tok;
    tok.surface = tokens[i];
    tok.lower = util::ToLower(tokens[i]);
    tok.tag = Disambiguate(cand, out, tokens, i);
    tok.sentence_index = sentence_index;
    out.push_back(std::move(tok));
  }
  return out;
}

std::vector<TaggedToken> Tagger::Tag(const std::vector<Sentence>& sentences) const {
  std::vector<TaggedToken> out;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    auto tagged = TagSentence(sentences[s], s);
    out.insert(out.end(), std::make_move_iterator(tagged.begin()),
               std::make_move_iterator(tagged.end()));
  }
  return out;
}

}  // namespace termmap::nlp
