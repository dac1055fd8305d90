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

#include <set>
#include <string>

#include "termmap/error.hpp"
#include "termmap/nlp.hpp"
#include "termmap/util.hpp"

namespace termmap::nlp {

namespace detail {
extern const std::string_view kBuiltinIrregular;
}  // namespace detail

namespace {

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool InPhrase(Tag tag) { return IsNounTag(tag) || tag == Tag::kAdjective; }

}  // namespace

Singularizer::Singularizer(std::string_view irregular_text) {
  std::size_t line_no = 0;
  for (const std::string& line : util::Lines(irregular_text)) {
    ++line_no;
    const std::string_view trimmed = util::Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto fields = util::Split(trimmed, '\t');
    if (fields.size() != 2) {
      throw FormatError("plural table line " + std::to_string(line_no) +
                        ": expected plural<TAB>singular");
    }
    const std::string plural = util::ToLower(util::Trim(fields[0]));
    const std::string singular = util::ToLower(util::Trim(fields[1]));
    irregular_[plural] = singular;
    singulars_.insert(singular);
  }
}

Singularizer Singularizer::FromFile(const std::string& path) {
  return Singularizer(util::ReadFile(path));
}

const Singularizer& Singularizer::Builtin() {
  static const Singularizer singularizer(detail::kBuiltinIrregular);
  return singularizer;
}

std::string Singularizer::SingularWord(std::string_view word) const {
  const std::string w(word);
  if (auto it = irregular_.find(w); it != irregular_.end()) return it->second;
  if (singulars_.count(w) || w.size() <= 3) return w;
  if (w.find_first_of("0123456789") != std::string::npos) return w;
  if (EndsWith(w, "ss") || EndsWith(w, "us") || EndsWith(w, "is")) return w;

  std::string out = w;
  if (EndsWith(w, "ies")) {
    out = w.size() > 4 ? w.substr(0, w.size() - 3) + "y" : w.substr(0, w.size() - 1);
  } else if (EndsWith(w, "sses") || EndsWith(w, "xes") || EndsWith(w, "zzes") ||
             EndsWith(w, "ches") || EndsWith(w, "shes")) {
    out = w.substr(0, w.size() - 2);
  } else if (EndsWith(w, "s")) {
    out = w.substr(0, w.size() - 1);
  }
  // Keeps the mapping idempotent when a rule lands on a listed plural.
  if (auto it = irregular_.find(out); it != irregular_.end()) return it->second;
  return out;
}

std::string Singularizer::Singularize(const std::vector<std::string>& words) const {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ' ';
    const std::string lower = util::ToLower(words[i]);
    out += i + 1 == words.size() ? SingularWord(lower) : lower;
  }
  return out;
}

std::vector<PhraseOccurrence> Chunk(const std::vector<TaggedToken>& tagged,
                                    const Singularizer& singularizer) {
  std::vector<PhraseOccurrence> out;
  std::size_t i = 0;
  while (i < tagged.size()) {
    if (!InPhrase(tagged[i].tag)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    const std::size_t sentence = tagged[i].sentence_index;
    while (i < tagged.size() && InPhrase(tagged[i].tag) && tagged[i].sentence_index == sentence) {
      ++i;
    }
    // Cut the run back to its last noun.
    std::size_t end = i;
    while (end > start && !IsNounTag(tagged[end - 1].tag)) --end;
    if (end == start) continue;

    for (std::size_t b = start; b < end; ++b) {
      const std::size_t words = end - b;
      if (words > kMaxPhraseWords) continue;
      std::vector<std::string> surface;
      surface.reserve(words);
      for (std::size_t k = b; k < end; ++k) surface.push_back(tagged[k].surface);
      out.push_back({{singularizer.Singularize(surface), words}, sentence, b, end});
    }
  }
  return out;
}

PhraseExtractor::PhraseExtractor()
    : tagger_(&Tagger::Builtin()), singularizer_(&Singularizer::Builtin()) {}

PhraseExtractor::PhraseExtractor(const Tagger& tagger, const Singularizer& singularizer)
    : tagger_(&tagger), singularizer_(&singularizer) {}

std::vector<std::string> PhraseExtractor::Extract(std::string_view text) const {
  const auto tagged = tagger_->Tag(Tokenize(text));
  std::set<std::string> phrases;
  for (auto& occ : Chunk(tagged, *singularizer_)) phrases.insert(std::move(occ.phrase.normalized));
  return {phrases.begin(), phrases.end()};
}

}  // namespace termmap::nlp
