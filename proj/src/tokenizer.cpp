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
#include <string_view>

#include "termmap/nlp.hpp"
#include "termmap/util.hpp"

namespace termmap::nlp {
namespace {

constexpr std::array<std::string_view, 46> kAbbreviations = {
    "e.g.",  "i.e.",  "etc.",  "et al.", "al.",   "vs.",   "cf.",   "viz.",
    "fig.",  "figs.", "eq.",   "eqs.",   "no.",   "nos.",  "vol.",  "pp.",
    "p.",    "ed.",   "eds.",  "dr.",    "mr.",   "mrs.",  "ms.",   "prof.",
    "jr.",   "sr.",   "st.",   "inc.",   "ltd.",  "co.",   "corp.", "dept.",
    "univ.", "approx.", "resp.", "sec.",  "ch.",   "u.s.",  "u.k.",  "e.u.",
    "jan.",  "feb.",  "aug.",  "sept.",  "oct.",  "dec."};

// UTF-8 encodings of typographic quotes and dashes, treated as punctuation.
constexpr std::array<std::string_view, 7> kUnicodePunct = {
    "\xE2\x80\x9C", "\xE2\x80\x9D", "\xE2\x80\x98", "\xE2\x80\x99",
    "\xE2\x80\x93", "\xE2\x80\x94", "\xE2\x80\xA6"};

bool IsAsciiPunct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && !std::isalnum(u) && !util::IsSpace(c);
}

bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }

// Length of a UTF-8 punctuation sequence at the start of s, or 0.
std::size_t UnicodePunctAt(std::string_view s) {
  for (auto p : kUnicodePunct) {
    if (s.substr(0, p.size()) == p) return p.size();
  }
  return 0;
}

std::size_t UnicodePunctBefore(std::string_view s) {
  for (auto p : kUnicodePunct) {
    if (s.size() >= p.size() && s.substr(s.size() - p.size()) == p) return p.size();
  }
  return 0;
}

bool IsSentenceFinal(std::string_view tok) {
  return !tok.empty() && std::all_of(tok.begin(), tok.end(), [](char c) {
    return c == '.' || c == '!' || c == '?';
  });
}

bool IsOpening(std::string_view tok) {
  return tok == "(" || tok == "[" || tok == "{" || tok == "\"" || tok == "'" ||
         tok == "\xE2\x80\x9C" || tok == "\xE2\x80\x98";
}

bool IsClosing(std::string_view tok) {
  return tok == ")" || tok == "]" || tok == "}" || tok == "\"" || tok == "'" ||
         tok == "\xE2\x80\x9D" || tok == "\xE2\x80\x99";
}

// Splits the core of a whitespace chunk at characters that cannot be part of
// a word. Hyphens, apostrophes and periods stay inside words; commas stay
// inside numbers.
void SplitCore(std::string_view core, std::vector<std::string>& out) {
  std::string word;
  auto flush = [&] {
    if (!word.empty()) out.push_back(std::move(word));
    word.clear();
  };
  for (std::size_t i = 0; i < core.size();) {
    if (std::size_t n = UnicodePunctAt(core.substr(i)); n > 0) {
      // A typographic apostrophe between letters stays in the word.
      const bool apostrophe = core.substr(i, n) == "\xE2\x80\x99" && !word.empty() &&
                              i + n < core.size() && std::isalpha(static_cast<unsigned char>(core[i + n]));
      if (apostrophe) {
        word.append(core.substr(i, n));
      } else {
        flush();
        out.emplace_back(core.substr(i, n));
      }
      i += n;
      continue;
    }
    const char c = core[i];
    const bool inner_comma = c == ',' && !word.empty() && IsDigit(word.back()) &&
                             i + 1 < core.size() && IsDigit(core[i + 1]);
    if (!IsAsciiPunct(c) || c == '-' || c == '\'' || c == '.' || inner_comma) {
      word.push_back(c);
    } else {
      flush();
      out.emplace_back(1, c);
    }
    ++i;
  }
  flush();
}

void TokenizeChunk(std::string_view chunk, std::vector<std::string>& out) {
  // Leading punctuation.
  for (;;) {
    if (std::size_t n = UnicodePunctAt(chunk); n > 0 && n < chunk.size()) {
      out.emplace_back(chunk.substr(0, n));
      chunk.remove_prefix(n);
    } else if (chunk.size() > 1 && IsAsciiPunct(chunk.front()) && chunk.front() != '.') {
      out.emplace_back(1, chunk.front());
      chunk.remove_prefix(1);
    } else {
      break;
    }
  }
  // Trailing punctuation, collected right to left.
  std::vector<std::string> trailing;
  while (!chunk.empty() && !IsAbbreviation(chunk)) {
    if (std::size_t n = UnicodePunctBefore(chunk); n > 0) {
      trailing.emplace_back(chunk.substr(chunk.size() - n));
      chunk.remove_suffix(n);
    } else if (IsAsciiPunct(chunk.back())) {
      // Runs of sentence punctuation ("...", "?!") form one token.
      std::size_t n = 1;
      if (IsSentenceFinal(chunk.substr(chunk.size() - 1))) {
        while (n < chunk.size() && IsSentenceFinal(chunk.substr(chunk.size() - n - 1, 1))) ++n;
      }
      trailing.emplace_back(chunk.substr(chunk.size() - n));
      chunk.remove_suffix(n);
    } else {
      break;
    }
  }
  if (!chunk.empty()) {
    if (IsAbbreviation(chunk)) {
      out.emplace_back(chunk);
    } else {
      // Possessive clitic.
      std::string_view clitic;
      for (std::string_view s : {std::string_view("'s"), std::string_view("\xE2\x80\x99s")}) {
        if (chunk.size() > s.size() && util::ToLower(chunk.substr(chunk.size() - s.size())) == s) {
          clitic = chunk.substr(chunk.size() - s.size());
          chunk.remove_suffix(s.size());
          break;
        }
      }
      SplitCore(chunk, out);
      if (!clitic.empty()) out.emplace_back(clitic);
    }
  }
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) out.push_back(std::move(*it));
}

}  // namespace

bool IsAbbreviation(std::string_view token) {
  if (token.size() < 2 || token.back() != '.') return false;
  const std::string lower = util::ToLower(token);
  if (std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) != kAbbreviations.end()) {
    return true;
  }
  // Initials such as "J." and dotted acronyms such as "U.S.A.".
  if (token.size() == 2 && IsUpper(token[0])) return true;
  bool dotted = token.size() >= 4;
  for (std::size_t i = 0; dotted && i < token.size(); i += 2) {
    dotted = std::isalpha(static_cast<unsigned char>(token[i])) && i + 1 < token.size() &&
             token[i + 1] == '.';
  }
  return dotted;
}

std::vector<Sentence> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && util::IsSpace(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !util::IsSpace(text[j])) ++j;
    if (j > i) TokenizeChunk(text.substr(i, j - i), tokens);
    i = j;
  }

  std::vector<Sentence> sentences;
  Sentence current;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    current.push_back(tokens[t]);
    if (!IsSentenceFinal(tokens[t])) continue;
    // Closing quotes and brackets stay with the sentence they close.
    while (t + 1 < tokens.size() && IsClosing(tokens[t + 1])) current.push_back(tokens[++t]);
    std::size_t next = t + 1;
    while (next < tokens.size() && IsOpening(tokens[next])) ++next;
    if (next >= tokens.size() || IsUpper(tokens[next][0])) {
      sentences.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

}  // namespace termmap::nlp
