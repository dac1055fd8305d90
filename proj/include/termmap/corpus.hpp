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

#ifndef TERMMAP_CORPUS_HPP_
#define TERMMAP_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace termmap {

// One unit of English text. For bibliographic exports this is the title and
// abstract of a publication; for full texts it is usually a paragraph.
struct Document {
  std::string id;
  std::string text;
  std::optional<double> score;     // e.g. citation count, finite and >= 0
  std::optional<bool> in_subset;   // e.g. authored by a given institution
};

struct Corpus {
  std::vector<Document> documents;

  std::size_t n_docs() const { return documents.size(); }
};

// Maps document roles onto column names of a tab-separated export. An empty
// name means the role is not mapped. id and title are required.
struct ColumnSpec {
  std::string id = "id";
  std::string title = "title";
  std::string abstract = "abstract";
  std::string score;
  std::string subset;
};

enum class SplitMode { kWholeFile, kParagraph, kLine };

SplitMode ParseSplitMode(const std::string& name);
std::string ToString(SplitMode mode);

// Reads a UTF-8 tab-separated file with a header row. Each row becomes one
// document whose text is "<title>. <abstract>" (title only when the abstract
// is unmapped or empty).
Corpus LoadTabular(const std::filesystem::path& path, const ColumnSpec& columns);

// Reads a text file, or every *.txt file of a directory in name order, and
// splits each into documents with ids "<filename>#<ordinal>".
Corpus LoadPlaintext(const std::filesystem::path& path, SplitMode mode);

// Splits raw text into units according to mode. Blank units are dropped.
std::vector<std::string> SplitText(const std::string& text, SplitMode mode);

// Parses a subset flag: 1/0, true/false, yes/no, y/n (case-insensitive).
std::optional<bool> ParseFlag(const std::string& value);

// Throws ValidationError unless ids are unique, texts non-empty and scores
// finite and non-negative.
void Validate(const Corpus& corpus);

}  // namespace termmap

#endif  // TERMMAP_CORPUS_HPP_
