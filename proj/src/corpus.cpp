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

#include "termmap/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "termmap/error.hpp"
#include "termmap/util.hpp"

namespace termmap {

namespace fs = std::filesystem;

SplitMode ParseSplitMode(const std::string& name) {
  if (name == "whole_file") return SplitMode::kWholeFile;
  if (name == "paragraph") return SplitMode::kParagraph;
  if (name == "line") return SplitMode::kLine;
  throw ParameterError("unknown split mode '" + name +
                       "' (expected whole_file, paragraph or line)");
}

std::string ToString(SplitMode mode) {
  switch (mode) {
    case SplitMode::kWholeFile: return "whole_file";
    case SplitMode::kParagraph: return "paragraph";
    case SplitMode::kLine: return "line";
  }
  return "?";
}

std::optional<bool> ParseFlag(const std::string& value) {
  const std::string v = util::ToLower(util::Trim(value));
  if (v == "1" || v == "true" || v == "yes" || v == "y") return true;
  if (v == "0" || v == "false" || v == "no" || v == "n") return false;
  return std::nullopt;
}

void Validate(const Corpus& corpus) {
  std::map<std::string, int> seen;
  for (const auto& doc : corpus.documents) ++seen[doc.id];
  std::string dups;
  for (const auto& [id, count] : seen) {
    if (count > 1) dups += (dups.empty() ? "" : ", ") + id;
  }
  if (!dups.empty()) throw ValidationError("duplicate document ids: " + dups);
  for (const auto& doc : corpus.documents) {
    if (util::Trim(doc.text).empty()) {
      throw ValidationError("document '" + doc.id + "' has empty text");
    }
    if (doc.score && (!std::isfinite(*doc.score) || *doc.score < 0.0)) {
      throw ValidationError("document '" + doc.id + "' has invalid score");
    }
  }
}

Corpus LoadTabular(const fs::path& path, const ColumnSpec& columns) {
  const std::vector<std::string> lines = util::Lines(util::ReadFile(path));
  if (lines.empty()) throw FormatError(path.string() + ": missing header row");

  const std::vector<std::string> header = util::Split(lines[0], '\t');
  auto column_index = [&](const std::string& role, const std::string& name,
                          bool required, bool may_be_absent = false) -> std::optional<std::size_t> {
    if (name.empty()) {
      if (required) throw ParameterError("column for '" + role + "' must be mapped");
      return std::nullopt;
    }
    auto it = std::find_if(header.begin(), header.end(), [&](const std::string& h) {
      return util::Trim(h) == name;
    });
    if (it == header.end()) {
      if (may_be_absent) return std::nullopt;
      throw FormatError(path.string() + ": missing column '" + name + "' (" + role + ")");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto id_col = column_index("id", columns.id, true);
  const auto title_col = column_index("title", columns.title, true);
  const auto abstract_col = column_index("abstract", columns.abstract, false,
                                         columns.abstract == ColumnSpec{}.abstract);
  const auto score_col = column_index("score", columns.score, false);
  const auto subset_col = column_index("subset", columns.subset, false);

  Corpus corpus;
  for (std::size_t row = 1; row < lines.size(); ++row) {
    if (util::Trim(lines[row]).empty()) continue;
    const std::vector<std::string> cells = util::Split(lines[row], '\t');
    auto cell = [&](std::optional<std::size_t> col) -> std::string {
      if (!col || *col >= cells.size()) return {};
      return std::string(util::Trim(cells[*col]));
    };
    // Line numbers are 1-based and count the header.
    const std::string where = path.string() + ":" + std::to_string(row + 1);

    Document doc;
    doc.id = cell(id_col);
    if (doc.id.empty()) throw ValidationError(where + ": empty id");
    const std::string title = cell(title_col);
    const std::string abstract = cell(abstract_col);
    if (title.empty()) {
      doc.text = abstract;
    } else if (abstract.empty()) {
      doc.text = title;
    } else {
      doc.text = title + ". " + abstract;
    }
    if (score_col) {
      const std::string raw = cell(score_col);
      if (!raw.empty()) {
        auto value = util::ParseDouble(raw);
        if (!value || !std::isfinite(*value) || *value < 0.0) {
          throw ValidationError(where + ": unparsable score '" + raw + "'");
        }
        doc.score = *value;
      }
    }
    if (subset_col) {
      const std::string raw = cell(subset_col);
      if (!raw.empty()) {
        auto flag = ParseFlag(raw);
        if (!flag) throw ValidationError(where + ": unparsable subset flag '" + raw + "'");
        doc.in_subset = *flag;
      }
    }
    corpus.documents.push_back(std::move(doc));
  }
  if (corpus.documents.empty()) throw EmptyCorpusError(path.string() + ": no documents");
  Validate(corpus);
  return corpus;
}

std::vector<std::string> SplitText(const std::string& text, SplitMode mode) {
  std::vector<std::string> units;
  auto emit = [&](std::string unit) {
    if (!util::Trim(unit).empty()) units.emplace_back(util::Trim(unit));
  };
  const std::vector<std::string> lines = util::Lines(text);
  switch (mode) {
    case SplitMode::kWholeFile:
      emit(text);
      break;
    case SplitMode::kLine:
      for (const auto& line : lines) emit(line);
      break;
    case SplitMode::kParagraph: {
      std::string block;
      for (const auto& line : lines) {
        if (util::Trim(line).empty()) {
          emit(std::move(block));
          block.clear();
        } else {
          if (!block.empty()) block += '\n';
          block += line;
        }
      }
      emit(std::move(block));
      break;
    }
  }
  return units;
}

Corpus LoadPlaintext(const fs::path& path, SplitMode mode) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(path)) {
    files.push_back(path);
  } else {
    throw IoError("cannot read " + path.string());
  }

  Corpus corpus;
  for (const auto& file : files) {
    const std::vector<std::string> units = SplitText(util::ReadFile(file), mode);
    for (std::size_t i = 0; i < units.size(); ++i) {
      corpus.documents.push_back(
          {file.filename().string() + "#" + std::to_string(i + 1), units[i], {}, {}});
    }
  }
  if (corpus.documents.empty()) {
    throw EmptyCorpusError(path.string() + ": no non-empty text units");
  }
  Validate(corpus);
  return corpus;
}

}  // namespace termmap
