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

#include <doctest.h>

#include <string>

#include "oracles.hpp"
#include "termmap/corpus.hpp"
#include "termmap/error.hpp"
#include "termmap/util.hpp"

using namespace termmap;
namespace fs = std::filesystem;

namespace {

fs::path Write(const oracle::TempDir& dir, const std::string& name, const std::string& text) {
  const fs::path path = dir.path() / name;
  util::WriteFile(path, text);
  return path;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("tabular rows join title and abstract") {
  oracle::TempDir dir("corpus_join");
  const auto path = Write(dir, "c.tsv", "id\ttitle\tabstract\np1\tText mining\tWe map terms.\n");
  const Corpus c = LoadTabular(path, ColumnSpec{});
  REQUIRE(c.n_docs() == 1);
  CHECK(c.documents[0].id == "p1");
  CHECK(c.documents[0].text == "Text mining. We map terms.");
  CHECK_FALSE(c.documents[0].score.has_value());
}

TEST_CASE("abstract column left unmapped gives title only") {
  oracle::TempDir dir("corpus_title");
  const auto path = Write(dir, "c.tsv", "id\ttitle\tabstract\np1\tText mining\tWe map terms.\n");
  ColumnSpec spec;
  spec.abstract.clear();
  CHECK(LoadTabular(path, spec).documents[0].text == "Text mining");
}

TEST_CASE("custom column names, scores and subset flags") {
  oracle::TempDir dir("corpus_cols");
  const auto path = Write(dir, "c.tsv",
                          "\xEF\xBB\xBFUT\tTI\tAB\tTC\tlocal\r\n"
                          "a\tOne\tFirst.\t3\tyes\r\n"
                          "b\tTwo\tSecond.\t\t0\r\n");
  ColumnSpec spec{"UT", "TI", "AB", "TC", "local"};
  const Corpus c = LoadTabular(path, spec);
  REQUIRE(c.n_docs() == 2);
  CHECK(c.documents[0].id == "a");
  CHECK(*c.documents[0].score == 3.0);
  CHECK(*c.documents[0].in_subset);
  CHECK_FALSE(c.documents[1].score.has_value());
  CHECK_FALSE(*c.documents[1].in_subset);
}

TEST_CASE("missing mapped column names the column") {
  oracle::TempDir dir("corpus_missing");
  const auto path = Write(dir, "c.tsv", "id\ttitle\np1\tx\n");
  ColumnSpec spec;
  spec.score = "citations";
  try {
    LoadTabular(path, spec);
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("citations") != std::string::npos);
  }
}

TEST_CASE("duplicate ids are listed") {
  oracle::TempDir dir("corpus_dup");
  const auto path = Write(dir, "c.tsv", "id\ttitle\np1\tx\np2\ty\np1\tz\n");
  try {
    LoadTabular(path, ColumnSpec{});
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("p1") != std::string::npos);
    CHECK(std::string(e.what()).find("p2") == std::string::npos);
  }
}

TEST_CASE("unparsable score reports the row") {
  oracle::TempDir dir("corpus_score");
  const auto path = Write(dir, "c.tsv", "id\ttitle\tcites\np1\tx\t4\np2\ty\tmany\n");
  ColumnSpec spec;
  spec.abstract.clear();
  spec.score = "cites";
  try {
    LoadTabular(path, spec);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
}

TEST_CASE("plain text split modes") {
  oracle::TempDir dir("corpus_text");
  const std::string text = "First paragraph\nstill first.\n\n\nSecond one.\n  \nThird.\n";
  const auto path = Write(dir, "thesis.txt", text);
  const Corpus para = LoadPlaintext(path, SplitMode::kParagraph);
  REQUIRE(para.n_docs() == 3);
  CHECK(para.documents[0].id == "thesis.txt#1");
  CHECK(para.documents[0].text == "First paragraph\nstill first.");
  CHECK(LoadPlaintext(path, SplitMode::kWholeFile).n_docs() == 1);
  CHECK(LoadPlaintext(path, SplitMode::kLine).n_docs() == 4);
}

TEST_CASE("directory input reads .txt files in name order") {
  oracle::TempDir dir("corpus_dir");
  Write(dir, "b.txt", "Beta.");
  Write(dir, "a.txt", "Alpha.\n\nAlpha two.");
  Write(dir, "skip.md", "Ignored.");
  const Corpus c = LoadPlaintext(dir.path(), SplitMode::kParagraph);
  REQUIRE(c.n_docs() == 3);
  CHECK(c.documents[0].id == "a.txt#1");
  CHECK(c.documents[2].id == "b.txt#1");
}

TEST_CASE("blank input is an empty corpus") {
  oracle::TempDir dir("corpus_empty");
  const auto path = Write(dir, "e.txt", "\n  \n\n");
  CHECK_THROWS_AS(LoadPlaintext(path, SplitMode::kParagraph), EmptyCorpusError);
  CHECK_THROWS_AS(ParseSplitMode("sentence"), ParameterError);
}

TEST_CASE("paragraph count equals the number of maximal non-blank blocks") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    std::string text;
    int blocks = 0;
    bool in_block = false;
    const int lines = static_cast<int>(rng() % 12);
    for (int i = 0; i < lines; ++i) {
      if (rng() % 3 == 0) {
        text += (rng() % 2 ? "   \n" : "\n");
        in_block = false;
      } else {
        text += "line " + std::to_string(i) + "\n";
        if (!in_block) ++blocks;
        in_block = true;
      }
    }
    CHECK(SplitText(text, SplitMode::kParagraph).size() == static_cast<std::size_t>(blocks));
  }
}

TEST_CASE("loading is deterministic") {
  oracle::TempDir dir("corpus_det");
  const auto path = Write(dir, "c.tsv", "id\ttitle\tabstract\nx\tA\tB.\ny\tC\tD.\n");
  const Corpus a = LoadTabular(path, ColumnSpec{});
  const Corpus b = LoadTabular(path, ColumnSpec{});
  REQUIRE(a.n_docs() == b.n_docs());
  for (std::size_t i = 0; i < a.n_docs(); ++i) {
    CHECK(a.documents[i].id == b.documents[i].id);
    CHECK(a.documents[i].text == b.documents[i].text);
  }
}

}  // TEST_SUITE
