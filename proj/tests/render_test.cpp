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

#include <map>
#include <random>
#include <regex>
#include <set>
#include <string>

#include <json.hpp>

#include "oracles.hpp"
#include "termmap/error.hpp"
#include "termmap/render.hpp"

using namespace termmap;

namespace {

MapTerm Term(const std::string& label, double x, double y, std::int64_t w, int cluster) {
  MapTerm t;
  t.label = label;
  t.x = x;
  t.y = y;
  t.weight = w;
  t.cluster = cluster;
  return t;
}

TermMap RandomMap(std::mt19937_64& rng, std::size_t n, bool scores) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  TermMap map;
  const int k = 1 + static_cast<int>(rng() % 4);
  for (std::size_t i = 0; i < n; ++i) {
    MapTerm t = Term(oracle::TermName(i), u(rng), u(rng), 1 + static_cast<std::int64_t>(rng() % 50),
                     1 + static_cast<int>(i % static_cast<std::size_t>(k)));
    if (scores) t.score = std::abs(u(rng)) * 10.0;
    map.terms.push_back(t);
  }
  map.meta.seed = 42;
  map.meta.selection = "k=" + std::to_string(n);
  map.meta.resolution = 0.123456789123;
  return map;
}

// (data-term id, fill) of every label in an SVG.
std::vector<std::pair<int, std::string>> Labels(const std::string& svg) {
  std::vector<std::pair<int, std::string>> out;
  const std::regex re("<text data-term=\"(\\d+)\"[^>]*fill=\"(#[0-9a-f]{6})\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    out.emplace_back(std::stoi((*it)[1]), (*it)[2]);
  }
  return out;
}

}  // namespace

TEST_SUITE("render") {

TEST_CASE("two-term export") {
  TermMap map;
  map.terms = {Term("text mining", -0.5, 0.0, 12, 1), Term("paper", 0.5, 0.0, 30, 2)};
  const auto j = nlohmann::json::parse(ExportJson(map));
  CHECK(j["schema_version"] == 1);
  REQUIRE(j["terms"].size() == 2);
  CHECK(j["terms"][0]["id"] == 1);
  CHECK(j["terms"][0]["label"] == "text mining");
  CHECK(j["terms"][1]["weight"] == 30);
  CHECK_FALSE(j["terms"][0].contains("score"));
  CHECK(j["clusters"].size() == 2);
  CHECK(j["clusters"][0]["color"] == ToHex(kClusterPalette[0]));
  CHECK(j["meta"].contains("parameters"));
  CHECK(j["meta"]["corpus"].contains("selected_terms"));
}

TEST_CASE("export round trip") {
  std::mt19937_64 rng(103);
  for (int round = 0; round < 30; ++round) {
    const TermMap map = RandomMap(rng, 1 + rng() % 30, round % 2 == 0);
    const TermMap back = ImportJson(ExportJson(map));
    REQUIRE(back.terms.size() == map.terms.size());
    for (std::size_t i = 0; i < map.terms.size(); ++i) {
      const MapTerm& a = map.terms[i];
      const MapTerm& b = back.terms[i];
      CHECK(a.label == b.label);
      CHECK(a.weight == b.weight);
      CHECK(a.cluster == b.cluster);
      CHECK(std::abs(a.x - b.x) <= 5e-9 * std::abs(a.x));
      CHECK(std::abs(a.y - b.y) <= 5e-9 * std::abs(a.y));
      CHECK(a.score.has_value() == b.score.has_value());
      if (a.score) CHECK(std::abs(*a.score - *b.score) <= 5e-9 * *a.score);
    }
    CHECK(back.meta.seed == map.meta.seed);
    CHECK(back.meta.selection == map.meta.selection);
    // A second pass is exact.
    CHECK(ExportJson(back) == ExportJson(ImportJson(ExportJson(back))));
  }
}

TEST_CASE("import rejects malformed exports") {
  CHECK_THROWS_AS(ImportJson("{not json"), FormatError);
  CHECK_THROWS_AS(ImportJson(R"({"schema_version": 2, "terms": []})"), FormatError);
  TermMap map;
  map.terms = {Term("a", 0, 0, 1, 1)};
  auto j = nlohmann::json::parse(ExportJson(map));
  j["terms"][0]["id"] = 5;
  CHECK_THROWS_AS(ImportJson(j.dump()), FormatError);
}

TEST_CASE("flat table export") {
  TermMap map;
  map.terms = {Term("a b", 1.5, -2.0, 3, 1)};
  const std::string tsv = ExportTsv(map);
  CHECK(tsv.rfind("id\tlabel\tx\ty\tweight\tcluster\tscore\n", 0) == 0);
  CHECK(tsv.find("1\ta b\t1.5\t-2\t3\t1\t\n") != std::string::npos);
}

TEST_CASE("one-term map renders a centred label over the density peak") {
  TermMap map;
  map.terms = {Term("visualization", 4.0, 7.0, 5, 1)};
  RenderOptions o;
  o.view = View::kDensity;
  o.width = 400;
  o.height = 300;
  const std::string svg = RenderSvg(map, o);
  CHECK(svg.find("x=\"200.00\" y=\"150.00\"") != std::string::npos);
  CHECK(svg.find(">visualization</text>") != std::string::npos);
  CHECK(svg.find(ToHex(Ramp(1.0))) != std::string::npos);
  CHECK(Labels(svg).size() == 1);
}

TEST_CASE("equal-weight overlapping labels hide exactly one") {
  TermMap map;
  map.terms = {Term("zeta", 0.0, 0.0, 10, 1), Term("alpha", 0.001, 0.0, 10, 1),
               Term("far", 10.0, 10.0, 1, 1)};
  RenderOptions o;
  const auto boxes = LabelBoxes(map, o);
  const auto visible = VisibleLabels(map, boxes);
  CHECK_FALSE(visible[0]);
  CHECK(visible[1]);
  CHECK(visible[2]);
}

TEST_CASE("heavier labels win overlaps") {
  TermMap map;
  map.terms = {Term("aaa", 0.0, 0.0, 2, 1), Term("bbb", 0.001, 0.0, 9, 1),
               Term("far", 10.0, 10.0, 1, 1)};
  const auto visible = VisibleLabels(map, LabelBoxes(map, RenderOptions{}));
  CHECK_FALSE(visible[0]);
  CHECK(visible[1]);
}

TEST_CASE("font size grows with the square root of weight") {
  TermMap map;
  map.terms = {Term("a", 0, 0, 100, 1), Term("b", 1, 1, 25, 1)};
  RenderOptions o;
  const auto boxes = LabelBoxes(map, o);
  CHECK(boxes[0].font == doctest::Approx(o.max_font));
  CHECK(boxes[1].font == doctest::Approx(o.max_font / 2.0));
}

TEST_CASE("cluster view colours labels by cluster") {
  TermMap map;
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 3; ++i) {
      map.terms.push_back(Term("c" + std::to_string(c) + "t" + std::to_string(i),
                               10.0 * c, 3.0 * i, 5, c + 1));
    }
  }
  RenderOptions o;
  o.view = View::kCluster;
  const auto labels = Labels(RenderSvg(map, o));
  REQUIRE(labels.size() == 9);
  std::map<int, std::set<std::string>> fills;
  for (const auto& [id, fill] : labels) fills[map.terms[static_cast<std::size_t>(id - 1)].cluster].insert(fill);
  REQUIRE(fills.size() == 3);
  std::set<std::string> distinct;
  for (const auto& [cluster, set] : fills) {
    CHECK(set.size() == 1);
    CHECK(*set.begin() == ToHex(ClusterColor(cluster)));
    distinct.insert(*set.begin());
  }
  CHECK(distinct.size() == 3);
}

TEST_CASE("score view needs scores") {
  TermMap map;
  map.terms = {Term("a", 0, 0, 1, 1)};
  RenderOptions o;
  o.view = View::kScore;
  CHECK_THROWS_AS(RenderSvg(map, o), ParameterError);
  map.terms[0].score = 2.0;
  CHECK_NOTHROW(RenderSvg(map, o));
  CHECK_THROWS_AS(ParseView("heat"), ParameterError);
}

TEST_CASE("rendering is deterministic and labels refer to visible terms") {
  std::mt19937_64 rng(107);
  for (int round = 0; round < 10; ++round) {
    const TermMap map = RandomMap(rng, 5 + rng() % 60, true);
    for (View view : {View::kDensity, View::kCluster, View::kScore}) {
      RenderOptions o;
      o.view = view;
      o.density_cells = 40;
      const std::string a = RenderSvg(map, o);
      CHECK(a == RenderSvg(map, o));
      const auto visible = VisibleLabels(map, LabelBoxes(map, o));
      const auto labels = Labels(a);
      std::size_t shown = 0;
      for (bool v : visible) shown += v ? 1 : 0;
      CHECK(labels.size() == shown);
      for (const auto& [id, fill] : labels) {
        REQUIRE(id >= 1);
        REQUIRE(static_cast<std::size_t>(id) <= map.terms.size());
        CHECK(visible[static_cast<std::size_t>(id - 1)]);
      }
    }
  }
}

}  // TEST_SUITE
