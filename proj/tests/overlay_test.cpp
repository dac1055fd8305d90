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

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "termmap/error.hpp"
#include "termmap/overlay.hpp"

using namespace termmap;

namespace {

TermMap MapOf(const std::vector<std::pair<double, double>>& points,
              const std::vector<std::int64_t>& weights) {
  TermMap map;
  for (std::size_t i = 0; i < points.size(); ++i) {
    MapTerm t;
    t.label = oracle::TermName(i);
    t.x = points[i].first;
    t.y = points[i].second;
    t.weight = weights[i];
    map.terms.push_back(t);
  }
  return map;
}

std::vector<std::string> Ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("d" + std::to_string(i));
  return ids;
}

}  // namespace

TEST_SUITE("overlay") {

TEST_CASE("lone term peaks at one and falls to exp(-1/2) one bandwidth away") {
  const TermMap map = MapOf({{0.3, -0.2}}, {7});
  const double h = 0.25;
  // Five lattice points per axis over [x - 2h, x + 2h] put one point at the
  // term and others exactly h and 2h away.
  const DensityField f = Density(map, 5, 5, h);
  CHECK(f.grid(2, 2) == 1.0);
  CHECK(f.grid.maxCoeff() == 1.0);
  CHECK(std::abs(f.grid(2, 3) - std::exp(-0.5)) <= 1e-9);
  CHECK(std::abs(f.grid(1, 2) - std::exp(-0.5)) <= 1e-9);
  CHECK(std::abs(f.grid(2, 4) - std::exp(-2.0)) <= 1e-9);
  const Eigen::Vector2d p = f.PointAt(2, 3);
  CHECK(p.x() == doctest::Approx(0.3 + h));
  CHECK(p.y() == doctest::Approx(-0.2));
}

TEST_CASE("two distant equal terms give equal peaks") {
  const TermMap map = MapOf({{-5.0, 0.0}, {5.0, 0.0}}, {3, 3});
  const double h = 0.5;
  const DensityField f = Density(map, 45, 3, h);
  // Lattice spacing is 0.5 in x with the terms on lattice points 4 and 40.
  CHECK(f.grid(1, 4) == doctest::Approx(f.grid(1, 40)).epsilon(1e-12));
  CHECK(std::max(f.grid(1, 4), f.grid(1, 40)) == 1.0);
}

TEST_CASE("density is linear in weights and bounded") {
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int round = 0; round < 20; ++round) {
    std::vector<std::pair<double, double>> pts;
    std::vector<std::int64_t> w, w2;
    const std::size_t n = 1 + rng() % 12;
    for (std::size_t i = 0; i < n; ++i) {
      pts.emplace_back(u(rng), u(rng));
      w.push_back(1 + static_cast<std::int64_t>(rng() % 9));
      w2.push_back(2 * w.back());
    }
    const double h = 0.05 + 0.3 * (u(rng) + 1.0) / 2.0;
    const DensityField a = Density(MapOf(pts, w), 30, 20, h);
    const DensityField b = Density(MapOf(pts, w2), 30, 20, h);
    CHECK((a.grid - b.grid).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(a.grid.maxCoeff() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.grid.minCoeff() >= 0.0);
    CHECK(a.grid.allFinite());
  }
}

TEST_CASE("default bandwidth is a tenth of the diagonal") {
  CHECK(DefaultBandwidth(MapOf({{0, 0}, {3, 4}}, {1, 1})) == doctest::Approx(0.5));
  CHECK(DefaultBandwidth(MapOf({{1, 1}}, {1})) == doctest::Approx(0.1));
  CHECK_THROWS_AS(Density(MapOf({{0, 0}}, {1}), 10, 10, 0.0), ParameterError);
}

TEST_CASE("score mean and subset share examples") {
  TermMap map = MapOf({{0, 0}, {1, 1}}, {2, 4});
  const std::vector<std::vector<std::size_t>> docs = {{0, 1}, {0, 1, 2, 3}};
  const auto scored = ScoreMean(map, docs, {2.0, 4.0, 0.0, 10.0}, Ids(4));
  CHECK(*scored.terms[0].score == 3.0);
  CHECK(*scored.terms[1].score == 4.0);
  CHECK(scored.meta.overlay == "score-mean");
  const auto zero = ScoreMean(map, docs, {0.0, 0.0, 0.0, 0.0}, Ids(4));
  CHECK(*zero.terms[1].score == 0.0);

  const auto share = ScoreSubsetShare(map, docs, {true, false, false, false}, Ids(4));
  CHECK(*share.terms[1].score == 0.25);
  CHECK(*share.terms[0].score == 0.5);
  const auto none = ScoreSubsetShare(map, docs, {false, false, false, false}, Ids(4));
  CHECK(*none.terms[0].score == 0.0);
  const auto all = ScoreSubsetShare(map, docs, {true, true, true, true}, Ids(4));
  CHECK(*all.terms[1].score == 1.0);
}

TEST_CASE("missing scores name the document") {
  TermMap map = MapOf({{0, 0}}, {2});
  try {
    ScoreMean(map, {{0, 1}}, {1.0, std::nullopt}, {"p1", "p7"});
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("p7") != std::string::npos);
  }
  CHECK_THROWS_AS(ScoreSubsetShare(map, {{0}}, {std::nullopt}, {"p1"}), ValidationError);
}

TEST_CASE("score overlays match brute-force recomputation") {
  std::mt19937_64 rng(97);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n_docs = 1 + rng() % 40;
    const std::size_t n_terms = 1 + rng() % 15;
    std::vector<std::optional<double>> scores;
    std::vector<std::optional<bool>> flags;
    for (std::size_t d = 0; d < n_docs; ++d) {
      scores.push_back(static_cast<double>(rng() % 1000) / 7.0);
      flags.push_back(rng() % 3 == 0);
    }
    std::vector<std::vector<std::size_t>> docs(n_terms);
    for (auto& set : docs) {
      for (std::size_t d = 0; d < n_docs; ++d) {
        if (rng() % 3 == 0) set.push_back(d);
      }
      if (set.empty()) set.push_back(rng() % n_docs);
    }
    TermMap map = MapOf(std::vector<std::pair<double, double>>(n_terms, {0.0, 0.0}),
                        std::vector<std::int64_t>(n_terms, 1));
    const auto mean = ScoreMean(map, docs, scores, Ids(n_docs));
    const auto share = ScoreSubsetShare(map, docs, flags, Ids(n_docs));
    for (std::size_t i = 0; i < n_terms; ++i) {
      double sum = 0.0;
      int hits = 0;
      for (std::size_t d : docs[i]) {
        sum += *scores[d];
        hits += *flags[d] ? 1 : 0;
      }
      CHECK(std::abs(*mean.terms[i].score - sum / static_cast<double>(docs[i].size())) <= 1e-9);
      CHECK(*share.terms[i].score == static_cast<double>(hits) / static_cast<double>(docs[i].size()));
      CHECK(*share.terms[i].score >= 0.0);
      CHECK(*share.terms[i].score <= 1.0);
    }
  }
}

TEST_CASE("color ramp endpoints and documented midpoints") {
  CHECK(Ramp(0.0) == Rgb{0, 0, 255});
  CHECK(Ramp(1.0) == Rgb{255, 0, 0});
  CHECK(Ramp(1.0 / 3.0) == Rgb{0, 255, 0});
  CHECK(Ramp(2.0 / 3.0) == Rgb{255, 255, 0});
  CHECK(Ramp(0.5) == Rgb{128, 255, 0});
  CHECK(Ramp(-3.0) == Rgb{0, 0, 255});
  CHECK(Ramp(7.0) == Rgb{255, 0, 0});
  CHECK(ToHex(Rgb{255, 128, 0}) == "#ff8000");
}

TEST_CASE("score colors use the 10th to 90th percentile range") {
  std::vector<double> v;
  for (int i = 0; i <= 100; ++i) v.push_back(i);
  const auto colors = ColorScale(v, ColorMode::kScore);
  CHECK(colors[5] == Rgb{0, 0, 255});
  CHECK(colors[10] == Rgb{0, 0, 255});
  CHECK(colors[90] == Rgb{255, 0, 0});
  CHECK(colors[95] == Rgb{255, 0, 0});
  CHECK(colors[50] == Ramp(0.5));
  CHECK(Percentile({1.0, 2.0, 3.0, 4.0}, 50.0) == doctest::Approx(2.5));
  const auto flat = ColorScale({2.0, 2.0}, ColorMode::kScore);
  CHECK(flat[0] == Ramp(0.5));
}

TEST_CASE("red channel is monotone along the ramp") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-0.2, 1.2);
  for (int i = 0; i < 2000; ++i) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    CHECK(Ramp(a).r <= Ramp(b).r);
  }
  std::vector<double> values;
  for (int i = 0; i < 200; ++i) values.push_back(u(rng) * 50.0);
  const auto colors = ColorScale(values, ColorMode::kScore);
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (values[i] < values[j]) CHECK(colors[i].r <= colors[j].r);
    }
  }
}

}  // TEST_SUITE
