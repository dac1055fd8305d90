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
#include "termmap/layout.hpp"

using namespace termmap;

namespace {

LayoutOptions Options(std::uint64_t seed, int restarts = 4) {
  LayoutOptions o;
  o.seed = seed;
  o.restarts = restarts;
  o.threads = 1;
  return o;
}

double Dist(const Coordinates& x, Eigen::Index i, Eigen::Index j) {
  return (x.row(i) - x.row(j)).norm();
}

}  // namespace

TEST_SUITE("layout") {

TEST_CASE("association strength") {
  const CoocNetwork net =
      MakeNetwork({"a", "b", "c"}, {4, 5, 3}, {{0, 1, 2}, {1, 2, 1}}, 10);
  const AssociationResult r = AssociationStrength(net, {"a", "b", "c"});
  CHECK(r.dropped.empty());
  CHECK(r.sim.a.coeff(0, 1) == doctest::Approx(0.1));
  CHECK(r.sim.a.coeff(1, 0) == doctest::Approx(0.1));
  CHECK(r.sim.a.coeff(0, 2) == 0.0);
  CHECK(r.sim.a.coeff(1, 2) == doctest::Approx(1.0 / 15.0));
  CHECK(MeanPositiveSimilarity(r.sim.a) == doctest::Approx((0.1 + 1.0 / 15.0) / 2.0));
  CHECK_THROWS_AS(AssociationStrength(net, {"a", "zzz"}), ParameterError);
}

TEST_CASE("only the largest connected component is kept") {
  const CoocNetwork net = MakeNetwork({"a", "b", "c", "d", "e"}, {2, 2, 2, 2, 2},
                                      {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}}, 5);
  const AssociationResult r = AssociationStrength(net, {"a", "b", "c", "d", "e"});
  CHECK(r.sim.terms == std::vector<std::string>{"a", "b", "c"});
  CHECK(r.dropped == std::vector<std::string>{"d", "e"});
}

TEST_CASE("two terms end up at distance one") {
  const auto sim = oracle::DenseSimilarity({{0, 0.3}, {0.3, 0}});
  const Layout2D l = OptimizeLayout(sim, Options(3));
  CHECK(Dist(l.coords, 0, 1) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(l.coords.colwise().mean().norm() < 1e-9);
}

TEST_CASE("three equal similarities give an equilateral triangle") {
  const auto sim = oracle::DenseSimilarity({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const Layout2D l = OptimizeLayout(sim, Options(5));
  CHECK(Dist(l.coords, 0, 1) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(Dist(l.coords, 1, 2) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(Dist(l.coords, 0, 2) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("fewer than two terms is a parameter error") {
  SimilarityMatrix sim;
  sim.terms = {"a"};
  sim.occ = {1};
  sim.a.resize(1, 1);
  CHECK_THROWS_AS(OptimizeLayout(sim, Options(1)), ParameterError);
}

TEST_CASE("constraint and centroid hold on random graphs") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 20; ++round) {
    const std::size_t n = 3 + rng() % 20;
    const auto a = oracle::RandomSimilarity(rng, n, 0.3, true);
    const Layout2D l = OptimizeLayout(oracle::DenseSimilarity(a), Options(round));
    CHECK(std::abs(oracle::MeanDistance(l.coords) - 1.0) <= 1e-6);
    CHECK(l.coords.colwise().mean().norm() <= 1e-9);
    CHECK(l.objective == doctest::Approx(oracle::Objective(a, l.coords)).epsilon(1e-9));
  }
}

TEST_CASE("objective is invariant under rigid motions") {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = 2 + rng() % 15;
    const auto a = oracle::RandomSimilarity(rng, n, 0.5, false);
    const auto sim = oracle::DenseSimilarity(a);
    Coordinates x = Coordinates::Random(static_cast<Eigen::Index>(n), 2);
    const double v = LayoutObjective(sim.a, x);
    const double angle = static_cast<double>(rng() % 1000) / 100.0;
    const Coordinates y = oracle::Rotate(x, angle, round % 2 == 1, Eigen::RowVector2d(3.5, -1.25));
    CHECK(std::abs(LayoutObjective(sim.a, y) - v) <= 1e-9 * std::max(1.0, v));
    CHECK(std::abs(MeanPairDistance(y) - MeanPairDistance(x)) <= 1e-9);
  }
}

TEST_CASE("scaling similarities leaves the layout unchanged") {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 10; ++round) {
    const std::size_t n = 4 + rng() % 10;
    auto a = oracle::RandomSimilarity(rng, n, 0.4, true);
    auto b = a;
    for (auto& row : b) for (auto& v : row) v *= 2.0;
    const Layout2D la = OptimizeLayout(oracle::DenseSimilarity(a), Options(9));
    const Layout2D lb = OptimizeLayout(oracle::DenseSimilarity(b), Options(9));
    CHECK(oracle::RigidDistance(la.coords, lb.coords) <= 1e-3);
    CHECK(lb.objective == doctest::Approx(2.0 * la.objective).epsilon(1e-6));
  }
}

TEST_CASE("duplicating the corpus halves similarities but keeps the layout") {
  std::mt19937_64 rng(53);
  const CoocNetwork net = oracle::RandomNetwork(rng, 12, 0.5, 5);
  std::vector<Eigen::Triplet<std::int64_t>> doubled;
  for (Eigen::Index j = 0; j < net.cooc.outerSize(); ++j) {
    for (CountMatrix::InnerIterator it(net.cooc, j); it; ++it) {
      if (it.row() < j) doubled.emplace_back(it.row(), j, 2 * it.value());
    }
  }
  std::vector<std::int64_t> occ2 = net.occ;
  for (auto& o : occ2) o *= 2;
  const CoocNetwork net2 = MakeNetwork(net.terms, occ2, doubled, 2 * net.n_docs);
  const auto r1 = AssociationStrength(net, net.terms);
  const auto r2 = AssociationStrength(net2, net.terms);
  REQUIRE(r1.sim.terms == r2.sim.terms);
  CHECK(r2.sim.a.coeff(0, 1) == doctest::Approx(r1.sim.a.coeff(0, 1) / 2.0));
  const Layout2D l1 = OptimizeLayout(r1.sim, Options(2));
  const Layout2D l2 = OptimizeLayout(r2.sim, Options(2));
  CHECK(oracle::RigidDistance(l1.coords, l2.coords) <= 1e-3);
}

TEST_CASE("small layouts are no worse than random constrained configurations") {
  std::mt19937_64 rng(59);
  for (int round = 0; round < 12; ++round) {
    const std::size_t n = 2 + round % 3;
    const auto a = oracle::RandomSimilarity(rng, n, 1.0, true);
    const Layout2D l = OptimizeLayout(oracle::DenseSimilarity(a), Options(round, 10));
    const double best = oracle::RandomConstrainedBest(a, 2000, rng);
    CHECK(l.objective <= best + 1e-3);
  }
}

TEST_CASE("block structure is visible in the layout") {
  std::mt19937_64 rng(61);
  const auto a = oracle::BlockSimilarity(3, 10, 1.0, 0.05, rng, 0.05);
  const Layout2D l = OptimizeLayout(oracle::DenseSimilarity(a), Options(7));
  double within = 0.0, between = 0.0;
  int nw = 0, nb = 0;
  for (Eigen::Index i = 0; i < 30; ++i) {
    for (Eigen::Index j = i + 1; j < 30; ++j) {
      if (i / 10 == j / 10) {
        within += Dist(l.coords, i, j);
        ++nw;
      } else {
        between += Dist(l.coords, i, j);
        ++nb;
      }
    }
  }
  CHECK(within / nw < between / nb);
}

TEST_CASE("same seed gives bit-identical coordinates") {
  std::mt19937_64 rng(67);
  const auto sim = oracle::DenseSimilarity(oracle::RandomSimilarity(rng, 15, 0.3, true));
  LayoutOptions o = Options(11, 6);
  const Layout2D a = OptimizeLayout(sim, o);
  o.threads = 4;
  const Layout2D b = OptimizeLayout(sim, o);
  CHECK(a.coords == b.coords);
  CHECK(a.objective == b.objective);
}

TEST_CASE("alignment is canonical") {
  std::mt19937_64 rng(71);
  const auto a = oracle::RandomSimilarity(rng, 10, 0.4, true);
  const auto sim = oracle::DenseSimilarity(a);
  std::vector<double> weights;
  for (int i = 0; i < 10; ++i) weights.push_back(static_cast<double>(10 - i));
  const Layout2D raw = OptimizeLayout(sim, Options(13));
  const Layout2D aligned = AlignLayout(raw, weights);
  CHECK(aligned.coords.colwise().mean().norm() < 1e-9);
  CHECK(LayoutObjective(sim.a, aligned.coords) ==
        doctest::Approx(LayoutObjective(sim.a, raw.coords)).epsilon(1e-12));
  CHECK(aligned.coords(0, 1) >= 0.0);
  // Principal axis is horizontal: the coordinate covariance is diagonal.
  const Eigen::Matrix2d cov = aligned.coords.transpose() * aligned.coords;
  CHECK(std::abs(cov(0, 1)) < 1e-9);
  CHECK(cov(0, 0) >= cov(1, 1));

  const Layout2D again = AlignLayout(aligned, weights);
  CHECK((again.coords - aligned.coords).cwiseAbs().maxCoeff() < 1e-9);

  for (bool mirror : {false, true}) {
    Layout2D moved = raw;
    moved.coords = oracle::Rotate(raw.coords, 1.234, mirror, Eigen::RowVector2d(0.5, 0.25));
    const Layout2D canon = AlignLayout(moved, weights);
    CHECK((canon.coords - aligned.coords).cwiseAbs().maxCoeff() < 1e-9);
  }
}

}  // TEST_SUITE
