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

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "termmap/cluster.hpp"

using namespace termmap;

namespace {

oracle::Dense TwoCliques() {
  oracle::Dense a(6, std::vector<double>(6, 0.0));
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i != j && i / 3 == j / 3) a[i][j] = 1.0;
    }
  }
  // A weak bridge keeps the graph connected.
  a[2][3] = a[3][2] = 0.1;
  return a;
}

ClusterOptions Options(double gamma, std::uint64_t seed = 1) {
  ClusterOptions o;
  o.resolution = gamma;
  o.seed = seed;
  o.threads = 1;
  return o;
}

}  // namespace

TEST_SUITE("cluster") {

TEST_CASE("two cliques are recovered") {
  const auto a = TwoCliques();
  const Clustering c = ClusterTerms(oracle::DenseSimilarity(a), Options(0.5));
  CHECK(c.num_clusters() == 2);
  CHECK(c.assignment[0] == c.assignment[1]);
  CHECK(c.assignment[1] == c.assignment[2]);
  CHECK(c.assignment[3] == c.assignment[4]);
  CHECK(c.assignment[4] == c.assignment[5]);
  CHECK(c.assignment[0] != c.assignment[3]);
  CHECK(c.quality == doctest::Approx(oracle::BestPartitionQuality(a, 0.5)).epsilon(1e-12));
}

TEST_CASE("resolution above every similarity gives singletons") {
  const auto a = TwoCliques();
  const Clustering c = ClusterTerms(oracle::DenseSimilarity(a), Options(1.5));
  CHECK(c.num_clusters() == 6);
  CHECK(c.quality == 0.0);
}

TEST_CASE("a single strong pair is merged") {
  const Clustering c = ClusterTerms(oracle::DenseSimilarity({{0, 0.8}, {0.8, 0}}), Options(0.3));
  CHECK(c.num_clusters() == 1);
  CHECK(c.quality == doctest::Approx(0.5));
}

TEST_CASE("default resolution is the mean positive similarity") {
  CHECK(DefaultResolution(oracle::DenseSimilarity({{0, 0.1, 0}, {0.1, 0, 0.3}, {0, 0.3, 0}})) ==
        doctest::Approx(0.2));
  CHECK(DefaultResolution(oracle::DenseSimilarity({{0, 0.7}, {0.7, 0}})) == doctest::Approx(0.7));
}

TEST_CASE("labels are contiguous and ordered by size") {
  std::mt19937_64 rng(73);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 5 + rng() % 25;
    const auto a = oracle::RandomSimilarity(rng, n, 0.3, false);
    const auto sim = oracle::DenseSimilarity(a);
    const Clustering c = ClusterTerms(sim, Options(0.4, round));
    REQUIRE(c.assignment.size() == n);
    std::map<int, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < n; ++i) members[c.assignment[i]].push_back(i);
    CHECK(members.begin()->first == 1);
    CHECK(members.rbegin()->first == static_cast<int>(members.size()));
    CHECK(c.num_clusters() == static_cast<int>(members.size()));
    for (auto it = std::next(members.begin()); it != members.end(); ++it) {
      const auto& prev = std::prev(it)->second;
      const auto& cur = it->second;
      const bool ordered = prev.size() > cur.size() ||
                           (prev.size() == cur.size() && sim.terms[prev.front()] < sim.terms[cur.front()]);
      CHECK(ordered);
    }
    CHECK(c.quality == doctest::Approx(ClusterQuality(sim.a, c.assignment, 0.4)).epsilon(1e-12));
    CHECK(std::abs(c.quality - oracle::PartitionQuality(a, c.assignment, 0.4)) <= 1e-12);
  }
}

TEST_CASE("brute-force optimum on small graphs") {
  std::mt19937_64 rng(79);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 2 + rng() % 7;
    const auto a = oracle::RandomSimilarity(rng, n, 0.5, false);
    const double gamma = 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0;
    const Clustering c = ClusterTerms(oracle::DenseSimilarity(a), Options(gamma, round));
    CHECK(c.quality == doctest::Approx(oracle::BestPartitionQuality(a, gamma)).epsilon(1e-12));
  }
}

TEST_CASE("raising the resolution never reduces the number of clusters") {
  const auto sim = oracle::DenseSimilarity(TwoCliques());
  int previous = 0;
  for (double gamma = 0.01; gamma < 1.6; gamma += 0.05) {
    const int k = ClusterTerms(sim, Options(gamma)).num_clusters();
    CHECK(k >= previous);
    previous = k;
  }
}

TEST_CASE("same seed gives identical assignments") {
  std::mt19937_64 rng(83);
  const auto sim = oracle::DenseSimilarity(oracle::RandomSimilarity(rng, 80, 0.1, true));
  ClusterOptions o = Options(0.3, 5);
  const Clustering a = ClusterTerms(sim, o);
  o.threads = 4;
  const Clustering b = ClusterTerms(sim, o);
  CHECK(a.assignment == b.assignment);
  CHECK(a.quality == b.quality);
}

TEST_CASE("small clusters merge into their best neighbour") {
  oracle::Dense a = TwoCliques();
  a.push_back(std::vector<double>(7, 0.0));
  for (auto& row : a) row.resize(7, 0.0);
  a[6][0] = a[0][6] = 0.05;
  a[6][5] = a[5][6] = 0.2;
  ClusterOptions o = Options(0.5);
  const Clustering plain = ClusterTerms(oracle::DenseSimilarity(a), o);
  CHECK(plain.num_clusters() == 3);
  o.min_cluster_size = 2;
  const Clustering merged = ClusterTerms(oracle::DenseSimilarity(a), o);
  CHECK(merged.num_clusters() == 2);
  CHECK(merged.assignment[6] == merged.assignment[5]);
  CHECK(merged.quality ==
        doctest::Approx(ClusterQuality(oracle::DenseSimilarity(a).a, merged.assignment, 0.5)));
}

}  // TEST_SUITE
