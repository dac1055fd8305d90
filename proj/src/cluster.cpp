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

#include "termmap/cluster.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <thread>

#include "termmap/error.hpp"

namespace termmap {
namespace {

constexpr double kMinGain = 1e-12;

struct Graph {
  // adj[u] lists (v, weight) with v != u.
  std::vector<std::vector<std::pair<int, double>>> adj;
  std::vector<double> size;  // number of original terms per node

  int n() const { return static_cast<int>(adj.size()); }
};

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Graph FromSimilarity(const SimilarityStorage& a) {
  Graph g;
  g.adj.resize(static_cast<std::size_t>(a.cols()));
  g.size.assign(static_cast<std::size_t>(a.cols()), 1.0);
  for (Eigen::Index j = 0; j < a.outerSize(); ++j) {
    for (SimilarityStorage::InnerIterator it(a, j); it; ++it) {
      if (it.row() != j && it.value() != 0.0) {
        g.adj[static_cast<std::size_t>(j)].emplace_back(static_cast<int>(it.row()), it.value());
      }
    }
  }
  return g;
}

// Renumbers cluster ids to 0..k-1 in order of first appearance.
int Compact(std::vector<int>& cluster) {
  std::map<int, int> ids;
  for (int& c : cluster) c = ids.emplace(c, static_cast<int>(ids.size())).first->second;
  return static_cast<int>(ids.size());
}

// Moves single nodes between clusters until no move raises Q. Returns true
// when at least one node moved.
bool LocalMoving(const Graph& g, std::vector<int>& cluster, double gamma, std::mt19937_64& rng) {
  const int n = g.n();
  std::vector<double> cluster_size(static_cast<std::size_t>(n), 0.0);
  for (int u = 0; u < n; ++u) cluster_size[static_cast<std::size_t>(cluster[u])] += g.size[u];
  std::vector<int> empty;
  for (int c = n - 1; c >= 0; --c) {
    if (cluster_size[static_cast<std::size_t>(c)] == 0.0) empty.push_back(c);
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> link(static_cast<std::size_t>(n), 0.0);
  std::vector<int> touched;
  bool any = false;
  for (bool moved = true; moved;) {
    moved = false;
    std::shuffle(order.begin(), order.end(), rng);
    for (int u : order) {
      const int from = cluster[u];
      const double su = g.size[u];
      touched.clear();
      for (const auto& [v, w] : g.adj[u]) {
        const int c = cluster[v];
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += w;
      }
      cluster_size[from] -= su;
      const double stay = link[from] - gamma * su * cluster_size[from];
      int best = from;
      double best_gain = stay;
      for (int c : touched) {
        if (c == from) continue;
        const double gain = link[c] - gamma * su * cluster_size[c];
        if (gain > best_gain + kMinGain) {
          best = c;
          best_gain = gain;
        }
      }
      // A fresh singleton cluster contributes nothing.
      if (cluster_size[from] > 0.0 && 0.0 > best_gain + kMinGain && !empty.empty()) {
        best = empty.back();
        best_gain = 0.0;
      }
      if (best != from) {
        if (!empty.empty() && best == empty.back()) empty.pop_back();
        if (cluster_size[from] == 0.0) empty.push_back(from);
        cluster[u] = best;
        moved = true;
        any = true;
      }
      cluster_size[cluster[u]] += su;
      for (int c : touched) link[c] = 0.0;
    }
  }
  return any;
}

Graph Aggregate(const Graph& g, const std::vector<int>& cluster, int k) {
  Graph agg;
  agg.adj.resize(static_cast<std::size_t>(k));
  agg.size.assign(static_cast<std::size_t>(k), 0.0);
  std::vector<std::map<int, double>> edges(static_cast<std::size_t>(k));
  for (int u = 0; u < g.n(); ++u) {
    agg.size[cluster[u]] += g.size[u];
    for (const auto& [v, w] : g.adj[u]) {
      if (cluster[u] != cluster[v]) edges[cluster[u]][cluster[v]] += w;
    }
  }
  for (int c = 0; c < k; ++c) agg.adj[c].assign(edges[c].begin(), edges[c].end());
  return agg;
}

std::vector<int> RunOnce(const Graph& base, double gamma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> assignment(static_cast<std::size_t>(base.n()));
  std::iota(assignment.begin(), assignment.end(), 0);

  for (int round = 0; round < 100; ++round) {
    // Multilevel phase: move nodes, collapse clusters, repeat on the
    // aggregate until it no longer changes.
    Graph g = base;
    std::vector<int> level(assignment);
    int k = Compact(level);
    // node_of[u] is the aggregate node holding original node u.
    std::vector<int> node_of(level);
    g = Aggregate(base, level, k);
    for (;;) {
      std::vector<int> cluster(static_cast<std::size_t>(g.n()));
      std::iota(cluster.begin(), cluster.end(), 0);
      if (!LocalMoving(g, cluster, gamma, rng)) break;
      const int kk = Compact(cluster);
      for (int& x : node_of) x = cluster[x];
      g = Aggregate(g, cluster, kk);
    }
    assignment = node_of;

    // Refinement: single original nodes may still improve Q.
    if (!LocalMoving(base, assignment, gamma, rng)) break;
    Compact(assignment);
  }
  Compact(assignment);
  return assignment;
}

void MergeSmallClusters(const Graph& g, std::vector<int>& assignment, int min_size) {
  for (;;) {
    const int k = Compact(assignment);
    std::vector<int> size(static_cast<std::size_t>(k), 0);
    for (int c : assignment) ++size[c];
    int smallest = -1;
    for (int c = 0; c < k; ++c) {
      if (size[c] < min_size && (smallest < 0 || size[c] < size[smallest])) smallest = c;
    }
    if (smallest < 0) return;
    std::vector<double> link(static_cast<std::size_t>(k), 0.0);
    for (int u = 0; u < g.n(); ++u) {
      if (assignment[u] != smallest) continue;
      for (const auto& [v, w] : g.adj[u]) link[assignment[v]] += w;
    }
    int target = -1;
    for (int c = 0; c < k; ++c) {
      if (c != smallest && link[c] > 0.0 && (target < 0 || link[c] > link[target])) target = c;
    }
    if (target < 0) return;  // isolated; nothing to merge into
    for (int& c : assignment) {
      if (c == smallest) c = target;
    }
  }
}

}  // namespace

int Clustering::num_clusters() const {
  return assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end());
}

double ClusterQuality(const SimilarityStorage& a, const std::vector<int>& assignment,
                      double resolution) {
  double q = 0.0;
  for (Eigen::Index j = 0; j < a.outerSize(); ++j) {
    for (SimilarityStorage::InnerIterator it(a, j); it; ++it) {
      if (it.row() < j && assignment[static_cast<std::size_t>(it.row())] ==
                              assignment[static_cast<std::size_t>(j)]) {
        q += it.value();
      }
    }
  }
  std::map<int, double> size;
  for (int c : assignment) size[c] += 1.0;
  for (const auto& [c, s] : size) q -= resolution * s * (s - 1.0) / 2.0;
  return q;
}

double DefaultResolution(const SimilarityMatrix& sim) { return MeanPositiveSimilarity(sim.a); }

Clustering ClusterTerms(const SimilarityMatrix& sim, const ClusterOptions& options) {
  if (!(options.resolution > 0.0)) throw ParameterError("resolution must be positive");
  if (options.restarts < 1) throw ParameterError("restarts must be >= 1");
  if (options.min_cluster_size < 1) throw ParameterError("min_cluster_size must be >= 1");

  const Graph base = FromSimilarity(sim.a);
  const auto restarts = static_cast<std::size_t>(options.restarts);
  std::vector<std::vector<int>> runs(restarts);
  std::vector<double> quality(restarts);
  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(restarts));
  auto work = [&](unsigned worker) {
    for (std::size_t r = worker; r < restarts; r += threads) {
      runs[r] = RunOnce(base, options.resolution, SplitMix64(options.seed ^ (0x5851F42DULL * (r + 1))));
      quality[r] = ClusterQuality(sim.a, runs[r], options.resolution);
    }
  };
  if (threads == 1 || base.n() < 64) {
    for (unsigned t = 0; t < threads; ++t) work(t);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (quality[r] > quality[best] + kMinGain) best = r;
  }
  std::vector<int> assignment = std::move(runs[best]);
  if (options.min_cluster_size > 1) MergeSmallClusters(base, assignment, options.min_cluster_size);

  // Canonical labels: by size, then smallest member term.
  const int k = Compact(assignment);
  std::vector<int> size(static_cast<std::size_t>(k), 0);
  std::vector<const std::string*> first(static_cast<std::size_t>(k), nullptr);
  for (std::size_t u = 0; u < assignment.size(); ++u) {
    const int c = assignment[u];
    ++size[c];
    if (!first[c] || sim.terms[u] < *first[c]) first[c] = &sim.terms[u];
  }
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (size[a] != size[b]) return size[a] > size[b];
    return *first[a] < *first[b];
  });
  std::vector<int> label(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) label[order[i]] = i + 1;
  for (int& c : assignment) c = label[c];

  Clustering result;
  result.assignment = std::move(assignment);
  result.resolution = options.resolution;
  result.quality = ClusterQuality(sim.a, result.assignment, options.resolution);
  return result;
}

}  // namespace termmap
