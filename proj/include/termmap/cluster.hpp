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

#ifndef TERMMAP_CLUSTER_HPP_
#define TERMMAP_CLUSTER_HPP_

#include <cstdint>
#include <vector>

#include "termmap/layout.hpp"

namespace termmap {

struct Clustering {
  // 1-based cluster id per term. Ids are contiguous and ordered by descending
  // cluster size, ties by the lexicographically smallest member term.
  std::vector<int> assignment;
  double resolution = 0.0;
  double quality = 0.0;

  int num_clusters() const;
};

struct ClusterOptions {
  double resolution = 1.0;
  std::uint64_t seed = 1;
  int restarts = 20;
  // Clusters smaller than this are merged into their best-connected
  // neighbour after optimization. 1 disables merging.
  int min_cluster_size = 1;
  unsigned threads = 0;
};

// Q = sum over pairs i < j in the same cluster of (a(i, j) - resolution).
double ClusterQuality(const SimilarityStorage& a, const std::vector<int>& assignment,
                      double resolution);

// Maximizes Q by local moving with cluster aggregation and node-level
// refinement, keeping the best of options.restarts seeded runs.
Clustering ClusterTerms(const SimilarityMatrix& sim, const ClusterOptions& options);

// Mean of the positive similarities; a starting point for tuning.
double DefaultResolution(const SimilarityMatrix& sim);

}  // namespace termmap

#endif  // TERMMAP_CLUSTER_HPP_
