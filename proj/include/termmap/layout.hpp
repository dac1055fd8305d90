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

#ifndef TERMMAP_LAYOUT_HPP_
#define TERMMAP_LAYOUT_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "termmap/termnet.hpp"

namespace termmap {

// Row i holds the (x, y) position of term i.
template <typename Scalar>
using Coordinates2 = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;
using Coordinates = Coordinates2<double>;

using SimilarityStorage = Eigen::SparseMatrix<double>;

// Symmetric non-negative similarities between selected terms, zero diagonal.
struct SimilarityMatrix {
  std::vector<std::string> terms;
  std::vector<std::int64_t> occ;  // document frequency of each term
  SimilarityStorage a;

  std::size_t size() const { return terms.size(); }
};

struct AssociationResult {
  SimilarityMatrix sim;
  // Selected terms outside the largest connected component.
  std::vector<std::string> dropped;
};

// a(i, j) = cooc(i, j) / (occ(i) * occ(j)) over the selected terms. Only the
// largest connected component of the positive-similarity graph is kept
// (ties: the component containing the earliest selected term); kept terms
// retain their order in `selected`.
AssociationResult AssociationStrength(const CoocNetwork& net,
                                      const std::vector<std::string>& selected);

// Mean of a's positive entries over i < j.
double MeanPositiveSimilarity(const SimilarityStorage& a);

// V(x) = sum_{i<j} a(i, j) * |x_i - x_j|^2.
template <typename Derived>
typename Derived::Scalar LayoutObjective(const SimilarityStorage& a,
                                         const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  Scalar v(0);
  for (Eigen::Index j = 0; j < a.outerSize(); ++j) {
    for (SimilarityStorage::InnerIterator it(a, j); it; ++it) {
      if (it.row() < j) v += Scalar(it.value()) * (x.row(it.row()) - x.row(j)).squaredNorm();
    }
  }
  return v;
}

// Mean Euclidean distance over all unordered pairs of rows.
template <typename Derived>
typename Derived::Scalar MeanPairDistance(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = x.rows();
  if (n < 2) return Scalar(0);
  Scalar total(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) total += (x.row(i) - x.row(j)).norm();
  }
  return total * Scalar(2) / (Scalar(n) * Scalar(n - 1));
}

struct LayoutOptions {
  std::uint64_t seed = 0;
  int restarts = 10;
  int max_iterations = 10000;
  double tolerance = 1e-9;
  // Above this many terms the average distance is estimated from sampled pairs
  // during the iterations, with an exact pass at the end.
  std::size_t exact_limit = 2000;
  std::size_t sampled_pairs = 2000000;
  // 0 means one thread per hardware core.
  unsigned threads = 0;
};

struct Layout2D {
  Coordinates coords;
  double objective = 0.0;
  std::uint64_t seed = 0;
  bool converged = false;
  int iterations = 0;
};

// Minimizes V subject to an average pairwise distance of 1, keeping the best
// of options.restarts seeded runs. The result has zero centroid. Throws
// ParameterError for fewer than 2 terms.
Layout2D OptimizeLayout(const SimilarityMatrix& sim, const LayoutOptions& options);

// Rotates the principal axis of the coordinates onto x and reflects so that
// the highest-weight term has non-negative x and y. When the spread is
// isotropic, the highest-weight term is rotated onto the positive x axis
// instead. The objective is unchanged.
Layout2D AlignLayout(Layout2D layout, const std::vector<double>& weights);

}  // namespace termmap

#endif  // TERMMAP_LAYOUT_HPP_
