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

#ifndef TERMMAP_RELEVANCE_HPP_
#define TERMMAP_RELEVANCE_HPP_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "termmap/termnet.hpp"

namespace termmap {

// Second-order co-occurrence counts and the distributions derived from them.
//
//   s(i, j) = sum over k not in {i, j} of cooc(i, k) * cooc(k, j),  s(i, i) = 0
//   p_i(j)  = s(i, j) / sum_j' s(i, j')
//   q(j)    = sum_i s(i, j) / sum_ij s(i, j)
struct SecondOrder {
  CountMatrix s;                     // symmetric, zero diagonal
  Eigen::VectorX<std::int64_t> row_sums;
  Eigen::VectorXd q;
  std::vector<bool> empty_row;       // rows without second-order mass

  // Row i of P as a dense vector (all zeros for an empty row).
  Eigen::VectorXd Row(Eigen::Index i) const;
};

SecondOrder ComputeSecondOrder(const CoocNetwork& net);

struct RelevanceScore {
  std::string term;
  std::int64_t occ = 0;
  double kl = 0.0;  // KL(p_i || q) in nats
};

// KL divergence of each term's second-order distribution from the overall
// one; terms with an empty row score 0. Scores are aligned with net.terms.
std::vector<RelevanceScore> KlRelevance(const CoocNetwork& net, const SecondOrder& so);

// Convenience: ComputeSecondOrder followed by KlRelevance.
std::vector<RelevanceScore> ScoreTerms(const CoocNetwork& net);

// Number of terms to keep: an absolute count or a fraction in (0, 1].
struct SelectCount {
  std::size_t k;
};
struct SelectFraction {
  double fraction;
};
using Selection = std::variant<SelectCount, SelectFraction>;

inline constexpr double kDefaultSelectFraction = 0.5;

std::size_t ResolveSelection(const Selection& selection, std::size_t n);

// Orders scores by descending kl, then descending occ, then term, and keeps
// the first k.
std::vector<RelevanceScore> SelectTop(std::vector<RelevanceScore> scores,
                                      const Selection& selection);

// Ranking order used by SelectTop and the relevance dump.
bool RanksBefore(const RelevanceScore& a, const RelevanceScore& b);

}  // namespace termmap

#endif  // TERMMAP_RELEVANCE_HPP_
