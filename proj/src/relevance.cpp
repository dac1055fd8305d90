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

#include "termmap/relevance.hpp"

#include <algorithm>
#include <cmath>

#include "termmap/error.hpp"

namespace termmap {

Eigen::VectorXd SecondOrder::Row(Eigen::Index i) const {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(s.rows());
  if (empty_row[static_cast<std::size_t>(i)]) return row;
  const double total = static_cast<double>(row_sums[i]);
  // Symmetric storage: column i holds row i.
  for (CountMatrix::InnerIterator it(s, i); it; ++it) {
    row[it.row()] = static_cast<double>(it.value()) / total;
  }
  return row;
}

SecondOrder ComputeSecondOrder(const CoocNetwork& net) {
  if (net.size() == 0) throw EmptyNetworkError("network has no terms");

  SecondOrder so;
  // With a zero diagonal in cooc, the k = i and k = j terms of the path sum
  // vanish, so S is C * C with its diagonal removed.
  so.s = (net.cooc * net.cooc).pruned();
  so.s.prune([](Eigen::Index row, Eigen::Index col, std::int64_t) { return row != col; });
  so.s.makeCompressed();

  const Eigen::Index n = so.s.cols();
  so.row_sums = Eigen::VectorX<std::int64_t>::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (CountMatrix::InnerIterator it(so.s, j); it; ++it) so.row_sums[j] += it.value();
  }
  const std::int64_t total = so.row_sums.sum();
  if (total == 0) {
    throw DegenerateNetworkError("no second-order co-occurrences: every term pair lacks a "
                                 "common neighbour");
  }
  so.empty_row.resize(static_cast<std::size_t>(n));
  so.q.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    so.empty_row[static_cast<std::size_t>(j)] = so.row_sums[j] == 0;
    // Column mass equals row mass because S is symmetric.
    so.q[j] = static_cast<double>(so.row_sums[j]) / static_cast<double>(total);
  }
  return so;
}

std::vector<RelevanceScore> KlRelevance(const CoocNetwork& net, const SecondOrder& so) {
  std::vector<RelevanceScore> scores(net.size());
  for (Eigen::Index i = 0; i < so.s.cols(); ++i) {
    auto& score = scores[static_cast<std::size_t>(i)];
    score.term = net.terms[static_cast<std::size_t>(i)];
    score.occ = net.occ[static_cast<std::size_t>(i)];
    if (so.empty_row[static_cast<std::size_t>(i)]) continue;
    const double row_total = static_cast<double>(so.row_sums[i]);
    double kl = 0.0;
    for (CountMatrix::InnerIterator it(so.s, i); it; ++it) {
      const double p = static_cast<double>(it.value()) / row_total;
      kl += p * std::log(p / so.q[it.row()]);
    }
    // Rounding can leave a tiny negative value when p_i equals q.
    score.kl = std::max(kl, 0.0);
  }
  return scores;
}

std::vector<RelevanceScore> ScoreTerms(const CoocNetwork& net) {
  return KlRelevance(net, ComputeSecondOrder(net));
}

bool RanksBefore(const RelevanceScore& a, const RelevanceScore& b) {
  if (a.kl != b.kl) return a.kl > b.kl;
  if (a.occ != b.occ) return a.occ > b.occ;
  return a.term < b.term;
}

std::size_t ResolveSelection(const Selection& selection, std::size_t n) {
  if (const auto* count = std::get_if<SelectCount>(&selection)) {
    if (count->k == 0) throw ParameterError("selection size must be positive");
    if (count->k > n) {
      throw ParameterError("cannot select " + std::to_string(count->k) + " terms: only " +
                           std::to_string(n) + " terms are available");
    }
    return count->k;
  }
  const double fraction = std::get<SelectFraction>(selection).fraction;
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ParameterError("selection fraction must lie in (0, 1]");
  }
  // Guard against 0.5 * 2101 style products landing a hair above an integer.
  const double exact = fraction * static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::ceil(exact - 1e-9));
  return std::clamp<std::size_t>(k, 1, n);
}

std::vector<RelevanceScore> SelectTop(std::vector<RelevanceScore> scores,
                                      const Selection& selection) {
  const std::size_t k = ResolveSelection(selection, scores.size());
  std::sort(scores.begin(), scores.end(), RanksBefore);
  scores.resize(k);
  return scores;
}

}  // namespace termmap
