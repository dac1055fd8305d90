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

#ifndef TERMMAP_TERMNET_HPP_
#define TERMMAP_TERMNET_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "termmap/corpus.hpp"

namespace termmap {

// Distinct normalized noun phrases of each document, aligned with the corpus.
using PhraseSets = std::vector<std::vector<std::string>>;

using CountMatrix = Eigen::SparseMatrix<std::int64_t>;

// Term occurrence counts and document-level co-occurrence counts.
//
// occ[i] is the number of documents containing term i. cooc(i, j) is the
// number of documents containing both terms; the matrix is symmetric with a
// zero diagonal.
struct CoocNetwork {
  std::vector<std::string> terms;
  std::vector<std::int64_t> occ;
  CountMatrix cooc;
  std::size_t n_docs = 0;

  std::size_t size() const { return terms.size(); }
  std::int64_t Cooc(std::size_t i, std::size_t j) const { return cooc.coeff(i, j); }
  // Index of a term, or size() when absent.
  std::size_t IndexOf(const std::string& term) const;
};

// Counts each phrase once per document, drops phrases occurring in fewer
// than min_occ documents and orders the survivors by descending document
// frequency, ties lexicographically.
CoocNetwork BuildNetwork(const PhraseSets& phrases_per_doc, std::int64_t min_occ);

// For every surviving term of BuildNetwork(phrases_per_doc, min_occ), the
// sorted indices of the documents containing it, aligned with its terms.
std::vector<std::vector<std::size_t>> TermDocSets(const PhraseSets& phrases_per_doc,
                                                  const CoocNetwork& net);

// Number of distinct phrases over all documents, before thresholding.
std::size_t CountCandidates(const PhraseSets& phrases_per_doc);

// Builds a network from explicit counts, used when reading a dump.
CoocNetwork MakeNetwork(std::vector<std::string> terms, std::vector<std::int64_t> occ,
                        const std::vector<Eigen::Triplet<std::int64_t>>& upper_pairs,
                        std::size_t n_docs);

}  // namespace termmap

#endif  // TERMMAP_TERMNET_HPP_
