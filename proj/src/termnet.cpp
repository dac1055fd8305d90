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

#include "termmap/termnet.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "termmap/error.hpp"

namespace termmap {

std::size_t CoocNetwork::IndexOf(const std::string& term) const {
  auto it = std::find(terms.begin(), terms.end(), term);
  return static_cast<std::size_t>(it - terms.begin());
}

std::size_t CountCandidates(const PhraseSets& phrases_per_doc) {
  std::unordered_set<std::string> all;
  for (const auto& doc : phrases_per_doc) all.insert(doc.begin(), doc.end());
  return all.size();
}

CoocNetwork MakeNetwork(std::vector<std::string> terms, std::vector<std::int64_t> occ,
                        const std::vector<Eigen::Triplet<std::int64_t>>& upper_pairs,
                        std::size_t n_docs) {
  const auto n = static_cast<Eigen::Index>(terms.size());
  std::vector<Eigen::Triplet<std::int64_t>> both;
  both.reserve(2 * upper_pairs.size());
  for (const auto& t : upper_pairs) {
    if (t.row() == t.col()) continue;
    both.emplace_back(t.row(), t.col(), t.value());
    both.emplace_back(t.col(), t.row(), t.value());
  }
  CoocNetwork net;
  net.terms = std::move(terms);
  net.occ = std::move(occ);
  net.cooc.resize(n, n);
  net.cooc.setFromTriplets(both.begin(), both.end());
  net.cooc.makeCompressed();
  net.n_docs = n_docs;
  return net;
}

CoocNetwork BuildNetwork(const PhraseSets& phrases_per_doc, std::int64_t min_occ) {
  if (min_occ < 1) throw ParameterError("min_occ must be >= 1");

  // Binary counting: each phrase at most once per document.
  std::unordered_map<std::string, std::int64_t> df;
  for (const auto& doc : phrases_per_doc) {
    std::unordered_set<std::string_view> seen;
    for (const auto& p : doc) {
      if (seen.insert(p).second) ++df[p];
    }
  }
  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (auto& [term, count] : df) {
    if (count >= min_occ) kept.emplace_back(term, count);
  }
  if (kept.empty()) {
    throw EmptyNetworkError("no noun phrase occurs in at least " + std::to_string(min_occ) +
                            " documents");
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });

  std::unordered_map<std::string, Eigen::Index> index;
  std::vector<std::string> terms;
  std::vector<std::int64_t> occ;
  for (auto& [term, count] : kept) {
    index.emplace(term, static_cast<Eigen::Index>(terms.size()));
    terms.push_back(term);
    occ.push_back(count);
  }

  std::vector<Eigen::Triplet<std::int64_t>> pairs;
  std::vector<Eigen::Index> ids;
  for (const auto& doc : phrases_per_doc) {
    ids.clear();
    for (const auto& p : doc) {
      if (auto it = index.find(p); it != index.end()) ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b) pairs.emplace_back(ids[a], ids[b], 1);
    }
  }
  // setFromTriplets sums duplicate entries.
  return MakeNetwork(std::move(terms), std::move(occ), pairs, phrases_per_doc.size());
}

std::vector<std::vector<std::size_t>> TermDocSets(const PhraseSets& phrases_per_doc,
                                                  const CoocNetwork& net) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < net.terms.size(); ++i) index.emplace(net.terms[i], i);
  std::vector<std::vector<std::size_t>> sets(net.terms.size());
  for (std::size_t d = 0; d < phrases_per_doc.size(); ++d) {
    for (const auto& p : phrases_per_doc[d]) {
      if (auto it = index.find(p); it != index.end()) {
        auto& s = sets[it->second];
        if (s.empty() || s.back() != d) s.push_back(d);
      }
    }
  }
  return sets;
}

}  // namespace termmap
