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

#ifndef TERMMAP_PIPELINE_HPP_
#define TERMMAP_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "termmap/cluster.hpp"
#include "termmap/corpus.hpp"
#include "termmap/error.hpp"
#include "termmap/layout.hpp"
#include "termmap/overlay.hpp"
#include "termmap/relevance.hpp"
#include "termmap/termnet.hpp"

namespace termmap {

struct RunConfig {
  std::filesystem::path input;
  std::string format = "tsv";  // tsv | text
  SplitMode split = SplitMode::kParagraph;
  ColumnSpec columns;
  std::int64_t min_occ = 10;
  std::optional<std::size_t> select;  // absolute k; wins over select_frac
  double select_frac = kDefaultSelectFraction;
  std::uint64_t seed = 1;
  int restarts = 10;          // layout restarts
  int cluster_restarts = 20;
  double resolution = 0.0;    // 0 selects DefaultResolution
  int min_cluster_size = 1;
  std::string overlay = "density";  // none | density | score-mean | subset-share
  double bandwidth = 0.0;           // 0 selects DefaultBandwidth
  std::string view;                 // render only this view; empty renders all
  int width = 1000;
  int height = 800;
  unsigned threads = 0;
  std::filesystem::path out = "termmap_out";

  // Throws ParameterError for out-of-range values.
  void Validate() const;
  Selection selection() const;
  std::string SelectionString() const;
  std::uint64_t layout_seed() const { return seed; }
  std::uint64_t cluster_seed() const { return seed + 1; }
};

// Dump file names inside the output directory.
namespace dump {
inline constexpr const char* kPhrases = "phrases.tsv";
inline constexpr const char* kNetworkTerms = "network_terms.tsv";
inline constexpr const char* kNetworkPairs = "network_pairs.tsv";
inline constexpr const char* kRelevance = "relevance.tsv";
inline constexpr const char* kLayout = "layout.tsv";
inline constexpr const char* kClusters = "clusters.tsv";
inline constexpr const char* kMap = "map.json";
inline constexpr const char* kManifest = "manifest.json";
inline constexpr const char* kFailed = ".failed";
}  // namespace dump

struct ExtractResult {
  std::vector<std::string> doc_ids;
  std::vector<std::optional<double>> doc_scores;
  std::vector<std::optional<bool>> doc_subset;
  PhraseSets phrases;
  std::size_t candidates = 0;
};

struct NetworkResult {
  CoocNetwork net;
  std::int64_t min_occ = 1;
  std::size_t candidates = 0;
};

struct RankResult {
  std::vector<RelevanceScore> ranked;  // every term, best first
  std::size_t selected = 0;            // the first `selected` are kept
  std::string selection;

  std::vector<std::string> SelectedTerms() const;
};

struct LayoutResult {
  std::vector<std::string> terms;
  Coordinates coords;
  double objective = 0.0;
  std::uint64_t seed = 0;
  int restarts = 0;
  bool converged = true;
  std::vector<std::string> dropped;
};

struct ClusterResult {
  std::vector<std::string> terms;
  std::vector<int> assignment;
  double resolution = 0.0;
  double quality = 0.0;
  std::uint64_t seed = 0;
  int restarts = 0;
};

// Each stage computes its result, writes its dump into config.out and
// returns the result. The Read* functions load a dump written earlier and
// throw FormatError naming the producing stage when it is missing or corrupt.
ExtractResult StageExtract(const RunConfig& config);
ExtractResult ReadExtract(const std::filesystem::path& dir);

NetworkResult StageNetwork(const RunConfig& config, const ExtractResult& extract);
NetworkResult ReadNetwork(const std::filesystem::path& dir);

RankResult StageRank(const RunConfig& config, const NetworkResult& network);
RankResult ReadRank(const std::filesystem::path& dir);

LayoutResult StageLayout(const RunConfig& config, const NetworkResult& network,
                         const RankResult& rank);
LayoutResult ReadLayout(const std::filesystem::path& dir);

ClusterResult StageCluster(const RunConfig& config, const NetworkResult& network,
                           const LayoutResult& layout);
ClusterResult ReadCluster(const std::filesystem::path& dir);

// Assembles the map, applies the configured overlay and writes map.json,
// map.tsv and the SVG views.
TermMap StageRender(const RunConfig& config, const ExtractResult& extract,
                    const NetworkResult& network, const RankResult& rank,
                    const LayoutResult& layout, const ClusterResult& clusters);

struct StageTiming {
  std::string stage;
  double milliseconds = 0.0;
};

struct RunReport {
  TermMap map;
  std::vector<StageTiming> timings;
  std::vector<std::string> warnings;
};

// Runs every stage in order and writes manifest.json. On failure a .failed
// marker naming the stage is written, and a StageError is thrown.
RunReport Run(const RunConfig& config);

class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& cause)
      : Error("stage '" + stage + "' failed: " + cause), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace termmap

#endif  // TERMMAP_PIPELINE_HPP_
