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

#include "termmap/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "termmap/error.hpp"
#include "termmap/nlp.hpp"
#include "termmap/render.hpp"
#include "termmap/util.hpp"

namespace termmap {

namespace fs = std::filesystem;

namespace {

using Fields = std::map<std::string, std::string>;

std::string HeaderLine(const std::string& kind, const Fields& fields) {
  std::string line = "# termmap " + kind;
  for (const auto& [k, v] : fields) line += " " + k + "=" + v;
  return line + "\n";
}

struct DumpFile {
  Fields header;
  std::vector<std::vector<std::string>> rows;  // after the column header
};

// Reads a dump written by HeaderLine plus a column header row.
DumpFile ReadDump(const fs::path& path, const std::string& kind, const std::string& producer,
                  std::size_t columns) {
  const std::string hint = " (expected output of `termmap " + producer + "`)";
  if (!fs::exists(path)) throw FormatError("missing " + path.string() + hint);
  const std::vector<std::string> lines = util::Lines(util::ReadFile(path));
  const std::string prefix = "# termmap " + kind;
  if (lines.size() < 2 || lines[0].rfind(prefix, 0) != 0) {
    throw FormatError("corrupt " + path.string() + hint);
  }
  DumpFile dump;
  for (const auto& token : util::Split(lines[0].substr(prefix.size()), ' ')) {
    if (token.empty()) continue;
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw FormatError("corrupt header in " + path.string() + hint);
    dump.header[token.substr(0, eq)] = token.substr(eq + 1);
  }
  for (std::size_t i = 2; i < lines.size(); ++i) {
    auto cells = util::Split(lines[i], '\t');
    if (cells.size() != columns) {
      throw FormatError("corrupt " + path.string() + " line " + std::to_string(i + 1) + hint);
    }
    dump.rows.push_back(std::move(cells));
  }
  return dump;
}

template <typename T>
T HeaderValue(const DumpFile& dump, const std::string& key, const fs::path& path) {
  auto it = dump.header.find(key);
  if (it == dump.header.end()) throw FormatError(path.string() + ": header lacks '" + key + "'");
  if constexpr (std::is_same_v<T, std::string>) {
    return it->second;
  } else if constexpr (std::is_floating_point_v<T>) {
    auto v = util::ParseDouble(it->second);
    if (!v) throw FormatError(path.string() + ": bad value for '" + key + "'");
    return *v;
  } else {
    auto v = util::ParseInt<T>(it->second);
    if (!v) throw FormatError(path.string() + ": bad value for '" + key + "'");
    return *v;
  }
}

template <typename T>
T Cell(const std::string& text, const fs::path& path) {
  if constexpr (std::is_floating_point_v<T>) {
    auto v = util::ParseDouble(text);
    if (!v) throw FormatError(path.string() + ": bad number '" + text + "'");
    return *v;
  } else {
    auto v = util::ParseInt<T>(text);
    if (!v) throw FormatError(path.string() + ": bad integer '" + text + "'");
    return *v;
  }
}

std::string Join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

unsigned ThreadCount(unsigned requested, std::size_t work) {
  unsigned t = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::clamp<std::size_t>(t, 1, std::max<std::size_t>(work, 1)));
}

}  // namespace

void RunConfig::Validate() const {
  if (format != "tsv" && format != "text") {
    throw ParameterError("format must be tsv or text, got '" + format + "'");
  }
  if (min_occ < 1) throw ParameterError("min-occ must be >= 1");
  if (select && *select == 0) throw ParameterError("select must be >= 1");
  if (!(select_frac > 0.0 && select_frac <= 1.0)) {
    throw ParameterError("select-frac must lie in (0, 1]");
  }
  if (restarts < 1 || cluster_restarts < 1) throw ParameterError("restarts must be >= 1");
  if (resolution < 0.0 || !std::isfinite(resolution)) {
    throw ParameterError("resolution must be positive (0 selects the default)");
  }
  if (min_cluster_size < 1) throw ParameterError("min-cluster-size must be >= 1");
  if (overlay != "none" && overlay != "density" && overlay != "score-mean" &&
      overlay != "subset-share") {
    throw ParameterError("overlay must be none, density, score-mean or subset-share");
  }
  if (bandwidth < 0.0 || !std::isfinite(bandwidth)) {
    throw ParameterError("bandwidth must be positive (0 selects the default)");
  }
  if (width < 16 || height < 16) throw ParameterError("image size must be at least 16 pixels");
  if (!view.empty()) ParseView(view);
}

Selection RunConfig::selection() const {
  if (select) return SelectCount{*select};
  return SelectFraction{select_frac};
}

std::string RunConfig::SelectionString() const {
  if (select) return "k=" + std::to_string(*select);
  return "fraction=" + util::FormatExact(select_frac);
}

std::vector<std::string> RankResult::SelectedTerms() const {
  std::vector<std::string> terms;
  for (std::size_t i = 0; i < selected; ++i) terms.push_back(ranked[i].term);
  return terms;
}

// ---------------------------------------------------------------- extract

ExtractResult StageExtract(const RunConfig& config) {
  const Corpus corpus = config.format == "tsv" ? LoadTabular(config.input, config.columns)
                                               : LoadPlaintext(config.input, config.split);
  ExtractResult result;
  const std::size_t n = corpus.n_docs();
  result.phrases.resize(n);
  const nlp::PhraseExtractor extractor;
  const unsigned threads = ThreadCount(config.threads, n / 16);
  auto work = [&](unsigned worker) {
    for (std::size_t d = worker; d < n; d += threads) {
      result.phrases[d] = extractor.Extract(corpus.documents[d].text);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();

  for (const auto& doc : corpus.documents) {
    result.doc_ids.push_back(doc.id);
    result.doc_scores.push_back(doc.score);
    result.doc_subset.push_back(doc.in_subset);
  }
  result.candidates = CountCandidates(result.phrases);

  std::string out = HeaderLine("phrases", {{"documents", std::to_string(n)},
                                           {"candidates", std::to_string(result.candidates)}});
  out += "id\tscore\tsubset\tphrases\n";
  for (std::size_t d = 0; d < n; ++d) {
    out += result.doc_ids[d] + '\t' +
           (result.doc_scores[d] ? util::FormatExact(*result.doc_scores[d]) : "") + '\t' +
           (result.doc_subset[d] ? (*result.doc_subset[d] ? "1" : "0") : "") + '\t' +
           Join(result.phrases[d], "|") + '\n';
  }
  fs::create_directories(config.out);
  util::WriteFile(config.out / dump::kPhrases, out);
  return result;
}

ExtractResult ReadExtract(const fs::path& dir) {
  const fs::path path = dir / dump::kPhrases;
  const DumpFile file = ReadDump(path, "phrases", "extract", 4);
  ExtractResult result;
  for (const auto& row : file.rows) {
    result.doc_ids.push_back(row[0]);
    result.doc_scores.push_back(row[1].empty() ? std::nullopt
                                               : std::optional<double>(Cell<double>(row[1], path)));
    result.doc_subset.push_back(row[2].empty() ? std::nullopt : std::optional<bool>(row[2] == "1"));
    std::vector<std::string> phrases;
    if (!row[3].empty()) phrases = util::Split(row[3], '|');
    result.phrases.push_back(std::move(phrases));
  }
  if (result.doc_ids.size() != HeaderValue<std::size_t>(file, "documents", path)) {
    throw FormatError("corrupt " + path.string() + ": document count mismatch");
  }
  result.candidates = HeaderValue<std::size_t>(file, "candidates", path);
  return result;
}

// ---------------------------------------------------------------- network

NetworkResult StageNetwork(const RunConfig& config, const ExtractResult& extract) {
  NetworkResult result;
  result.net = BuildNetwork(extract.phrases, config.min_occ);
  result.min_occ = config.min_occ;
  result.candidates = extract.candidates;

  const CoocNetwork& net = result.net;
  std::string terms = HeaderLine("network", {{"documents", std::to_string(net.n_docs)},
                                             {"min_occ", std::to_string(config.min_occ)},
                                             {"candidates", std::to_string(extract.candidates)},
                                             {"terms", std::to_string(net.size())}});
  terms += "term\toccurrences\n";
  for (std::size_t i = 0; i < net.size(); ++i) {
    terms += net.terms[i] + '\t' + std::to_string(net.occ[i]) + '\n';
  }
  std::string pairs = HeaderLine("pairs", {{"terms", std::to_string(net.size())}});
  pairs += "term_i\tterm_j\tcooccurrences\n";
  for (Eigen::Index j = 0; j < net.cooc.outerSize(); ++j) {
    for (CountMatrix::InnerIterator it(net.cooc, j); it; ++it) {
      if (it.row() < j) {
        pairs += net.terms[static_cast<std::size_t>(it.row())] + '\t' +
                 net.terms[static_cast<std::size_t>(j)] + '\t' + std::to_string(it.value()) + '\n';
      }
    }
  }
  fs::create_directories(config.out);
  util::WriteFile(config.out / dump::kNetworkTerms, terms);
  util::WriteFile(config.out / dump::kNetworkPairs, pairs);
  return result;
}

NetworkResult ReadNetwork(const fs::path& dir) {
  const fs::path terms_path = dir / dump::kNetworkTerms;
  const fs::path pairs_path = dir / dump::kNetworkPairs;
  const DumpFile terms = ReadDump(terms_path, "network", "network", 2);
  const DumpFile pairs = ReadDump(pairs_path, "pairs", "network", 3);

  std::vector<std::string> names;
  std::vector<std::int64_t> occ;
  std::unordered_map<std::string, Eigen::Index> index;
  for (const auto& row : terms.rows) {
    index.emplace(row[0], static_cast<Eigen::Index>(names.size()));
    names.push_back(row[0]);
    occ.push_back(Cell<std::int64_t>(row[1], terms_path));
  }
  std::vector<Eigen::Triplet<std::int64_t>> upper;
  for (const auto& row : pairs.rows) {
    auto a = index.find(row[0]);
    auto b = index.find(row[1]);
    if (a == index.end() || b == index.end()) {
      throw FormatError("corrupt " + pairs_path.string() + ": unknown term in pair");
    }
    upper.emplace_back(a->second, b->second, Cell<std::int64_t>(row[2], pairs_path));
  }
  NetworkResult result;
  result.net = MakeNetwork(std::move(names), std::move(occ), upper,
                           HeaderValue<std::size_t>(terms, "documents", terms_path));
  result.min_occ = HeaderValue<std::int64_t>(terms, "min_occ", terms_path);
  result.candidates = HeaderValue<std::size_t>(terms, "candidates", terms_path);
  return result;
}

// ---------------------------------------------------------------- rank

RankResult StageRank(const RunConfig& config, const NetworkResult& network) {
  RankResult result;
  result.ranked = ScoreTerms(network.net);
  std::sort(result.ranked.begin(), result.ranked.end(), RanksBefore);
  result.selected = ResolveSelection(config.selection(), result.ranked.size());
  result.selection = config.SelectionString();

  std::string out = HeaderLine("relevance", {{"selected", std::to_string(result.selected)},
                                             {"selection", result.selection}});
  out += "term\toccurrences\tkl\n";
  for (const auto& s : result.ranked) {
    out += s.term + '\t' + std::to_string(s.occ) + '\t' + util::FormatExact(s.kl) + '\n';
  }
  fs::create_directories(config.out);
  util::WriteFile(config.out / dump::kRelevance, out);
  return result;
}

RankResult ReadRank(const fs::path& dir) {
  const fs::path path = dir / dump::kRelevance;
  const DumpFile file = ReadDump(path, "relevance", "rank", 3);
  RankResult result;
  for (const auto& row : file.rows) {
    result.ranked.push_back({row[0], Cell<std::int64_t>(row[1], path), Cell<double>(row[2], path)});
  }
  result.selected = HeaderValue<std::size_t>(file, "selected", path);
  result.selection = HeaderValue<std::string>(file, "selection", path);
  if (result.selected > result.ranked.size()) {
    throw FormatError("corrupt " + path.string() + ": more selected terms than ranked terms");
  }
  return result;
}

// ---------------------------------------------------------------- layout

LayoutResult StageLayout(const RunConfig& config, const NetworkResult& network,
                         const RankResult& rank) {
  AssociationResult assoc = AssociationStrength(network.net, rank.SelectedTerms());
  LayoutOptions options;
  options.seed = config.layout_seed();
  options.restarts = config.restarts;
  options.threads = config.threads;
  Layout2D layout = OptimizeLayout(assoc.sim, options);
  std::vector<double> weights(assoc.sim.occ.begin(), assoc.sim.occ.end());
  layout = AlignLayout(std::move(layout), weights);

  LayoutResult result;
  result.terms = assoc.sim.terms;
  result.coords = layout.coords;
  result.objective = layout.objective;
  result.seed = options.seed;
  result.restarts = options.restarts;
  result.converged = layout.converged;
  result.dropped = assoc.dropped;

  std::string out = HeaderLine("layout", {{"seed", std::to_string(result.seed)},
                                          {"restarts", std::to_string(result.restarts)},
                                          {"objective", util::FormatExact(result.objective)},
                                          {"converged", result.converged ? "1" : "0"},
                                          {"dropped", std::to_string(result.dropped.size())}});
  out += "term\tx\ty\n";
  for (std::size_t i = 0; i < result.terms.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out += result.terms[i] + '\t' + util::FormatExact(result.coords(r, 0)) + '\t' +
           util::FormatExact(result.coords(r, 1)) + '\n';
  }
  fs::create_directories(config.out);
  util::WriteFile(config.out / dump::kLayout, out);
  return result;
}

LayoutResult ReadLayout(const fs::path& dir) {
  const fs::path path = dir / dump::kLayout;
  const DumpFile file = ReadDump(path, "layout", "layout", 3);
  LayoutResult result;
  result.coords.resize(static_cast<Eigen::Index>(file.rows.size()), 2);
  for (std::size_t i = 0; i < file.rows.size(); ++i) {
    const auto& row = file.rows[i];
    result.terms.push_back(row[0]);
    result.coords(static_cast<Eigen::Index>(i), 0) = Cell<double>(row[1], path);
    result.coords(static_cast<Eigen::Index>(i), 1) = Cell<double>(row[2], path);
  }
  result.seed = HeaderValue<std::uint64_t>(file, "seed", path);
  result.restarts = HeaderValue<int>(file, "restarts", path);
  result.objective = HeaderValue<double>(file, "objective", path);
  result.converged = HeaderValue<std::string>(file, "converged", path) == "1";
  return result;
}

// ---------------------------------------------------------------- cluster

ClusterResult StageCluster(const RunConfig& config, const NetworkResult& network,
                           const LayoutResult& layout) {
  const AssociationResult assoc = AssociationStrength(network.net, layout.terms);
  if (assoc.sim.terms != layout.terms) {
    throw FormatError("layout terms do not form a connected similarity graph");
  }
  ClusterOptions options;
  options.resolution = config.resolution > 0.0 ? config.resolution : DefaultResolution(assoc.sim);
  options.seed = config.cluster_seed();
  options.restarts = config.cluster_restarts;
  options.min_cluster_size = config.min_cluster_size;
  options.threads = config.threads;
  const Clustering clustering = ClusterTerms(assoc.sim, options);

  ClusterResult result;
  result.terms = layout.terms;
  result.assignment = clustering.assignment;
  result.resolution = clustering.resolution;
  result.quality = clustering.quality;
  result.seed = options.seed;
  result.restarts = options.restarts;

  std::string out = HeaderLine("clusters", {{"resolution", util::FormatExact(result.resolution)},
                                            {"quality", util::FormatExact(result.quality)},
                                            {"seed", std::to_string(result.seed)},
                                            {"restarts", std::to_string(result.restarts)},
                                            {"clusters", std::to_string(clustering.num_clusters())}});
  out += "term\tcluster\n";
  for (std::size_t i = 0; i < result.terms.size(); ++i) {
    out += result.terms[i] + '\t' + std::to_string(result.assignment[i]) + '\n';
  }
  fs::create_directories(config.out);
  util::WriteFile(config.out / dump::kClusters, out);
  return result;
}

ClusterResult ReadCluster(const fs::path& dir) {
  const fs::path path = dir / dump::kClusters;
  const DumpFile file = ReadDump(path, "clusters", "cluster", 2);
  ClusterResult result;
  for (const auto& row : file.rows) {
    result.terms.push_back(row[0]);
    result.assignment.push_back(Cell<int>(row[1], path));
  }
  result.resolution = HeaderValue<double>(file, "resolution", path);
  result.quality = HeaderValue<double>(file, "quality", path);
  result.seed = HeaderValue<std::uint64_t>(file, "seed", path);
  result.restarts = HeaderValue<int>(file, "restarts", path);
  return result;
}

// ---------------------------------------------------------------- render

TermMap StageRender(const RunConfig& config, const ExtractResult& extract,
                    const NetworkResult& network, const RankResult& rank,
                    const LayoutResult& layout, const ClusterResult& clusters) {
  if (clusters.terms != layout.terms) {
    throw FormatError("cluster dump does not match the layout dump; rerun `termmap cluster`");
  }
  TermMap map;
  std::unordered_map<std::string, std::size_t> net_index;
  for (std::size_t i = 0; i < network.net.size(); ++i) net_index.emplace(network.net.terms[i], i);
  for (std::size_t i = 0; i < layout.terms.size(); ++i) {
    auto it = net_index.find(layout.terms[i]);
    if (it == net_index.end()) {
      throw FormatError("layout term '" + layout.terms[i] + "' is not in the network dump");
    }
    MapTerm t;
    t.label = layout.terms[i];
    t.x = layout.coords(static_cast<Eigen::Index>(i), 0);
    t.y = layout.coords(static_cast<Eigen::Index>(i), 1);
    t.weight = network.net.occ[it->second];
    t.cluster = clusters.assignment[i];
    map.terms.push_back(std::move(t));
  }

  if (config.overlay == "score-mean" || config.overlay == "subset-share") {
    const bool mean = config.overlay == "score-mean";
    const bool loaded = mean ? std::any_of(extract.doc_scores.begin(), extract.doc_scores.end(),
                                           [](const auto& v) { return v.has_value(); })
                             : std::any_of(extract.doc_subset.begin(), extract.doc_subset.end(),
                                           [](const auto& v) { return v.has_value(); });
    if (!loaded) {
      throw ParameterError(std::string("overlay ") + config.overlay + " needs " +
                           (mean ? "--score-col" : "--subset-col") + " when extracting");
    }
    const auto all_sets = TermDocSets(extract.phrases, network.net);
    std::vector<std::vector<std::size_t>> sets;
    for (const auto& t : map.terms) sets.push_back(all_sets[net_index.at(t.label)]);
    map = config.overlay == "score-mean"
              ? ScoreMean(std::move(map), sets, extract.doc_scores, extract.doc_ids)
              : ScoreSubsetShare(std::move(map), sets, extract.doc_subset, extract.doc_ids);
  }

  MapMeta& m = map.meta;
  m.seed = config.seed;
  m.layout_restarts = layout.restarts;
  m.cluster_restarts = clusters.restarts;
  m.resolution = clusters.resolution;
  m.min_occ = network.min_occ;
  m.selection = rank.selection;
  m.overlay = config.overlay;
  m.bandwidth = config.bandwidth > 0.0 ? config.bandwidth : DefaultBandwidth(map);
  m.objective = layout.objective;
  m.quality = clusters.quality;
  m.n_docs = network.net.n_docs;
  m.candidates = network.candidates;
  m.thresholded = network.net.size();
  m.selected = rank.selected;

  fs::create_directories(config.out);
  ExportMap(map, config.out / dump::kMap);

  std::vector<View> views;
  if (!config.view.empty()) {
    views.push_back(ParseView(config.view));
  } else {
    views = {View::kDensity, View::kCluster};
    if (map.has_scores()) views.push_back(View::kScore);
  }
  for (View view : views) {
    RenderOptions options;
    options.view = view;
    options.width = config.width;
    options.height = config.height;
    options.bandwidth = m.bandwidth;
    util::WriteFile(config.out / (ToString(view) + ".svg"), RenderSvg(map, options));
  }
  return map;
}

// ---------------------------------------------------------------- run

RunReport Run(const RunConfig& config) {
  RunReport report;
  std::string current = "config";
  auto timed = [&](const std::string& stage, auto&& fn) {
    current = stage;
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    const auto stop = std::chrono::steady_clock::now();
    report.timings.push_back(
        {stage, std::chrono::duration<double, std::milli>(stop - start).count()});
    return result;
  };

  try {
    config.Validate();
    fs::create_directories(config.out);
    fs::remove(config.out / dump::kFailed);

    const ExtractResult extract = timed("extract", [&] { return StageExtract(config); });
    const NetworkResult network = timed("network", [&] { return StageNetwork(config, extract); });
    const RankResult rank = timed("rank", [&] { return StageRank(config, network); });
    const LayoutResult layout = timed("layout", [&] { return StageLayout(config, network, rank); });
    const ClusterResult clusters =
        timed("cluster", [&] { return StageCluster(config, network, layout); });
    report.map = timed("render", [&] {
      return StageRender(config, extract, network, rank, layout, clusters);
    });

    for (const auto& term : layout.dropped) {
      report.warnings.push_back("term '" + term + "' dropped: outside the largest connected component");
    }
    if (!layout.converged) report.warnings.push_back("layout did not converge within the iteration cap");

    nlohmann::ordered_json manifest;
    manifest["parameters"] = {
        {"input", config.input.string()},
        {"format", config.format},
        {"split", ToString(config.split)},
        {"min_occ", config.min_occ},
        {"selection", config.SelectionString()},
        {"seed", config.seed},
        {"restarts", config.restarts},
        {"cluster_restarts", config.cluster_restarts},
        {"resolution", clusters.resolution},
        {"min_cluster_size", config.min_cluster_size},
        {"overlay", config.overlay},
        {"bandwidth", report.map.meta.bandwidth},
        {"width", config.width},
        {"height", config.height},
    };
    manifest["seeds"] = {{"layout", config.layout_seed()}, {"cluster", config.cluster_seed()}};
    manifest["counts"] = {
        {"documents", extract.doc_ids.size()},
        {"candidate_phrases", extract.candidates},
        {"thresholded_terms", network.net.size()},
        {"selected_terms", rank.selected},
        {"mapped_terms", layout.terms.size()},
        {"dropped_terms", layout.dropped.size()},
        {"clusters", clusters.assignment.empty()
                         ? 0
                         : *std::max_element(clusters.assignment.begin(), clusters.assignment.end())},
    };
    nlohmann::ordered_json timings = nlohmann::ordered_json::object();
    for (const auto& t : report.timings) timings[t.stage] = t.milliseconds;
    manifest["timings_ms"] = std::move(timings);
    manifest["layout"] = {{"objective", layout.objective}, {"converged", layout.converged}};
    manifest["cluster_quality"] = clusters.quality;
    manifest["warnings"] = report.warnings;
    util::WriteFile(config.out / dump::kManifest, manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::error_code ec;
    fs::create_directories(config.out, ec);
    const std::string message = std::string("stage: ") + current + "\nerror: " + e.what() + "\n";
    try {
      util::WriteFile(config.out / dump::kFailed, message);
    } catch (const std::exception&) {
      // The marker is best effort; the error itself still propagates.
    }
    throw StageError(current, e.what());
  }
  return report;
}

}  // namespace termmap
