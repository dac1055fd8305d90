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

// Command-line front end. `termmap run` executes every stage; the stage
// subcommands read the previous stage's dump from --out and write their own.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "termmap/error.hpp"
#include "termmap/pipeline.hpp"
#include "termmap/render.hpp"
#include "termmap/util.hpp"

namespace {

using termmap::RunConfig;

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kBadInput = 3 };

void AddOptions(CLI::App* app, RunConfig& c, std::string& split, std::optional<std::size_t>& select) {
  app->set_config("--config", "", "Read options from a key = value file; flags take precedence");
  app->add_option("--input,-i", c.input, "Corpus file (tsv) or file/directory (text)");
  app->add_option("--format", c.format, "Corpus format")->check(CLI::IsMember({"tsv", "text"}));
  app->add_option("--split", split, "Plain-text document unit")
      ->check(CLI::IsMember({"whole_file", "paragraph", "line"}));
  app->add_option("--id-col", c.columns.id, "Identifier column");
  app->add_option("--title-col", c.columns.title, "Title column");
  app->add_option("--abstract-col", c.columns.abstract, "Abstract column");
  app->add_option("--score-col", c.columns.score, "Numeric score column");
  app->add_option("--subset-col", c.columns.subset, "Boolean subset column");
  app->add_option("--min-occ", c.min_occ, "Minimum number of documents per term");
  auto* k = app->add_option("--select", select, "Number of terms to keep");
  app->add_option("--select-frac", c.select_frac, "Fraction of terms to keep")->excludes(k);
  app->add_option("--seed", c.seed, "Random seed");
  app->add_option("--restarts", c.restarts, "Layout restarts");
  app->add_option("--cluster-restarts", c.cluster_restarts, "Clustering restarts");
  app->add_option("--resolution", c.resolution, "Clustering resolution (0 = default)");
  app->add_option("--min-cluster-size", c.min_cluster_size, "Merge smaller clusters");
  app->add_option("--overlay", c.overlay, "Overlay mode")
      ->check(CLI::IsMember({"none", "density", "score-mean", "subset-share"}));
  app->add_option("--bandwidth", c.bandwidth, "Density kernel bandwidth (0 = default)");
  app->add_option("--view", c.view, "Render only this view")
      ->check(CLI::IsMember({"density", "cluster", "score"}));
  app->add_option("--width", c.width, "Image width in pixels");
  app->add_option("--height", c.height, "Image height in pixels");
  app->add_option("--threads", c.threads, "Worker threads (0 = hardware)");
  app->add_option("--out,-o", c.out, "Output directory");
}

void MarkFailed(const RunConfig& c, const std::string& stage, const std::string& message) {
  std::error_code ec;
  std::filesystem::create_directories(c.out, ec);
  try {
    termmap::util::WriteFile(c.out / termmap::dump::kFailed,
                             "stage: " + stage + "\nerror: " + message + "\n");
  } catch (const std::exception&) {
  }
}

int RunStage(const std::string& stage, RunConfig& c) {
  namespace tm = termmap;
  if (stage == "run") {
    const tm::RunReport report = tm::Run(c);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "mapped " << report.map.terms.size() << " terms into " << c.out.string() << "\n";
    return kOk;
  }
  c.Validate();
  std::error_code ec;
  std::filesystem::remove(c.out / tm::dump::kFailed, ec);
  if (stage == "extract") {
    const auto r = tm::StageExtract(c);
    std::cout << r.doc_ids.size() << " documents, " << r.candidates << " candidate phrases\n";
  } else if (stage == "network") {
    const auto r = tm::StageNetwork(c, tm::ReadExtract(c.out));
    std::cout << r.net.size() << " terms with at least " << r.min_occ << " occurrences\n";
  } else if (stage == "rank") {
    const auto r = tm::StageRank(c, tm::ReadNetwork(c.out));
    std::cout << "selected " << r.selected << " of " << r.ranked.size() << " terms\n";
  } else if (stage == "layout") {
    const auto network = tm::ReadNetwork(c.out);
    const auto r = tm::StageLayout(c, network, tm::ReadRank(c.out));
    std::cout << "laid out " << r.terms.size() << " terms, objective "
              << tm::util::FormatSig(r.objective, 6) << "\n";
    for (const auto& t : r.dropped) std::cerr << "warning: term '" << t << "' dropped\n";
  } else if (stage == "cluster") {
    const auto network = tm::ReadNetwork(c.out);
    const auto r = tm::StageCluster(c, network, tm::ReadLayout(c.out));
    std::cout << "quality " << tm::util::FormatSig(r.quality, 6) << " at resolution "
              << tm::util::FormatSig(r.resolution, 6) << "\n";
  } else if (stage == "render") {
    // Read upstream first so a missing dump names the earliest stage.
    const auto extract = tm::ReadExtract(c.out);
    const auto network = tm::ReadNetwork(c.out);
    const auto rank = tm::ReadRank(c.out);
    const auto layout = tm::ReadLayout(c.out);
    const auto map = tm::StageRender(c, extract, network, rank, layout, tm::ReadCluster(c.out));
    std::cout << "rendered " << map.terms.size() << " terms into " << c.out.string() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build term maps from a corpus of documents"};
  app.require_subcommand(1, 1);

  RunConfig config;
  std::string split = "paragraph";
  std::optional<std::size_t> select;
  const char* stages[][2] = {
      {"run", "Run every stage"},
      {"extract", "Extract noun phrases"},
      {"network", "Build the co-occurrence network"},
      {"rank", "Score and select terms"},
      {"layout", "Compute term coordinates"},
      {"cluster", "Cluster the mapped terms"},
      {"render", "Write the map export and images"},
  };
  // Options live on the top-level app so config file keys reach them; the
  // subcommands fall through to it.
  AddOptions(&app, config, split, select);
  for (const auto& [name, help] : stages) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  const std::string stage = app.get_subcommands().front()->get_name();
  try {
    config.split = termmap::ParseSplitMode(split);
    config.select = select;
    return RunStage(stage, config);
  } catch (const termmap::StageError& e) {
    std::cerr << "termmap: " << e.what() << "\n";
    return kFailure;
  } catch (const termmap::ParameterError& e) {
    std::cerr << "termmap: " << e.what() << "\n";
    if (stage != "run") MarkFailed(config, stage, e.what());
    return kUsage;
  } catch (const termmap::Error& e) {
    std::cerr << "termmap: " << e.what() << "\n";
    if (stage != "run") MarkFailed(config, stage, e.what());
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "termmap: " << e.what() << "\n";
    if (stage != "run") MarkFailed(config, stage, e.what());
    return kFailure;
  }
}
