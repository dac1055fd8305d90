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

#include "termmap/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "termmap/error.hpp"
#include "termmap/util.hpp"

namespace termmap {

using Json = nlohmann::ordered_json;

namespace {

std::size_t Utf8Length(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

std::string XmlEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Fixed(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s(buf);
  return s == "-0.00" ? "0.00" : s;
}

double Round9(double v) { return util::RoundSig(v, kExportDigits); }

// Maps map coordinates to pixels with a uniform scale; y grows upwards on
// the map and downwards on screen.
struct Viewport {
  double scale = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  double px = 0.0;
  double py = 0.0;

  Viewport(const TermMap& map, const RenderOptions& o) {
    px = o.width / 2.0;
    py = o.height / 2.0;
    if (map.terms.empty()) return;
    double x0 = map.terms[0].x, x1 = x0, y0 = map.terms[0].y, y1 = y0;
    for (const auto& t : map.terms) {
      x0 = std::min(x0, t.x);
      x1 = std::max(x1, t.x);
      y0 = std::min(y0, t.y);
      y1 = std::max(y1, t.y);
    }
    cx = (x0 + x1) / 2.0;
    cy = (y0 + y1) / 2.0;
    // Leave room for the widest label so edge labels are not clipped.
    std::int64_t max_weight = 1;
    for (const auto& t : map.terms) max_weight = std::max(max_weight, t.weight);
    double half_label = 0.0;
    for (const auto& t : map.terms) {
      const double font = o.max_font * std::sqrt(static_cast<double>(std::max<std::int64_t>(t.weight, 0)) /
                                                 static_cast<double>(max_weight));
      half_label = std::max(half_label, 0.3 * font * static_cast<double>(Utf8Length(t.label)));
    }
    const double margin_x = std::max<double>(o.margin, std::min(half_label + 4.0, o.width / 4.0));
    const double margin_y = std::max<double>(o.margin, o.max_font / 2.0 + 4.0);
    const double usable_w = std::max(1.0, o.width - 2.0 * margin_x);
    const double usable_h = std::max(1.0, o.height - 2.0 * margin_y);
    const double sx = x1 > x0 ? usable_w / (x1 - x0) : 0.0;
    const double sy = y1 > y0 ? usable_h / (y1 - y0) : 0.0;
    if (sx > 0.0 && sy > 0.0) {
      scale = std::min(sx, sy);
    } else if (sx > 0.0 || sy > 0.0) {
      scale = std::max(sx, sy);
    }
  }

  double X(double x) const { return px + (x - cx) * scale; }
  double Y(double y) const { return py - (y - cy) * scale; }
};

}  // namespace

Rgb ClusterColor(int cluster) {
  const int k = cluster < 1 ? 0 : (cluster - 1) % static_cast<int>(kClusterPalette.size());
  return kClusterPalette[static_cast<std::size_t>(k)];
}

std::string ExportJson(const TermMap& map) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  Json terms = Json::array();
  std::map<int, std::size_t> cluster_size;
  for (std::size_t i = 0; i < map.terms.size(); ++i) {
    const auto& t = map.terms[i];
    Json term;
    term["id"] = i + 1;
    term["label"] = t.label;
    term["x"] = Round9(t.x);
    term["y"] = Round9(t.y);
    term["weight"] = t.weight;
    term["cluster"] = t.cluster;
    if (t.score) term["score"] = Round9(*t.score);
    terms.push_back(std::move(term));
    ++cluster_size[t.cluster];
  }
  doc["terms"] = std::move(terms);
  Json clusters = Json::array();
  for (const auto& [id, size] : cluster_size) {
    clusters.push_back({{"id", id}, {"size", size}, {"color", ToHex(ClusterColor(id))}});
  }
  doc["clusters"] = std::move(clusters);

  const MapMeta& m = map.meta;
  Json meta;
  meta["parameters"] = {
      {"min_occ", m.min_occ},
      {"selection", m.selection},
      {"layout_restarts", m.layout_restarts},
      {"cluster_restarts", m.cluster_restarts},
      {"resolution", Round9(m.resolution)},
      {"bandwidth", Round9(m.bandwidth)},
  };
  meta["seed"] = m.seed;
  meta["corpus"] = {
      {"documents", m.n_docs},
      {"candidate_phrases", m.candidates},
      {"thresholded_terms", m.thresholded},
      {"selected_terms", m.selected},
      {"mapped_terms", map.terms.size()},
  };
  meta["layout_objective"] = Round9(m.objective);
  meta["cluster_quality"] = Round9(m.quality);
  meta["overlay"] = m.overlay;
  doc["meta"] = std::move(meta);
  return doc.dump(2) + "\n";
}

TermMap ImportJson(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("map export is not valid JSON: ") + e.what());
  }
  try {
    const int version = doc.at("schema_version").get<int>();
    if (version != kSchemaVersion) {
      throw FormatError("unsupported schema_version " + std::to_string(version) + " (expected " +
                        std::to_string(kSchemaVersion) + ")");
    }
    TermMap map;
    std::size_t expected_id = 1;
    for (const auto& t : doc.at("terms")) {
      if (t.at("id").get<std::size_t>() != expected_id++) {
        throw FormatError("term ids must be dense 1..n");
      }
      MapTerm term;
      term.label = t.at("label").get<std::string>();
      term.x = t.at("x").get<double>();
      term.y = t.at("y").get<double>();
      term.weight = t.at("weight").get<std::int64_t>();
      term.cluster = t.at("cluster").get<int>();
      if (t.contains("score")) term.score = t.at("score").get<double>();
      map.terms.push_back(std::move(term));
    }
    const Json& meta = doc.at("meta");
    const Json& params = meta.at("parameters");
    map.meta.min_occ = params.at("min_occ").get<std::int64_t>();
    map.meta.selection = params.at("selection").get<std::string>();
    map.meta.layout_restarts = params.at("layout_restarts").get<int>();
    map.meta.cluster_restarts = params.at("cluster_restarts").get<int>();
    map.meta.resolution = params.at("resolution").get<double>();
    map.meta.bandwidth = params.at("bandwidth").get<double>();
    map.meta.seed = meta.at("seed").get<std::uint64_t>();
    const Json& corpus = meta.at("corpus");
    map.meta.n_docs = corpus.at("documents").get<std::size_t>();
    map.meta.candidates = corpus.at("candidate_phrases").get<std::size_t>();
    map.meta.thresholded = corpus.at("thresholded_terms").get<std::size_t>();
    map.meta.selected = corpus.at("selected_terms").get<std::size_t>();
    map.meta.objective = meta.at("layout_objective").get<double>();
    map.meta.quality = meta.at("cluster_quality").get<double>();
    map.meta.overlay = meta.at("overlay").get<std::string>();
    return map;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("map export does not match schema 1: ") + e.what());
  }
}

std::string ExportTsv(const TermMap& map) {
  std::string out = "id\tlabel\tx\ty\tweight\tcluster\tscore\n";
  for (std::size_t i = 0; i < map.terms.size(); ++i) {
    const auto& t = map.terms[i];
    out += std::to_string(i + 1) + '\t' + t.label + '\t' + util::FormatSig(t.x, kExportDigits) +
           '\t' + util::FormatSig(t.y, kExportDigits) + '\t' + std::to_string(t.weight) + '\t' +
           std::to_string(t.cluster) + '\t' +
           (t.score ? util::FormatSig(*t.score, kExportDigits) : std::string()) + '\n';
  }
  return out;
}

void ExportMap(const TermMap& map, const std::filesystem::path& json_path) {
  util::WriteFile(json_path, ExportJson(map));
  std::filesystem::path tsv = json_path;
  tsv.replace_extension(".tsv");
  util::WriteFile(tsv, ExportTsv(map));
}

View ParseView(const std::string& name) {
  if (name == "density") return View::kDensity;
  if (name == "cluster") return View::kCluster;
  if (name == "score") return View::kScore;
  throw ParameterError("unknown view '" + name + "' (expected density, cluster or score)");
}

std::string ToString(View view) {
  switch (view) {
    case View::kDensity: return "density";
    case View::kCluster: return "cluster";
    case View::kScore: return "score";
  }
  return "?";
}

std::vector<LabelBox> LabelBoxes(const TermMap& map, const RenderOptions& options) {
  const Viewport vp(map, options);
  std::int64_t max_weight = 1;
  for (const auto& t : map.terms) max_weight = std::max(max_weight, t.weight);
  std::vector<LabelBox> boxes;
  boxes.reserve(map.terms.size());
  for (const auto& t : map.terms) {
    LabelBox box;
    box.cx = vp.X(t.x);
    box.cy = vp.Y(t.y);
    box.font = options.max_font *
               std::sqrt(static_cast<double>(std::max<std::int64_t>(t.weight, 0)) /
                         static_cast<double>(max_weight));
    box.width = 0.6 * box.font * static_cast<double>(Utf8Length(t.label));
    box.height = box.font;
    boxes.push_back(box);
  }
  return boxes;
}

std::vector<bool> VisibleLabels(const TermMap& map, const std::vector<LabelBox>& boxes) {
  std::vector<std::size_t> order(map.terms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (map.terms[a].weight != map.terms[b].weight) return map.terms[a].weight > map.terms[b].weight;
    if (map.terms[a].label != map.terms[b].label) return map.terms[a].label < map.terms[b].label;
    return a < b;
  });
  auto overlaps = [](const LabelBox& p, const LabelBox& q) {
    return std::abs(p.cx - q.cx) * 2.0 < p.width + q.width &&
           std::abs(p.cy - q.cy) * 2.0 < p.height + q.height;
  };
  std::vector<bool> visible(map.terms.size(), false);
  std::vector<std::size_t> shown;
  for (std::size_t i : order) {
    const bool blocked = std::any_of(shown.begin(), shown.end(), [&](std::size_t j) {
      return overlaps(boxes[i], boxes[j]);
    });
    if (!blocked) {
      visible[i] = true;
      shown.push_back(i);
    }
  }
  return visible;
}

std::string RenderSvg(const TermMap& map, const RenderOptions& options) {
  if (options.view == View::kScore && !map.has_scores()) {
    throw ParameterError("score view requires term scores; run with a score overlay");
  }
  if (options.width < 1 || options.height < 1) throw ParameterError("image size must be positive");

  const Viewport vp(map, options);
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << ' '
      << options.height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" fill=\"" << (options.view == View::kDensity ? ToHex(Ramp(0.0)) : std::string("#ffffff"))
      << "\"/>\n";

  if (options.view == View::kDensity && !map.terms.empty()) {
    const double bandwidth = options.bandwidth > 0.0 ? options.bandwidth : DefaultBandwidth(map);
    const int cols = std::max(2, options.density_cells);
    const double aspect = (options.height * 1.0) / options.width;
    const int rows = std::max(2, static_cast<int>(std::lround(cols * aspect)));
    const DensityField field = Density(map, cols, rows, bandwidth);
    const double cell_w = (field.x_max - field.x_min) / (cols - 1) * vp.scale;
    const double cell_h = (field.y_max - field.y_min) / (rows - 1) * vp.scale;
    svg << "<g id=\"density\" shape-rendering=\"crispEdges\">\n";
    for (Eigen::Index r = 0; r < field.grid.rows(); ++r) {
      for (Eigen::Index c = 0; c < field.grid.cols(); ++c) {
        const Eigen::Vector2d p = field.PointAt(r, c);
        svg << "<rect x=\"" << Fixed(vp.X(p.x()) - cell_w / 2) << "\" y=\""
            << Fixed(vp.Y(p.y()) - cell_h / 2) << "\" width=\"" << Fixed(cell_w + 0.5)
            << "\" height=\"" << Fixed(cell_h + 0.5) << "\" fill=\""
            << ToHex(Ramp(field.grid(r, c))) << "\"/>\n";
      }
    }
    svg << "</g>\n";
  }

  std::vector<Rgb> colors(map.terms.size(), Rgb{0, 0, 0});
  if (options.view == View::kCluster) {
    for (std::size_t i = 0; i < map.terms.size(); ++i) colors[i] = ClusterColor(map.terms[i].cluster);
  } else if (options.view == View::kScore) {
    std::vector<double> scores;
    for (const auto& t : map.terms) scores.push_back(*t.score);
    colors = ColorScale(scores, ColorMode::kScore);
  }

  const std::vector<LabelBox> boxes = LabelBoxes(map, options);
  if (options.view != View::kDensity) {
    svg << "<g id=\"terms\">\n";
    for (std::size_t i = 0; i < map.terms.size(); ++i) {
      svg << "<circle cx=\"" << Fixed(boxes[i].cx) << "\" cy=\"" << Fixed(boxes[i].cy)
          << "\" r=\"" << Fixed(std::max(1.0, boxes[i].font / 4.0)) << "\" fill=\""
          << ToHex(colors[i]) << "\" fill-opacity=\"0.6\"/>\n";
    }
    svg << "</g>\n";
  }
  const std::vector<bool> visible = VisibleLabels(map, boxes);
  svg << "<g id=\"labels\" font-family=\"Arial, Helvetica, sans-serif\" text-anchor=\"middle\" "
         "dominant-baseline=\"central\">\n";
  for (std::size_t i = 0; i < map.terms.size(); ++i) {
    if (!visible[i]) continue;
    svg << "<text data-term=\"" << (i + 1) << "\" x=\"" << Fixed(boxes[i].cx) << "\" y=\""
        << Fixed(boxes[i].cy) << "\" font-size=\"" << Fixed(boxes[i].font) << "\" fill=\""
        << ToHex(colors[i]) << "\">" << XmlEscape(map.terms[i].label) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace termmap
