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

#ifndef TERMMAP_RENDER_HPP_
#define TERMMAP_RENDER_HPP_

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "termmap/overlay.hpp"

namespace termmap {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kExportDigits = 9;

// Cluster k is drawn with kClusterPalette[(k - 1) % 20].
inline constexpr std::array<Rgb, 20> kClusterPalette = {{
    {31, 119, 180},  {214, 39, 40},   {44, 160, 44},   {255, 127, 14},  {148, 103, 189},
    {140, 86, 75},   {227, 119, 194}, {127, 127, 127}, {188, 189, 34},  {23, 190, 207},
    {174, 199, 232}, {255, 152, 150}, {152, 223, 138}, {255, 187, 120}, {197, 176, 213},
    {196, 156, 148}, {247, 182, 210}, {199, 199, 199}, {219, 219, 141}, {158, 218, 229},
}};

Rgb ClusterColor(int cluster);

// JSON export, schema version 1. Reals carry 9 significant digits.
std::string ExportJson(const TermMap& map);
// Throws FormatError on malformed input or an unsupported schema version.
TermMap ImportJson(std::string_view json);

// Flat table: id label x y weight cluster score.
std::string ExportTsv(const TermMap& map);

// Writes <path> as JSON and the same stem with a .tsv extension.
void ExportMap(const TermMap& map, const std::filesystem::path& json_path);

enum class View { kDensity, kCluster, kScore };

View ParseView(const std::string& name);
std::string ToString(View view);

struct RenderOptions {
  View view = View::kCluster;
  int width = 1000;
  int height = 800;
  int margin = 40;
  double max_font = 28.0;   // font size of the heaviest term, in pixels
  int density_cells = 120;  // lattice columns for the density view
  double bandwidth = 0.0;   // 0 selects DefaultBandwidth
};

struct LabelBox {
  double cx = 0.0;  // pixel center
  double cy = 0.0;
  double font = 0.0;
  double width = 0.0;
  double height = 0.0;
};

// Pixel boxes of every label under the options' viewport.
std::vector<LabelBox> LabelBoxes(const TermMap& map, const RenderOptions& options);

// Labels are visited by descending weight, ties by label; a label is hidden
// when its box overlaps one already shown.
std::vector<bool> VisibleLabels(const TermMap& map, const std::vector<LabelBox>& boxes);

// SVG 1.1 document. Throws ParameterError for the score view on a map
// without scores.
std::string RenderSvg(const TermMap& map, const RenderOptions& options);

}  // namespace termmap

#endif  // TERMMAP_RENDER_HPP_
