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

#ifndef TERMMAP_OVERLAY_HPP_
#define TERMMAP_OVERLAY_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace termmap {

struct MapTerm {
  std::string label;
  double x = 0.0;
  double y = 0.0;
  std::int64_t weight = 0;  // document frequency
  int cluster = 1;
  std::optional<double> score;
};

// Run parameters and corpus statistics carried along with a map.
struct MapMeta {
  std::uint64_t seed = 0;
  int layout_restarts = 0;
  int cluster_restarts = 0;
  double resolution = 0.0;
  std::int64_t min_occ = 1;
  std::string selection;  // "k=<n>" or "fraction=<f>"
  std::string overlay = "none";
  double bandwidth = 0.0;
  double objective = 0.0;
  double quality = 0.0;
  std::size_t n_docs = 0;
  std::size_t candidates = 0;
  std::size_t thresholded = 0;
  std::size_t selected = 0;
};

struct TermMap {
  std::vector<MapTerm> terms;
  MapMeta meta;

  bool has_scores() const { return !terms.empty() && terms.front().score.has_value(); }
};

// Term density sampled on a lattice. grid(r, c) is the value at
// (x_min + c * dx, y_max - r * dy), so row 0 is the top edge and the corner
// samples lie exactly on the bounds.
struct DensityField {
  Eigen::MatrixXd grid;
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  double bandwidth = 0.0;

  Eigen::Vector2d PointAt(Eigen::Index row, Eigen::Index col) const;
};

// Bandwidth of 10% of the bounding-box diagonal of the terms.
double DefaultBandwidth(const TermMap& map);

// Unnormalized kernel sum: sum_i weight_i * exp(-|p - x_i|^2 / (2 h^2)).
double KernelDensity(const TermMap& map, const Eigen::Vector2d& point, double bandwidth);

// Evaluates the kernel sum on a width x height lattice spanning the term
// bounding box grown by 2 * bandwidth on every side, divided by its maximum.
DensityField Density(const TermMap& map, int width, int height, double bandwidth);

// Average document score over the documents containing each term.
// term_docs is aligned with map.terms; doc_scores and doc_ids are indexed by
// document. Throws ValidationError naming the first document without a score.
TermMap ScoreMean(TermMap map, const std::vector<std::vector<std::size_t>>& term_docs,
                  const std::vector<std::optional<double>>& doc_scores,
                  const std::vector<std::string>& doc_ids);

// Share of each term's documents that belong to the subset.
TermMap ScoreSubsetShare(TermMap map, const std::vector<std::vector<std::size_t>>& term_docs,
                         const std::vector<std::optional<bool>>& subset_flags,
                         const std::vector<std::string>& doc_ids);

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

std::string ToHex(Rgb color);

// Blue -> green -> yellow -> red, evenly spaced stops.
inline constexpr std::array<Rgb, 4> kRampStops = {
    Rgb{0, 0, 255}, Rgb{0, 255, 0}, Rgb{255, 255, 0}, Rgb{255, 0, 0}};

// Linear interpolation along kRampStops; t is clamped to [0, 1].
Rgb Ramp(double t);

enum class ColorMode { kDensity, kScore };

// Density mode maps [0, 1] directly. Score mode maps the 10th..90th
// percentile range of the values onto the ramp, clamping outside it.
std::vector<Rgb> ColorScale(const std::vector<double>& values, ColorMode mode);

// Percentile with linear interpolation between order statistics.
double Percentile(std::vector<double> values, double pct);

}  // namespace termmap

#endif  // TERMMAP_OVERLAY_HPP_
