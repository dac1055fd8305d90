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

#include "termmap/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "termmap/error.hpp"

namespace termmap {

Eigen::Vector2d DensityField::PointAt(Eigen::Index row, Eigen::Index col) const {
  const double dx = grid.cols() > 1 ? (x_max - x_min) / static_cast<double>(grid.cols() - 1) : 0.0;
  const double dy = grid.rows() > 1 ? (y_max - y_min) / static_cast<double>(grid.rows() - 1) : 0.0;
  return {x_min + static_cast<double>(col) * dx, y_max - static_cast<double>(row) * dy};
}

double DefaultBandwidth(const TermMap& map) {
  if (map.terms.empty()) return 0.1;
  double x0 = map.terms[0].x, x1 = x0, y0 = map.terms[0].y, y1 = y0;
  for (const auto& t : map.terms) {
    x0 = std::min(x0, t.x);
    x1 = std::max(x1, t.x);
    y0 = std::min(y0, t.y);
    y1 = std::max(y1, t.y);
  }
  const double diagonal = std::hypot(x1 - x0, y1 - y0);
  return diagonal > 0.0 ? 0.1 * diagonal : 0.1;
}

double KernelDensity(const TermMap& map, const Eigen::Vector2d& point, double bandwidth) {
  const double denom = 2.0 * bandwidth * bandwidth;
  double sum = 0.0;
  for (const auto& t : map.terms) {
    const double d2 = (point - Eigen::Vector2d(t.x, t.y)).squaredNorm();
    sum += static_cast<double>(t.weight) * std::exp(-d2 / denom);
  }
  return sum;
}

DensityField Density(const TermMap& map, int width, int height, double bandwidth) {
  if (map.terms.empty()) throw ParameterError("density needs a non-empty map");
  if (!(bandwidth > 0.0)) throw ParameterError("bandwidth must be positive");
  if (width < 1 || height < 1) throw ParameterError("grid size must be positive");

  DensityField field;
  field.bandwidth = bandwidth;
  field.x_min = field.x_max = map.terms[0].x;
  field.y_min = field.y_max = map.terms[0].y;
  for (const auto& t : map.terms) {
    field.x_min = std::min(field.x_min, t.x);
    field.x_max = std::max(field.x_max, t.x);
    field.y_min = std::min(field.y_min, t.y);
    field.y_max = std::max(field.y_max, t.y);
  }
  field.x_min -= 2.0 * bandwidth;
  field.x_max += 2.0 * bandwidth;
  field.y_min -= 2.0 * bandwidth;
  field.y_max += 2.0 * bandwidth;

  field.grid.resize(height, width);
  for (Eigen::Index r = 0; r < height; ++r) {
    for (Eigen::Index c = 0; c < width; ++c) {
      field.grid(r, c) = KernelDensity(map, field.PointAt(r, c), bandwidth);
    }
  }
  const double peak = field.grid.maxCoeff();
  if (peak > 0.0) field.grid /= peak;
  return field;
}

TermMap ScoreMean(TermMap map, const std::vector<std::vector<std::size_t>>& term_docs,
                  const std::vector<std::optional<double>>& doc_scores,
                  const std::vector<std::string>& doc_ids) {
  if (term_docs.size() != map.terms.size()) {
    throw ParameterError("document sets do not match the map terms");
  }
  for (std::size_t i = 0; i < map.terms.size(); ++i) {
    const auto& docs = term_docs[i];
    if (docs.empty()) {
      throw ValidationError("term '" + map.terms[i].label + "' has no documents");
    }
    double sum = 0.0;
    for (std::size_t d : docs) {
      if (!doc_scores[d]) throw ValidationError("document '" + doc_ids[d] + "' has no score");
      sum += *doc_scores[d];
    }
    map.terms[i].score = sum / static_cast<double>(docs.size());
  }
  map.meta.overlay = "score-mean";
  return map;
}

TermMap ScoreSubsetShare(TermMap map, const std::vector<std::vector<std::size_t>>& term_docs,
                         const std::vector<std::optional<bool>>& subset_flags,
                         const std::vector<std::string>& doc_ids) {
  if (term_docs.size() != map.terms.size()) {
    throw ParameterError("document sets do not match the map terms");
  }
  for (std::size_t i = 0; i < map.terms.size(); ++i) {
    const auto& docs = term_docs[i];
    if (docs.empty()) {
      throw ValidationError("term '" + map.terms[i].label + "' has no documents");
    }
    std::size_t flagged = 0;
    for (std::size_t d : docs) {
      if (!subset_flags[d]) {
        throw ValidationError("document '" + doc_ids[d] + "' has no subset flag");
      }
      flagged += *subset_flags[d] ? 1 : 0;
    }
    map.terms[i].score = static_cast<double>(flagged) / static_cast<double>(docs.size());
  }
  map.meta.overlay = "subset-share";
  return map;
}

std::string ToHex(Rgb color) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", color.r, color.g, color.b);
  return buf;
}

Rgb Ramp(double t) {
  t = std::clamp(std::isnan(t) ? 0.0 : t, 0.0, 1.0);
  const double pos = t * static_cast<double>(kRampStops.size() - 1);
  const auto seg = std::min<std::size_t>(static_cast<std::size_t>(pos), kRampStops.size() - 2);
  const double f = pos - static_cast<double>(seg);
  const Rgb a = kRampStops[seg];
  const Rgb b = kRampStops[seg + 1];
  auto mix = [f](std::uint8_t u, std::uint8_t v) {
    return static_cast<std::uint8_t>(std::lround(u + f * (static_cast<double>(v) - u)));
  };
  return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

double Percentile(std::vector<double> values, double pct) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = pct / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<Rgb> ColorScale(const std::vector<double>& values, ColorMode mode) {
  std::vector<Rgb> colors;
  colors.reserve(values.size());
  if (mode == ColorMode::kDensity) {
    for (double v : values) colors.push_back(Ramp(v));
    return colors;
  }
  const double lo = Percentile(values, 10.0);
  const double hi = Percentile(values, 90.0);
  for (double v : values) colors.push_back(Ramp(hi > lo ? (v - lo) / (hi - lo) : 0.5));
  return colors;
}

}  // namespace termmap
