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

#include "termmap/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>

#include "termmap/error.hpp"

namespace termmap {
namespace {

struct Edge {
  Eigen::Index i;
  Eigen::Index j;
  double w;
};

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class Optimizer {
 public:
  Optimizer(const SimilarityMatrix& sim, const LayoutOptions& options)
      : n_(static_cast<Eigen::Index>(sim.size())), options_(options) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < sim.a.outerSize(); ++j) {
      for (SimilarityStorage::InnerIterator it(sim.a, j); it; ++it) {
        if (it.row() < j && it.value() > 0.0) {
          edges_.push_back({it.row(), j, it.value()});
          total += it.value();
        }
      }
    }
    // Similarities are normalized to unit sum so that the iteration path does
    // not depend on their overall scale.
    degree_ = Eigen::VectorXd::Zero(n_);
    for (auto& e : edges_) {
      e.w /= total;
      degree_[e.i] += 2.0 * e.w;
      degree_[e.j] += 2.0 * e.w;
    }
    scale_ = total;
  }

  Layout2D Run(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    Coordinates x(n_, 2);
    for (Eigen::Index i = 0; i < n_; ++i) {
      x(i, 0) = Uniform01(rng) - 0.5;
      x(i, 1) = Uniform01(rng) - 0.5;
    }
    std::vector<std::pair<Eigen::Index, Eigen::Index>> sample;
    if (static_cast<std::size_t>(n_) > options_.exact_limit) {
      sample.reserve(options_.sampled_pairs);
      while (sample.size() < options_.sampled_pairs) {
        auto i = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n_));
        auto j = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n_));
        if (i != j) sample.emplace_back(i, j);
      }
    }

    Normalize(x, sample);
    double f = Objective(x);
    double step = 0.5 / std::max(degree_.maxCoeff(), 1e-300);
    Coordinates grad(n_, 2);
    Coordinates trial(n_, 2);
    Layout2D result;
    result.seed = seed;
    int iter = 0;
    for (; iter < options_.max_iterations; ++iter) {
      Jitter(x, rng);
      Gradient(x, f, sample, grad);
      bool accepted = false;
      while (step > 1e-300) {
        trial = x - step * grad;
        Normalize(trial, sample);
        const double f_trial = Objective(trial);
        if (f_trial < f) {
          const double change = (f - f_trial) / std::max(f, 1e-300);
          x.swap(trial);
          f = f_trial;
          accepted = true;
          step *= 1.25;
          if (change < options_.tolerance) result.converged = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) result.converged = true;
      if (result.converged) break;
    }

    if (!sample.empty()) {
      x.rowwise() -= x.colwise().mean();
      x /= MeanPairDistance(x);
    }
    result.coords = std::move(x);
    result.objective = LayoutObjective(OriginalWeights(), result.coords);
    result.iterations = iter;
    return result;
  }

 private:
  // V with the normalized weights.
  double Objective(const Coordinates& x) const {
    double v = 0.0;
    for (const auto& e : edges_) v += e.w * (x.row(e.i) - x.row(e.j)).squaredNorm();
    return v;
  }

  SimilarityStorage OriginalWeights() const {
    std::vector<Eigen::Triplet<double>> t;
    for (const auto& e : edges_) {
      t.emplace_back(e.i, e.j, e.w * scale_);
      t.emplace_back(e.j, e.i, e.w * scale_);
    }
    SimilarityStorage a(n_, n_);
    a.setFromTriplets(t.begin(), t.end());
    return a;
  }

  double MeanDistance(const Coordinates& x,
                      const std::vector<std::pair<Eigen::Index, Eigen::Index>>& sample) const {
    if (sample.empty()) return MeanPairDistance(x);
    double total = 0.0;
    for (const auto& [i, j] : sample) total += (x.row(i) - x.row(j)).norm();
    return total / static_cast<double>(sample.size());
  }

  // Centers and rescales so that the average pairwise distance is 1.
  void Normalize(Coordinates& x,
                 const std::vector<std::pair<Eigen::Index, Eigen::Index>>& sample) const {
    x.rowwise() -= x.colwise().mean();
    const double d = MeanDistance(x, sample);
    if (d > 0.0) x /= d;
  }

  // Separates connected terms that sit on top of each other.
  void Jitter(Coordinates& x, std::mt19937_64& rng) const {
    for (const auto& e : edges_) {
      if ((x.row(e.i) - x.row(e.j)).squaredNorm() == 0.0) {
        x(e.j, 0) += 1e-9 * (Uniform01(rng) - 0.5);
        x(e.j, 1) += 1e-9 * (Uniform01(rng) - 0.5);
      }
    }
  }

  // Gradient of F = V / D^2 at a point with D = 1: grad V - 2 V grad D.
  void Gradient(const Coordinates& x, double v,
                const std::vector<std::pair<Eigen::Index, Eigen::Index>>& sample,
                Coordinates& grad) const {
    grad.setZero();
    for (const auto& e : edges_) {
      const Eigen::RowVector2d diff = x.row(e.i) - x.row(e.j);
      grad.row(e.i) += 2.0 * e.w * diff;
      grad.row(e.j) -= 2.0 * e.w * diff;
    }
    Coordinates dgrad = Coordinates::Zero(n_, 2);
    auto add = [&](Eigen::Index i, Eigen::Index j) {
      const Eigen::RowVector2d diff = x.row(i) - x.row(j);
      const double d = diff.norm();
      if (d > 0.0) {
        dgrad.row(i) += diff / d;
        dgrad.row(j) -= diff / d;
      }
    };
    double norm = 0.0;
    if (sample.empty()) {
      for (Eigen::Index i = 0; i < n_; ++i) {
        for (Eigen::Index j = i + 1; j < n_; ++j) add(i, j);
      }
      norm = 2.0 / (static_cast<double>(n_) * static_cast<double>(n_ - 1));
    } else {
      for (const auto& [i, j] : sample) add(i, j);
      norm = 1.0 / static_cast<double>(sample.size());
    }
    grad -= (2.0 * v * norm) * dgrad;
  }

  Eigen::Index n_;
  LayoutOptions options_;
  std::vector<Edge> edges_;
  Eigen::VectorXd degree_;
  double scale_ = 1.0;
};

// Connected components of the positive-similarity graph; returns the
// component id of every node.
std::vector<int> Components(const std::vector<std::vector<Eigen::Index>>& adj) {
  std::vector<int> comp(adj.size(), -1);
  int next = 0;
  std::vector<Eigen::Index> stack;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    stack.assign(1, static_cast<Eigen::Index>(s));
    while (!stack.empty()) {
      const Eigen::Index u = stack.back();
      stack.pop_back();
      for (Eigen::Index v : adj[static_cast<std::size_t>(u)]) {
        if (comp[static_cast<std::size_t>(v)] < 0) {
          comp[static_cast<std::size_t>(v)] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

}  // namespace

AssociationResult AssociationStrength(const CoocNetwork& net,
                                      const std::vector<std::string>& selected) {
  std::vector<std::size_t> index;
  index.reserve(selected.size());
  for (const auto& term : selected) {
    const std::size_t i = net.IndexOf(term);
    if (i == net.size()) throw ParameterError("selected term '" + term + "' is not in the network");
    index.push_back(i);
  }
  const auto n = static_cast<Eigen::Index>(selected.size());
  std::vector<Eigen::Index> position(net.size(), -1);
  for (Eigen::Index k = 0; k < n; ++k) position[index[static_cast<std::size_t>(k)]] = k;

  std::vector<std::vector<Eigen::Index>> adj(selected.size());
  std::vector<Eigen::Triplet<double>> entries;
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto col = static_cast<Eigen::Index>(index[static_cast<std::size_t>(k)]);
    for (CountMatrix::InnerIterator it(net.cooc, col); it; ++it) {
      const Eigen::Index other = position[static_cast<std::size_t>(it.row())];
      if (other < 0 || it.value() <= 0) continue;
      const double a = static_cast<double>(it.value()) /
                       (static_cast<double>(net.occ[static_cast<std::size_t>(col)]) *
                        static_cast<double>(net.occ[static_cast<std::size_t>(it.row())]));
      entries.emplace_back(other, k, a);
      adj[static_cast<std::size_t>(k)].push_back(other);
    }
  }

  const std::vector<int> comp = Components(adj);
  std::vector<std::size_t> comp_size;
  for (int c : comp) {
    if (static_cast<std::size_t>(c) >= comp_size.size()) comp_size.resize(c + 1, 0);
    ++comp_size[static_cast<std::size_t>(c)];
  }
  // Components are numbered in order of their earliest node, so max_element
  // picks the earliest among equally large ones.
  const int keep = comp_size.empty()
                       ? 0
                       : static_cast<int>(std::max_element(comp_size.begin(), comp_size.end()) -
                                          comp_size.begin());

  AssociationResult result;
  std::vector<Eigen::Index> remap(selected.size(), -1);
  for (std::size_t k = 0; k < selected.size(); ++k) {
    if (comp[k] == keep) {
      remap[k] = static_cast<Eigen::Index>(result.sim.terms.size());
      result.sim.terms.push_back(selected[k]);
      result.sim.occ.push_back(net.occ[index[k]]);
    } else {
      result.dropped.push_back(selected[k]);
    }
  }
  std::vector<Eigen::Triplet<double>> kept;
  for (const auto& t : entries) {
    const Eigen::Index r = remap[static_cast<std::size_t>(t.row())];
    const Eigen::Index c = remap[static_cast<std::size_t>(t.col())];
    if (r >= 0 && c >= 0) kept.emplace_back(r, c, t.value());
  }
  const auto m = static_cast<Eigen::Index>(result.sim.terms.size());
  result.sim.a.resize(m, m);
  result.sim.a.setFromTriplets(kept.begin(), kept.end());
  result.sim.a.makeCompressed();
  return result;
}

double MeanPositiveSimilarity(const SimilarityStorage& a) {
  double total = 0.0;
  std::size_t count = 0;
  for (Eigen::Index j = 0; j < a.outerSize(); ++j) {
    for (SimilarityStorage::InnerIterator it(a, j); it; ++it) {
      if (it.row() < j && it.value() > 0.0) {
        total += it.value();
        ++count;
      }
    }
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

Layout2D OptimizeLayout(const SimilarityMatrix& sim, const LayoutOptions& options) {
  if (sim.size() < 2) throw ParameterError("layout needs at least 2 terms");
  if (options.restarts < 1) throw ParameterError("restarts must be >= 1");
  if (MeanPositiveSimilarity(sim.a) <= 0.0) {
    throw ParameterError("similarity matrix has no positive entry");
  }

  const Optimizer optimizer(sim, options);
  const auto restarts = static_cast<std::size_t>(options.restarts);
  std::vector<Layout2D> runs(restarts);
  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(restarts));

  auto work = [&](unsigned worker) {
    for (std::size_t r = worker; r < restarts; r += threads) {
      runs[r] = optimizer.Run(SplitMix64(options.seed ^ (0xA5A5A5A5ULL * (r + 1))));
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  // Lowest objective wins; restart order breaks ties.
  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (runs[r].objective < runs[best].objective) best = r;
  }
  Layout2D result = std::move(runs[best]);
  result.seed = options.seed;
  return result;
}

Layout2D AlignLayout(Layout2D layout, const std::vector<double>& weights) {
  Coordinates& x = layout.coords;
  const Eigen::Index n = x.rows();
  if (n == 0) return layout;
  x.rowwise() -= x.colwise().mean();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  if (weights.size() == static_cast<std::size_t>(n)) {
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return weights[static_cast<std::size_t>(a)] > weights[static_cast<std::size_t>(b)];
    });
  }
  const double scale = std::max(x.cwiseAbs().maxCoeff(), 1e-300);
  const double eps = 1e-9 * scale;

  const Eigen::Matrix2d cov = x.transpose() * x;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(cov);
  const Eigen::Vector2d values = solver.eigenvalues();  // ascending
  Eigen::Vector2d axis;
  if (values[1] - values[0] > 1e-6 * std::max(values[1], 1e-300)) {
    axis = solver.eigenvectors().col(1);
  } else {
    axis = Eigen::Vector2d(1.0, 0.0);
    for (Eigen::Index i : order) {
      if (x.row(i).norm() > eps) {
        axis = x.row(i).transpose().normalized();
        break;
      }
    }
  }
  Eigen::Matrix2d rotation;
  rotation.col(0) = axis;
  rotation.col(1) = Eigen::Vector2d(-axis.y(), axis.x());
  x = (x * rotation).eval();

  for (int c = 0; c < 2; ++c) {
    for (Eigen::Index i : order) {
      if (std::abs(x(i, c)) > eps) {
        if (x(i, c) < 0.0) x.col(c) *= -1.0;
        break;
      }
    }
  }
  return layout;
}

}  // namespace termmap
