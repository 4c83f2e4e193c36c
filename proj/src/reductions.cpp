// Copyright 2026 The hhc Authors.
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

#include "hhc/reductions.hpp"

#include "hhc/bp.hpp"
#include "hhc/generator.hpp"
#include "hhc/greedy.hpp"
#include "hhc/lp_f2f.hpp"
#include "hhc/rng.hpp"
#include "hhc/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

namespace hhc {
namespace {

template <typename Fn>
void for_each_edge(Index edges, int workers, Fn fn) {
  if (workers <= 1) {
    for (Index e = 0; e < edges; ++e) fn(e);
    return;
  }
  std::atomic<Index> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (Index e = next++; e < edges; e = next++) fn(e);
    });
  for (auto& th : pool) th.join();
}

std::optional<HamiltonianPath> cycle_minus(const HamiltonianCycle& c, Vertex i, Vertex j) {
  if (!c.contains(i, j)) return std::nullopt;
  const auto& order = c.order();
  const int n = c.vertices();
  int pos = 0;
  while (order[static_cast<std::size_t>(pos)] != i) ++pos;
  std::vector<Vertex> path;
  path.reserve(static_cast<std::size_t>(n));
  // Walk away from j so the path runs i ... j.
  const bool forward = order[static_cast<std::size_t>((pos + 1) % n)] != j;
  for (int k = 0; k < n; ++k) {
    const int p = forward ? (pos + k) % n : (pos - k + n) % n;
    path.push_back(order[static_cast<std::size_t>(p)]);
  }
  return HamiltonianPath(std::move(path));
}

double draw_llr(const WeightModel& m, Side side, std::uint64_t seed) {
  CounterRng rng(derive_seed(seed, 5));
  return m.llr(draw_observation(m, side, rng));
}

template <typename T, typename Inner, typename Extract>
ReductionResult<T> reduce(const WeightedGraph& g, double replacement, std::uint64_t seed, int workers,
                          Inner inner, Extract extract, const char* who) {
  require_finite(g, who);
  if (g.vertices() < 3) throw std::invalid_argument(std::string(who) + ": n must be >= 3");
  if (!std::isfinite(replacement)) throw std::invalid_argument(std::string(who) + ": replacement must be finite");
  const Index m = g.edges();
  std::vector<std::optional<T>> found(static_cast<std::size_t>(m));
  for_each_edge(m, workers, [&](Index e) {
    const auto [i, j] = g.indexer().decode(e);
    const auto out = inner(g.with_weight(e, replacement), derive_seed(seed, 6, static_cast<std::uint64_t>(e)));
    if (out) found[static_cast<std::size_t>(e)] = extract(*out, i, j);
  });

  ReductionResult<T> r{T(std::vector<Vertex>{0, 1, 2}), m, 0, replacement};
  double best = -std::numeric_limits<double>::infinity();
  for (Index e = 0; e < m; ++e) {
    const auto& cand = found[static_cast<std::size_t>(e)];
    if (!cand) continue;
    ++r.candidates;
    const double wt = cand->weight(g);
    if (wt > best) {
      best = wt;
      r.estimate = *cand;
    }
  }
  if (r.candidates == 0) throw EstimatorFailure(std::string(who) + ": the inner estimator produced no candidate");
  return r;
}

}  // namespace

ReductionResult<HamiltonianPath> cycle_to_path(const WeightedGraph& g, const CycleEstimator& est,
                                               double replacement, std::uint64_t seed, int workers) {
  return reduce<HamiltonianPath>(g, replacement, seed, workers, est.run, cycle_minus, "cycle_to_path");
}

ReductionResult<HamiltonianPath> cycle_to_path(const WeightedGraph& g, const CycleEstimator& est,
                                               const WeightModel& m, std::uint64_t seed, int workers) {
  return cycle_to_path(g, est, draw_llr(m, Side::P, seed), seed, workers);
}

ReductionResult<HamiltonianCycle> path_to_cycle(const WeightedGraph& g, const PathEstimator& est,
                                                double replacement, std::uint64_t seed, int workers) {
  const auto close = [](const HamiltonianPath& p, Vertex i, Vertex j) -> std::optional<HamiltonianCycle> {
    const auto [a, b] = p.endpoints();
    if (!((a == i && b == j) || (a == j && b == i))) return std::nullopt;
    return HamiltonianCycle(p.order());
  };
  return reduce<HamiltonianCycle>(g, replacement, seed, workers, est.run, close, "path_to_cycle");
}

ReductionResult<HamiltonianCycle> path_to_cycle(const WeightedGraph& g, const PathEstimator& est,
                                                const WeightModel& m, std::uint64_t seed, int workers) {
  return path_to_cycle(g, est, draw_llr(m, Side::Q, seed), seed, workers);
}

HamiltonianPath brute_force_path(const WeightedGraph& w) {
  const int n = w.vertices();
  if (n < 2 || n > 9) throw std::length_error("brute_force_path: n must be in [2, 9]");
  const Eigen::MatrixXd d = w.dense();
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<Vertex> best_order = order;
  double best = -std::numeric_limits<double>::infinity();
  do {
    if (order.front() > order.back()) continue;
    double total = 0.0;
    for (int k = 0; k + 1 < n; ++k) total += d(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k + 1)]);
    if (total > best) {
      best = total;
      best_order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return HamiltonianPath(best_order);
}

CycleEstimator make_cycle_estimator(std::string_view tag, const EstimatorConfig& config) {
  using Out = std::optional<HamiltonianCycle>;
  if (tag == "tsp")
    return {"tsp", [](const WeightedGraph& w, std::uint64_t) -> Out { return brute_force_tsp(w); }};
  if (tag == "f2f")
    return {"f2f", [](const WeightedGraph& w, std::uint64_t) -> Out {
              const LpSolution s = solve_f2f(w);
              if (s.vertex_class != VertexClass::HamiltonianCycle) return std::nullopt;
              return edges_to_cycle(s.x);
            }};
  if (tag == "bp")
    return {"bp", [config](const WeightedGraph& w, std::uint64_t) -> Out {
              return edges_to_cycle(bp_run(w, config.bp_iterations, config.bp_early_stop));
            }};
  if (tag == "nn")
    return {"nn", [](const WeightedGraph& w, std::uint64_t) -> Out { return nearest_neighbor(w); }};
  if (tag == "gm")
    return {"gm", [](const WeightedGraph& w, std::uint64_t) -> Out { return edges_to_cycle(greedy_merging(w)); }};
  if (tag == "spectral")
    return {"spectral", [](const WeightedGraph& w, std::uint64_t) -> Out { return spectral_order(w); }};
  throw std::invalid_argument("unknown cycle estimator: " + std::string(tag));
}

PathEstimator make_path_estimator(std::string_view tag, const EstimatorConfig&) {
  using Out = std::optional<HamiltonianPath>;
  if (tag == "path-bf")
    return {"path-bf", [](const WeightedGraph& w, std::uint64_t) -> Out { return brute_force_path(w); }};
  if (tag == "f2f-path")
    return {"f2f-path", [](const WeightedGraph& w, std::uint64_t) -> Out {
              const int n = w.vertices();
              const EdgeIndexer big(n + 1);
              Eigen::VectorXd aug = Eigen::VectorXd::Zero(big.edges());
              for (Index e = 0; e < w.edges(); ++e) {
                const auto [i, j] = w.indexer().decode(e);
                aug[big.index(i, j)] = w[e];
              }
              const LpSolution s = solve_f2f(WeightedGraph(n + 1, aug));
              if (s.vertex_class != VertexClass::HamiltonianCycle) return std::nullopt;
              const auto cyc = edges_to_cycle(s.x);
              if (!cyc) return std::nullopt;
              // Canonical order starts at 0; rotate so the extra vertex n is last.
              std::vector<Vertex> order = cyc->order();
              const auto it = std::find(order.begin(), order.end(), n);
              std::rotate(order.begin(), it + 1, order.end());
              order.pop_back();
              return HamiltonianPath(std::move(order));
            }};
  throw std::invalid_argument("unknown path estimator: " + std::string(tag));
}

}  // namespace hhc
