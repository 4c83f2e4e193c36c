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

#include "hhc/greedy.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hhc {
namespace {

void require_cycle_size(const WeightedGraph& w, const char* who) {
  if (w.vertices() < 3) throw std::invalid_argument(std::string(who) + ": n must be >= 3");
  require_finite(w, who);
}

}  // namespace

EdgeSubset simple_thresholding(const WeightedGraph& w) {
  require_cycle_size(w, "simple_thresholding");
  const int n = w.vertices();
  EdgeSubset x(n);
  for (Vertex i = 0; i < n; ++i) {
    Vertex first = -1, second = -1;
    for (Vertex l = 0; l < n; ++l) {
      if (l == i) continue;
      const double v = w(i, l);
      if (first < 0 || v > w(i, first)) {
        second = first;
        first = l;
      } else if (second < 0 || v > w(i, second)) {
        second = l;
      }
    }
    x.set(i, first, 2);
    x.set(i, second, 2);
  }
  return x;
}

HamiltonianCycle nearest_neighbor(const WeightedGraph& w, Vertex start) {
  require_cycle_size(w, "nearest_neighbor");
  const int n = w.vertices();
  if (start < 0 || start >= n) throw std::invalid_argument("nearest_neighbor: start out of range");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> order{start};
  seen[static_cast<std::size_t>(start)] = 1;
  for (int step = 1; step < n; ++step) {
    const Vertex cur = order.back();
    Vertex next = -1;
    for (Vertex v = 0; v < n; ++v)
      if (!seen[static_cast<std::size_t>(v)] && (next < 0 || w(cur, v) > w(cur, next))) next = v;
    seen[static_cast<std::size_t>(next)] = 1;
    order.push_back(next);
  }
  return HamiltonianCycle(std::move(order));
}

GreedyMergingResult greedy_merging_detailed(const WeightedGraph& w) {
  require_cycle_size(w, "greedy_merging");
  const int n = w.vertices();
  const EdgeIndexer& ix = w.indexer();
  std::vector<Index> order(static_cast<std::size_t>(w.edges()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return w[a] > w[b]; });

  GreedyMergingResult r{EdgeSubset(n), false};
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  Index added = 0;
  for (Index e : order) {
    const auto [i, j] = ix.decode(e);
    if (deg[static_cast<std::size_t>(i)] < 2 && deg[static_cast<std::size_t>(j)] < 2) {
      r.x.set_halves(e, 2);
      ++deg[static_cast<std::size_t>(i)];
      ++deg[static_cast<std::size_t>(j)];
      if (++added == n) break;
    }
  }
  if (added == n) return r;

  // Stalled: the deficient vertices are pairwise adjacent already, so they
  // are either one isolated vertex or the two ends of an isolated edge.
  std::vector<Vertex> deficient;
  for (Vertex v = 0; v < n; ++v)
    if (deg[static_cast<std::size_t>(v)] < 2) deficient.push_back(v);
  r.spliced = true;

  Vertex u, v;
  Index own = -1;
  if (deficient.size() == 1) {
    u = v = deficient[0];
  } else if (deficient.size() == 2) {
    u = deficient[0];
    v = deficient[1];
    own = ix.index(u, v);
  } else {
    throw std::logic_error("greedy_merging: unexpected stall state");
  }

  double best_loss = std::numeric_limits<double>::infinity();
  Index cut = -1;
  Vertex to_u = -1, to_v = -1;
  for (Index e = 0; e < w.edges(); ++e) {
    if (r.x.halves(e) != 2 || e == own) continue;
    const auto [a, b] = ix.decode(e);
    if (a == u || b == u || a == v || b == v) continue;
    const double keep_ab = w[e] - w(u, a) - w(v, b);
    const double keep_ba = w[e] - w(u, b) - w(v, a);
    if (keep_ab < best_loss) {
      best_loss = keep_ab;
      cut = e;
      to_u = a;
      to_v = b;
    }
    if (u != v && keep_ba < best_loss) {
      best_loss = keep_ba;
      cut = e;
      to_u = b;
      to_v = a;
    }
  }
  if (cut < 0) throw std::logic_error("greedy_merging: no edge to splice into");
  r.x.set_halves(cut, 0);
  r.x.set(u, to_u, 2);
  r.x.set(v, to_v, 2);
  return r;
}

}  // namespace hhc
