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

#include "hhc/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hhc {

EdgeIndexer::EdgeIndexer(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("EdgeIndexer: need at least 2 vertices");
}

Index EdgeIndexer::index(Vertex i, Vertex j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::invalid_argument("edge_index: vertex out of range");
  if (i == j) throw std::invalid_argument("edge_index: self-loop");
  if (i > j) std::swap(i, j);
  return row_start(i) + (j - i - 1);
}

std::pair<Vertex, Vertex> EdgeIndexer::decode(Index e) const {
  if (e < 0 || e >= edges()) throw std::invalid_argument("decode: edge out of range");
  // Largest i with row_start(i) <= e.
  Vertex lo = 0, hi = n_ - 2;
  while (lo < hi) {
    const Vertex mid = (lo + hi + 1) / 2;
    if (row_start(mid) <= e)
      lo = mid;
    else
      hi = mid - 1;
  }
  return {lo, static_cast<Vertex>(lo + 1 + (e - row_start(lo)))};
}

Index edge_index(Vertex i, Vertex j, int n) { return EdgeIndexer(n).index(i, j); }

// ---------------------------------------------------------------------------

WeightedGraph::WeightedGraph(int n, Eigen::VectorXd weights)
    : indexer_(n), weights_(std::move(weights)) {
  if (weights_.size() != indexer_.edges())
    throw std::invalid_argument("WeightedGraph: weight vector length != C(n,2)");
  for (Index e = 0; e < weights_.size(); ++e)
    if (std::isinf(weights_[e]))
      throw std::invalid_argument("WeightedGraph: infinite weight");
}

WeightedGraph WeightedGraph::zeros(int n) {
  const EdgeIndexer idx(n);
  return WeightedGraph(n, Eigen::VectorXd::Zero(idx.edges()));
}

bool WeightedGraph::has_erasures() const {
  return std::any_of(weights_.begin(), weights_.end(), is_erased);
}

bool WeightedGraph::all_finite() const { return weights_.allFinite(); }

Eigen::MatrixXd WeightedGraph::dense() const {
  const int n = vertices();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  Index e = 0;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j, ++e) {
      const double v = is_erased(weights_[e]) ? 0.0 : weights_[e];
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

WeightedGraph WeightedGraph::with_weight(Index e, double value) const {
  WeightedGraph g = *this;
  g.weights_[e] = value;
  return g;
}

WeightedGraph WeightedGraph::relabeled(std::span<const Vertex> perm) const {
  const int n = vertices();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("relabeled: permutation size mismatch");
  Eigen::VectorXd out(edges());
  Index e = 0;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j, ++e) out[indexer_.index(perm[i], perm[j])] = weights_[e];
  return WeightedGraph(n, std::move(out));
}

void require_finite(const WeightedGraph& g, const char* who) {
  if (!g.all_finite())
    throw std::invalid_argument(std::string(who) +
                                ": weights must be finite (apply loglik_transform to erasures)");
}

// ---------------------------------------------------------------------------

EdgeSubset::EdgeSubset(int n)
    : indexer_(n), halves_(static_cast<std::size_t>(indexer_.edges()), 0) {}

EdgeSubset EdgeSubset::from_edges(int n, std::span<const Index> edges) {
  EdgeSubset x(n);
  for (Index e : edges) x.set_halves(e, 2);
  return x;
}

void EdgeSubset::set_halves(Index e, int h) {
  if (h < 0 || h > 2) throw std::invalid_argument("EdgeSubset: value must be 0, 1/2 or 1");
  halves_.at(static_cast<std::size_t>(e)) = static_cast<std::uint8_t>(h);
}

int EdgeSubset::degree_halves(Vertex v) const {
  int d = 0;
  for (Vertex u = 0; u < vertices(); ++u)
    if (u != v) d += halves(indexer_.index(u, v));
  return d;
}

bool EdgeSubset::is_integral() const {
  return std::none_of(halves_.begin(), halves_.end(), [](std::uint8_t h) { return h == 1; });
}

bool EdgeSubset::all_degrees_two() const {
  std::vector<int> deg(static_cast<std::size_t>(vertices()), 0);
  for (Index e = 0; e < edges(); ++e) {
    if (halves(e) == 0) continue;
    const auto [i, j] = indexer_.decode(e);
    deg[i] += halves(e);
    deg[j] += halves(e);
  }
  return std::all_of(deg.begin(), deg.end(), [](int d) { return d == 4; });
}

Index EdgeSubset::support_size() const {
  return std::count_if(halves_.begin(), halves_.end(), [](std::uint8_t h) { return h != 0; });
}

std::vector<Index> EdgeSubset::support() const {
  std::vector<Index> out;
  for (Index e = 0; e < edges(); ++e)
    if (halves(e) != 0) out.push_back(e);
  return out;
}

Eigen::VectorXd EdgeSubset::as_vector() const {
  Eigen::VectorXd v(edges());
  for (Index e = 0; e < edges(); ++e) v[e] = value(e);
  return v;
}

double EdgeSubset::dot(const Eigen::VectorXd& w) const {
  double s = 0.0;
  for (Index e = 0; e < edges(); ++e)
    if (halves(e) != 0) s += value(e) * w[e];
  return s;
}

// ---------------------------------------------------------------------------

namespace {

void require_permutation(const std::vector<Vertex>& order, const char* who) {
  std::vector<char> seen(order.size(), 0);
  for (Vertex v : order) {
    if (v < 0 || v >= static_cast<Vertex>(order.size()) || seen[v])
      throw std::invalid_argument(std::string(who) + ": order is not a permutation");
    seen[v] = 1;
  }
}

}  // namespace

HamiltonianCycle::HamiltonianCycle(std::vector<Vertex> order) : order_(std::move(order)) {
  if (order_.size() < 3) throw std::invalid_argument("HamiltonianCycle: need n >= 3");
  require_permutation(order_, "HamiltonianCycle");
  std::rotate(order_.begin(), std::find(order_.begin(), order_.end(), 0), order_.end());
  if (order_[1] > order_.back()) std::reverse(order_.begin() + 1, order_.end());
}

EdgeSubset HamiltonianCycle::edges() const {
  const int n = vertices();
  EdgeSubset x(n);
  for (int k = 0; k < n; ++k) x.set(order_[k], order_[(k + 1) % n], 2);
  return x;
}

double HamiltonianCycle::weight(const WeightedGraph& g) const {
  const int n = vertices();
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += g(order_[k], order_[(k + 1) % n]);
  return s;
}

bool HamiltonianCycle::contains(Vertex i, Vertex j) const {
  const int n = vertices();
  for (int k = 0; k < n; ++k) {
    const Vertex a = order_[k], b = order_[(k + 1) % n];
    if ((a == i && b == j) || (a == j && b == i)) return true;
  }
  return false;
}

HamiltonianPath::HamiltonianPath(std::vector<Vertex> order) : order_(std::move(order)) {
  if (order_.size() < 2) throw std::invalid_argument("HamiltonianPath: need n >= 2");
  require_permutation(order_, "HamiltonianPath");
  if (order_.front() > order_.back()) std::reverse(order_.begin(), order_.end());
}

EdgeSubset HamiltonianPath::edges() const {
  EdgeSubset x(vertices());
  for (std::size_t k = 0; k + 1 < order_.size(); ++k) x.set(order_[k], order_[k + 1], 2);
  return x;
}

double HamiltonianPath::weight(const WeightedGraph& g) const {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < order_.size(); ++k) s += g(order_[k], order_[k + 1]);
  return s;
}

EdgeSubset cycle_to_edges(const HamiltonianCycle& c) { return c.edges(); }

namespace {

std::vector<std::vector<Vertex>> integral_adjacency(const EdgeSubset& x) {
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(x.vertices()));
  for (Index e = 0; e < x.edges(); ++e) {
    if (x.halves(e) == 0) continue;
    const auto [i, j] = x.indexer().decode(e);
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  return adj;
}

// Walks from `start` along unvisited neighbours; returns the visit order.
std::vector<Vertex> walk(const std::vector<std::vector<Vertex>>& adj, Vertex start) {
  std::vector<Vertex> order{start};
  std::vector<char> seen(adj.size(), 0);
  seen[start] = 1;
  Vertex cur = start;
  for (;;) {
    Vertex next = -1;
    for (Vertex v : adj[cur])
      if (!seen[v]) {
        next = v;
        break;
      }
    if (next < 0) break;
    seen[next] = 1;
    order.push_back(next);
    cur = next;
  }
  return order;
}

}  // namespace

std::optional<HamiltonianCycle> edges_to_cycle(const EdgeSubset& x) {
  const int n = x.vertices();
  if (n < 3 || !x.is_integral()) return std::nullopt;
  const auto adj = integral_adjacency(x);
  for (const auto& a : adj)
    if (a.size() != 2) return std::nullopt;
  auto order = walk(adj, 0);
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return HamiltonianCycle(std::move(order));
}

std::optional<HamiltonianPath> edges_to_path(const EdgeSubset& x) {
  const int n = x.vertices();
  if (!x.is_integral() || x.support_size() != n - 1) return std::nullopt;
  const auto adj = integral_adjacency(x);
  Vertex start = -1;
  for (Vertex v = 0; v < n; ++v) {
    if (adj[v].size() > 2 || adj[v].empty()) return std::nullopt;
    if (adj[v].size() == 1 && start < 0) start = v;
  }
  if (start < 0) return std::nullopt;
  auto order = walk(adj, start);
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return HamiltonianPath(std::move(order));
}

Index symmetric_difference_size(const EdgeSubset& a, const EdgeSubset& b) {
  if (a.vertices() != b.vertices())
    throw std::invalid_argument("symmetric_difference_size: vertex counts differ");
  if (!a.is_integral() || !b.is_integral())
    throw std::invalid_argument("symmetric_difference_size: half-integral input, round first");
  Index d = 0;
  for (Index e = 0; e < a.edges(); ++e) d += (a.halves(e) != b.halves(e));
  return d;
}

// ---------------------------------------------------------------------------

void write_graph_csv(std::ostream& out, const WeightedGraph& g) {
  out << "n=" << g.vertices() << '\n';
  const int n = g.vertices();
  char buf[64];
  Index e = 0;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j, ++e) {
      const double w = g[e];
      if (is_erased(w)) {
        out << i << ',' << j << ",NA\n";
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", w);
        out << i << ',' << j << ',' << buf << '\n';
      }
    }
}

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

[[noreturn]] void csv_error(int line, const std::string& what) {
  throw std::runtime_error("graph csv line " + std::to_string(line) + ": " + what);
}

long parse_long(const std::string& s, int line) {
  long v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) csv_error(line, "bad integer '" + s + "'");
  return v;
}

}  // namespace

WeightedGraph read_graph_csv(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("n=", 0) != 0) csv_error(lineno, "expected header n=<count>");
    n = static_cast<int>(parse_long(line.substr(2), lineno));
    break;
  }
  if (n < 2) csv_error(lineno, "missing or invalid vertex count");
  const EdgeIndexer idx(n);
  Eigen::VectorXd w(idx.edges());
  std::vector<char> seen(static_cast<std::size_t>(idx.edges()), 0);
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c) ||
        c.find(',') != std::string::npos)
      csv_error(lineno, "expected i,j,weight");
    const long i = parse_long(trim(a), lineno), j = parse_long(trim(b), lineno);
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) csv_error(lineno, "bad vertex pair");
    const Index e = idx.index(static_cast<Vertex>(i), static_cast<Vertex>(j));
    if (seen[e]) csv_error(lineno, "duplicate edge");
    seen[e] = 1;
    c = trim(c);
    if (c == "NA") {
      w[e] = kErased;
    } else {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(c, &used);
      } catch (const std::exception&) {
        csv_error(lineno, "bad weight '" + c + "'");
      }
      if (used != c.size() || !std::isfinite(v)) csv_error(lineno, "bad weight '" + c + "'");
      w[e] = v;
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    csv_error(lineno, "missing edges: every pair must appear exactly once");
  return WeightedGraph(n, std::move(w));
}

void save_graph_csv(const std::string& path, const WeightedGraph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_graph_csv(out, g);
  if (!out) throw std::runtime_error("write failed: " + path);
}

WeightedGraph load_graph_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_graph_csv(in);
}

}  // namespace hhc
