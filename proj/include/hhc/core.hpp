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

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hhc {

using Index = Eigen::Index;
using Vertex = int;

// Edges of the complete graph K_n, numbered row-major over pairs {i,j} with
// i<j: (0,1), (0,2), ..., (0,n-1), (1,2), ...
class EdgeIndexer {
 public:
  explicit EdgeIndexer(int n);

  int vertices() const { return n_; }
  Index edges() const { return static_cast<Index>(n_) * (n_ - 1) / 2; }

  // Throws std::invalid_argument when i == j or either is out of range.
  Index index(Vertex i, Vertex j) const;
  std::pair<Vertex, Vertex> decode(Index e) const;

  bool operator==(const EdgeIndexer& other) const = default;

 private:
  Index row_start(Vertex i) const {
    return static_cast<Index>(i) * (2 * n_ - i - 1) / 2;
  }

  int n_;
};

Index edge_index(Vertex i, Vertex j, int n);

// Marks an erased observation in a raw graph; loglik_transform maps it to 0.
inline constexpr double kErased = std::numeric_limits<double>::quiet_NaN();

inline bool is_erased(double v) { return v != v; }

// Weighted complete graph with one weight per edge of K_n. Raw observation
// graphs may carry kErased entries; transformed graphs are finite.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(int n, Eigen::VectorXd weights);
  static WeightedGraph zeros(int n);

  int vertices() const { return indexer_.vertices(); }
  Index edges() const { return indexer_.edges(); }
  const EdgeIndexer& indexer() const { return indexer_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  double operator()(Vertex i, Vertex j) const {
    return weights_[indexer_.index(i, j)];
  }
  double operator[](Index e) const { return weights_[e]; }

  bool has_erasures() const;
  bool all_finite() const;

  // Symmetric n x n matrix with zero diagonal; erased entries become 0.
  Eigen::MatrixXd dense() const;

  WeightedGraph with_weight(Index e, double value) const;

  // Relabels vertex v as perm[v].
  WeightedGraph relabeled(std::span<const Vertex> perm) const;

 private:
  EdgeIndexer indexer_{2};
  Eigen::VectorXd weights_;
};

// Throws std::invalid_argument unless every weight is finite.
void require_finite(const WeightedGraph& g, const char* who);

// Edge vector with entries in {0, 1/2, 1}, stored as numerators over 2.
class EdgeSubset {
 public:
  EdgeSubset() = default;
  explicit EdgeSubset(int n);
  static EdgeSubset from_edges(int n, std::span<const Index> edges);

  int vertices() const { return indexer_.vertices(); }
  Index edges() const { return indexer_.edges(); }
  const EdgeIndexer& indexer() const { return indexer_; }

  int halves(Index e) const { return halves_[static_cast<std::size_t>(e)]; }
  double value(Index e) const { return 0.5 * halves(e); }
  void set_halves(Index e, int h);
  void set(Vertex i, Vertex j, int h) { set_halves(indexer_.index(i, j), h); }
  int halves(Vertex i, Vertex j) const { return halves(indexer_.index(i, j)); }

  // Degree of v in half-units, exact.
  int degree_halves(Vertex v) const;
  bool is_integral() const;
  bool all_degrees_two() const;
  Index support_size() const;
  std::vector<Index> support() const;
  Eigen::VectorXd as_vector() const;
  double dot(const Eigen::VectorXd& w) const;

  bool operator==(const EdgeSubset& other) const = default;

 private:
  EdgeIndexer indexer_{2};
  std::vector<std::uint8_t> halves_;
};

// Closed tour over all vertices, kept in canonical form: starts at vertex 0
// and the successor of 0 is smaller than its predecessor.
class HamiltonianCycle {
 public:
  explicit HamiltonianCycle(std::vector<Vertex> order);

  int vertices() const { return static_cast<int>(order_.size()); }
  const std::vector<Vertex>& order() const { return order_; }
  EdgeSubset edges() const;
  double weight(const WeightedGraph& g) const;
  bool contains(Vertex i, Vertex j) const;

  bool operator==(const HamiltonianCycle& other) const = default;

 private:
  std::vector<Vertex> order_;
};

// Open tour over all vertices; canonical orientation starts at the smaller
// endpoint label.
class HamiltonianPath {
 public:
  explicit HamiltonianPath(std::vector<Vertex> order);

  int vertices() const { return static_cast<int>(order_.size()); }
  const std::vector<Vertex>& order() const { return order_; }
  std::pair<Vertex, Vertex> endpoints() const {
    return {order_.front(), order_.back()};
  }
  EdgeSubset edges() const;
  double weight(const WeightedGraph& g) const;

  bool operator==(const HamiltonianPath& other) const = default;

 private:
  std::vector<Vertex> order_;
};

EdgeSubset cycle_to_edges(const HamiltonianCycle& c);

// Recovers the tour when x is integral, 2-regular and connected.
std::optional<HamiltonianCycle> edges_to_cycle(const EdgeSubset& x);
// Recovers the path when x is integral with n-1 edges forming one path.
std::optional<HamiltonianPath> edges_to_path(const EdgeSubset& x);

// Number of edges on which two integral subsets differ. Throws
// std::invalid_argument on half-integral input or mismatched n.
Index symmetric_difference_size(const EdgeSubset& a, const EdgeSubset& b);

// CSV serialization: header line `n=<count>`, then `i,j,weight` per edge,
// erasures as `NA`.
void write_graph_csv(std::ostream& out, const WeightedGraph& g);
WeightedGraph read_graph_csv(std::istream& in);
void save_graph_csv(const std::string& path, const WeightedGraph& g);
WeightedGraph load_graph_csv(const std::string& path);

}  // namespace hhc
