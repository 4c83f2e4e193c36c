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

#include "hhc/core.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhc {

enum class VertexClass { HamiltonianCycle, DisjointCycles2Factor, HalfIntegral, Unknown };

std::string to_string(VertexClass c);

// One connected component of the support graph of a degree-2 point.
struct SupportComponent {
  enum class Kind { Cycle, OddCyclesWithPaths, Unknown };

  Kind kind = Kind::Unknown;
  std::vector<Vertex> vertices;  // sorted
  // Kind::Cycle: the unit cycle. Kind::OddCyclesWithPaths: the half cycles.
  std::vector<std::vector<Vertex>> cycles;
  int unit_paths = 0;
  Index unit_edges = 0;
  Index half_edges = 0;
};

struct SupportReport {
  VertexClass vertex_class = VertexClass::Unknown;
  std::vector<SupportComponent> components;
};

// Decomposes the support of x. A component is a unit cycle, or an even
// number (at least two) of odd cycles of half edges whose vertices are
// joined pairwise by vertex-disjoint paths of unit edges. Anything else is
// reported as Unknown. Throws std::invalid_argument unless every degree is 2.
SupportReport classify_support(const EdgeSubset& x);

struct SimplexOptions {
  int refactor_interval = 64;
  double snap_tolerance = 1e-6;
  // 0 selects 50 * (edges + n).
  std::int64_t max_pivots = 0;
};

struct LpSolution {
  EdgeSubset x;
  double objective = 0.0;
  VertexClass vertex_class = VertexClass::Unknown;
  std::vector<SupportComponent> components;
  // Optimal duals: u per vertex; per edge b_e, h_e >= 0 with
  // w_e + b_e - h_e = u_i + u_j.
  Eigen::VectorXd u;
  Eigen::VectorXd b;
  Eigen::VectorXd h;
  std::int64_t pivots = 0;
};

// Thrown when an optimal basic solution has an entry away from {0, 1/2, 1}
// or fails the exact degree check after snapping.
class NumericDegeneracyError : public std::runtime_error {
 public:
  NumericDegeneracyError(const std::string& what, Eigen::VectorXd raw)
      : std::runtime_error(what), raw_(std::move(raw)) {}
  const Eigen::VectorXd& raw() const { return raw_; }

 private:
  Eigen::VectorXd raw_;
};

// Maximizes <w, x> over {x in [0,1]^E : x(delta(v)) = 2 for all v} with a
// bounded-variable revised simplex on a dense LU factorization of the basis.
LpSolution solve_f2f(const WeightedGraph& w, const SimplexOptions& options = {});

// Replaces every 1/2 entry by 0 or 1 with a fair coin from CounterRng(seed),
// one draw per half edge in edge order.
EdgeSubset round_halves(const EdgeSubset& x, std::uint64_t seed);
inline EdgeSubset round_halves(const LpSolution& s, std::uint64_t seed) {
  return round_halves(s.x, seed);
}

struct CertificateResult {
  Eigen::VectorXd u;
  bool valid = false;
  std::vector<Index> violating_edges;
};

// u_i = 1/2 min { w_ij : ij on the cycle }; valid iff u_i + u_j <= w_ij on
// the cycle and u_i + u_j >= w_ij off it.
CertificateResult certify(const WeightedGraph& w, const HamiltonianCycle& truth);

// Exhaustive maximum-weight Hamiltonian cycle, n in [3, 10]. Ties go to the
// lexicographically smallest canonical order.
HamiltonianCycle brute_force_tsp(const WeightedGraph& w);

// Exhaustive maximum-weight 2-factor, n in [3, 10].
EdgeSubset brute_force_2factor(const WeightedGraph& w);

}  // namespace hhc
