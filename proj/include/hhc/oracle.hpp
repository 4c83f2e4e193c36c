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

// Reference implementations for cross-checking the solvers and the closed
// forms. Exhaustive searches over cycles, 2-factors and paths live with
// their solver counterparts and are re-exported here.

#include "hhc/core.hpp"
#include "hhc/lp_f2f.hpp"
#include "hhc/model.hpp"
#include "hhc/reductions.hpp"

#include <vector>

namespace hhc {

struct VertexCatalog {
  int n = 0;
  std::vector<EdgeSubset> vertices;
  std::vector<SupportReport> reports;

  bool contains(const EdgeSubset& x) const;
};

// All extreme points of {x in [0,1]^E : x(delta(v)) = 2} for n in [3, 6].
// Candidates are the degree-feasible vectors over {0, 1/2, 1}; a candidate
// is extreme iff the incidence columns of its fractional entries are
// linearly independent, decided by exact integer elimination.
VertexCatalog enumerate_f2f_vertices(int n);

// Rank of an integer matrix by fraction-free elimination.
int exact_rank(std::vector<std::vector<long long>> rows);

// \int dP^a dQ^(1-a) by quadrature (Gaussian) or direct summation (Poisson,
// Bernoulli), including the erasure atom when eta > 0.
double numeric_affinity(const WeightModel& m, double a);

// -2 log \int sqrt(dP dQ), -(3/2) log \int dP^{2/3} dQ^{1/3}, ignoring eta.
double numeric_alpha(const WeightModel& m);
double numeric_beta(const WeightModel& m);

// The same divergences between the erased distributions.
double numeric_alpha_erasure(const WeightModel& m);
double numeric_beta_erasure(const WeightModel& m);

}  // namespace hhc
