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

namespace hhc {

// Every vertex keeps its two heaviest incident edges; the output is the
// union and may be irregular. Ties go to the smaller edge index.
EdgeSubset simple_thresholding(const WeightedGraph& w);

// Greedy tour from `start`, always moving to the heaviest unvisited
// neighbour, closed back to `start`.
HamiltonianCycle nearest_neighbor(const WeightedGraph& w, Vertex start = 0);

struct GreedyMergingResult {
  EdgeSubset x;
  // True when the greedy rule stalled before every degree reached 2 and the
  // final splice was needed.
  bool spliced = false;
};

// Scans edges by decreasing weight and adds each one whose endpoints both
// have degree below 2. The scan can stall with one isolated vertex or one
// isolated edge left over (every remaining legal edge already present); the
// leftover is then spliced into the existing edge whose removal loses the
// least weight, so the result is always a 2-factor.
GreedyMergingResult greedy_merging_detailed(const WeightedGraph& w);
inline EdgeSubset greedy_merging(const WeightedGraph& w) { return greedy_merging_detailed(w).x; }

}  // namespace hhc
