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

namespace hhc {

// Max-product messages for the maximum-weight 2-factor. m(i, j) is the
// message sent from i to j; the diagonal is unused.
struct MessageState {
  Eigen::MatrixXd m;
  int t = 0;
};

// Which messages a vertex ranks when choosing its two edges.
enum class DecisionRule {
  Received,  // m_{l->i}
  Sent,      // m_{i->l}
};

MessageState bp_init(const WeightedGraph& w);

// Flood update m_{i->j}(t) = w_ij - 2ndmax_{l != i, j} m_{l->i}(t-1). When
// the candidate set has a single element (n = 3) its 2ndmax is that element.
MessageState bp_step(const MessageState& s, const WeightedGraph& w);

// Every vertex keeps the two incident edges with the largest messages under
// `rule` (ties to the smaller neighbour index). The output is the union of
// the selections and may have vertices of degree above 2.
EdgeSubset bp_decide(const MessageState& s, DecisionRule rule = DecisionRule::Received);

struct BpOptions {
  int iterations = 1000;
  // Stop once the decision has been unchanged for this many consecutive
  // steps; 0 disables.
  int early_stop_window = 50;
  DecisionRule rule = DecisionRule::Received;
};

struct BpResult {
  EdgeSubset x;
  int iterations = 0;
  bool stopped_early = false;
};

BpResult bp_solve(const WeightedGraph& w, const BpOptions& options);

inline EdgeSubset bp_run(const WeightedGraph& w, int t_f, int early_stop_window = 50,
                         DecisionRule rule = DecisionRule::Received) {
  return bp_solve(w, BpOptions{t_f, early_stop_window, rule}).x;
}

// ceil(2 n w* / gap): the iteration count after which BP is guaranteed to
// output the optimal 2-factor of weight w* when the next-best 2-factor is
// `gap` lighter.
std::int64_t bp_iteration_budget(int n, double optimum_weight, double gap);

}  // namespace hhc
