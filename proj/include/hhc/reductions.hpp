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
#include "hhc/model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hhc {

// An estimator maps a log-likelihood weighted graph and a seed to a cycle
// (or path), or to nullopt when its output is not one.
struct CycleEstimator {
  std::string tag;
  std::function<std::optional<HamiltonianCycle>(const WeightedGraph&, std::uint64_t)> run;
};

struct PathEstimator {
  std::string tag;
  std::function<std::optional<HamiltonianPath>(const WeightedGraph&, std::uint64_t)> run;
};

struct EstimatorConfig {
  int bp_iterations = 1000;
  int bp_early_stop = 50;
};

// Cycle estimators: tsp (exhaustive, n <= 10), f2f (the LP, accepted only
// when its vertex is a Hamiltonian cycle), bp, nn, gm, spectral.
CycleEstimator make_cycle_estimator(std::string_view tag, const EstimatorConfig& config = {});

// Path estimators: path-bf (exhaustive, n <= 9) and f2f-path (the LP on the
// graph with one extra vertex joined to every vertex at weight 0).
PathEstimator make_path_estimator(std::string_view tag, const EstimatorConfig& config = {});

class EstimatorFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename T>
struct ReductionResult {
  T estimate;
  Index inner_calls = 0;
  Index candidates = 0;
  double replacement = 0.0;  // the shared weight W in log-likelihood units
};

// For every edge e, replaces w_e by one shared weight W and runs `est`; each
// cycle that contains e yields the path cycle - e. Returns the candidate of
// maximum weight in g (ties to the smaller edge). Throws EstimatorFailure
// when no candidate exists.
ReductionResult<HamiltonianPath> cycle_to_path(const WeightedGraph& g, const CycleEstimator& est,
                                               double replacement, std::uint64_t seed, int workers = 1);

// As above with W = llr(draw from P), drawn from CounterRng(derive_seed(seed, 5)).
ReductionResult<HamiltonianPath> cycle_to_path(const WeightedGraph& g, const CycleEstimator& est,
                                               const WeightModel& m, std::uint64_t seed, int workers = 1);

// Symmetric construction: every path joining the endpoints of e yields the
// cycle path + e, scored in g.
ReductionResult<HamiltonianCycle> path_to_cycle(const WeightedGraph& g, const PathEstimator& est,
                                                double replacement, std::uint64_t seed, int workers = 1);

// W = llr(draw from Q), drawn from CounterRng(derive_seed(seed, 5)).
ReductionResult<HamiltonianCycle> path_to_cycle(const WeightedGraph& g, const PathEstimator& est,
                                                const WeightModel& m, std::uint64_t seed, int workers = 1);

// Exhaustive maximum-weight Hamiltonian path, n in [2, 9]. Ties go to the
// lexicographically smallest canonical order.
HamiltonianPath brute_force_path(const WeightedGraph& w);

}  // namespace hhc
