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
#include "hhc/rng.hpp"

#include <cstdint>
#include <span>
#include <variant>

namespace hhc {

using Truth = std::variant<HamiltonianCycle, HamiltonianPath>;

// One draw of the planted model. `observations` are raw values (not yet
// log-likelihood transformed); erased edges hold kErased.
struct PlantedInstance {
  WeightedGraph observations;
  Truth truth;
  WeightModel model;
  std::uint64_t seed = 0;

  bool is_path() const { return std::holds_alternative<HamiltonianPath>(truth); }
  const HamiltonianCycle& cycle() const { return std::get<HamiltonianCycle>(truth); }
  const HamiltonianPath& path() const { return std::get<HamiltonianPath>(truth); }
  EdgeSubset truth_edges() const;
  WeightedGraph loglik() const { return loglik_transform(observations, model); }
};

// Raw observation drawn from P or Q.
double draw_observation(const WeightModel& m, Side side, CounterRng& rng);

// Stream layout for a seed s:
//   truth permutation:  CounterRng(derive_seed(s, 1))
//   weight of edge e:   CounterRng(derive_seed(s, 2, e))
//   erasure of edge e:  CounterRng(derive_seed(s, 3, e)), erased iff u < eta
// so a weight never depends on which other edges are planted or erased.
PlantedInstance generate_cycle_instance(int n, const WeightModel& m, std::uint64_t seed);
PlantedInstance generate_path_instance(int n, const WeightModel& m, std::uint64_t seed);
PlantedInstance plant_specific(const Truth& truth, const WeightModel& m, std::uint64_t seed);

// Uniformly random permutation of [0, n) by Fisher-Yates.
std::vector<Vertex> random_permutation(int n, CounterRng& rng);

// Applies vertex relabeling v -> perm[v] to both the graph and the truth.
PlantedInstance relabel(const PlantedInstance& inst, std::span<const Vertex> perm);

}  // namespace hhc
