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

#include "hhc/generator.hpp"

#include <numeric>
#include <stdexcept>

namespace hhc {

EdgeSubset PlantedInstance::truth_edges() const {
  return std::visit([](const auto& t) { return t.edges(); }, truth);
}

double draw_observation(const WeightModel& m, Side side, CounterRng& rng) {
  const bool on = side == Side::P;
  switch (m.family) {
    case Family::Gaussian:
      return rng.normal() + (on ? m.p_param : 0.0);
    case Family::Poisson:
      return static_cast<double>(rng.poisson(on ? m.p_param : m.q_param));
    case Family::Bernoulli:
      return rng.bernoulli(on ? m.p_param : m.q_param) ? 1.0 : 0.0;
  }
  return 0.0;
}

std::vector<Vertex> random_permutation(int n, CounterRng& rng) {
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

PlantedInstance plant_specific(const Truth& truth, const WeightModel& m, std::uint64_t seed) {
  m.validate();
  const EdgeSubset on = std::visit([](const auto& t) { return t.edges(); }, truth);
  const int n = on.vertices();
  Eigen::VectorXd w(on.edges());
  for (Index e = 0; e < on.edges(); ++e) {
    CounterRng value_rng(derive_seed(seed, 2, static_cast<std::uint64_t>(e)));
    w[e] = draw_observation(m, on.halves(e) ? Side::P : Side::Q, value_rng);
    if (m.erasure > 0.0) {
      CounterRng erase_rng(derive_seed(seed, 3, static_cast<std::uint64_t>(e)));
      if (erase_rng.uniform() < m.erasure) w[e] = kErased;
    }
  }
  return PlantedInstance{WeightedGraph(n, std::move(w)), truth, m, seed};
}

PlantedInstance generate_cycle_instance(int n, const WeightModel& m, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("generate_cycle_instance: n must be >= 3");
  CounterRng truth_rng(derive_seed(seed, 1));
  return plant_specific(HamiltonianCycle(random_permutation(n, truth_rng)), m, seed);
}

PlantedInstance generate_path_instance(int n, const WeightModel& m, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generate_path_instance: n must be >= 2");
  CounterRng truth_rng(derive_seed(seed, 1));
  return plant_specific(HamiltonianPath(random_permutation(n, truth_rng)), m, seed);
}

PlantedInstance relabel(const PlantedInstance& inst, std::span<const Vertex> perm) {
  PlantedInstance out = inst;
  out.observations = inst.observations.relabeled(perm);
  const auto map_order = [&](const std::vector<Vertex>& order) {
    std::vector<Vertex> mapped;
    mapped.reserve(order.size());
    for (Vertex v : order) mapped.push_back(perm[v]);
    return mapped;
  };
  if (inst.is_path())
    out.truth = HamiltonianPath(map_order(inst.path().order()));
  else
    out.truth = HamiltonianCycle(map_order(inst.cycle().order()));
  return out;
}

}  // namespace hhc
