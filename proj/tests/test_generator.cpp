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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "hhc/generator.hpp"
#include "hhc/greedy.hpp"
#include "hhc/rng.hpp"

#include <cmath>
#include <numeric>
#include <set>

using namespace hhc;

TEST_CASE("splitmix64 matches the reference sequence") {
  // First outputs of the reference SplitMix64 generator seeded with 0.
  CounterRng rng(0);
  CHECK(rng.next_u64() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next_u64() == 0x6e789e6aa1b965f4ULL);
  CHECK(rng.next_u64() == 0x06c45d188009454fULL);
  CHECK(rng.position() == 3);
}

TEST_CASE("derived seeds are distinct") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 50; ++a)
    for (std::uint64_t b = 0; b < 50; ++b) seen.insert(derive_seed(42, a, b));
  CHECK(seen.size() == 2500);
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
}

TEST_CASE("variate moments") {
  CounterRng rng(7);
  constexpr int kN = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < kN; ++i) {
    su += rng.uniform();
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(std::abs(su / kN - 0.5) < 5 * std::sqrt(1.0 / 12 / kN));
  CHECK(std::abs(sn / kN) < 5 / std::sqrt(kN));
  CHECK(std::abs(sn2 / kN - 1.0) < 5 * std::sqrt(2.0 / kN));

  for (double rate : {0.5, 4.0, 29.0, 30.0, 100.0, 2500.0}) {
    CAPTURE(rate);
    double s = 0, s2 = 0;
    for (int i = 0; i < kN; ++i) {
      const double k = static_cast<double>(rng.poisson(rate));
      s += k;
      s2 += k * k;
    }
    const double mean = s / kN, var = s2 / kN - mean * mean;
    CHECK(std::abs(mean - rate) < 5 * std::sqrt(rate / kN));
    CHECK(std::abs(var / rate - 1.0) < 0.05);
  }
}

TEST_CASE("below is unbiased") {
  CounterRng rng(3);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.below(7)];
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("n = 3 plants the triangle") {
  const PlantedInstance inst = generate_cycle_instance(3, WeightModel::gaussian(1.0), 9);
  CHECK(inst.cycle().order() == std::vector<Vertex>{0, 1, 2});
  CHECK_THROWS_AS(generate_cycle_instance(2, WeightModel::gaussian(1.0), 9), std::invalid_argument);
  CHECK_THROWS_AS(generate_path_instance(1, WeightModel::gaussian(1.0), 9), std::invalid_argument);
}

TEST_CASE("on-cycle and off-cycle sample means") {
  const int n = 1000;
  const double mu = std::sqrt(40.0);
  const PlantedInstance inst = generate_cycle_instance(n, WeightModel::gaussian(mu), 2026);
  const EdgeSubset truth = inst.truth_edges();
  double on = 0, off = 0;
  Index n_off = 0;
  for (Index e = 0; e < truth.edges(); ++e) {
    if (truth.halves(e) == 2) {
      on += inst.observations[e];
    } else {
      off += inst.observations[e];
      ++n_off;
    }
  }
  CHECK(std::abs(on / n - mu) < 4.0 / std::sqrt(n));
  CHECK(std::abs(off / static_cast<double>(n_off)) < 5.0 / std::sqrt(static_cast<double>(n_off)));
}

TEST_CASE("Poisson on/off histograms have the right locations") {
  const int n = 500;
  const PlantedInstance inst = generate_cycle_instance(n, WeightModel::poisson(40.0, 10.0), 77);
  const EdgeSubset truth = inst.truth_edges();
  double on = 0, off = 0;
  Index n_off = 0;
  for (Index e = 0; e < truth.edges(); ++e) {
    const double k = inst.observations[e];
    REQUIRE(k == std::floor(k));
    if (truth.halves(e) == 2) {
      on += k;
    } else {
      off += k;
      ++n_off;
    }
  }
  CHECK(std::abs(on / n - 40.0) < 5 * std::sqrt(40.0 / n));
  CHECK(std::abs(off / static_cast<double>(n_off) - 10.0) < 5 * std::sqrt(10.0 / static_cast<double>(n_off)));
}

TEST_CASE("erasure rate") {
  for (double eta : {0.2, 0.999}) {
    const int n = 200;
    const PlantedInstance inst = generate_cycle_instance(n, WeightModel::gaussian(1.0, eta), 5);
    Index erased = 0;
    for (Index e = 0; e < inst.observations.edges(); ++e) erased += is_erased(inst.observations[e]);
    const double m = static_cast<double>(inst.observations.edges());
    CHECK(std::abs(erased / m - eta) < 5 * std::sqrt(eta * (1 - eta) / m) + 1e-12);
    const WeightedGraph w = inst.loglik();
    for (Index e = 0; e < w.edges(); ++e)
      if (is_erased(inst.observations[e])) CHECK(w[e] == 0.0);
  }
}

TEST_CASE("path instances") {
  const WeightModel strong = WeightModel::gaussian(1000.0);
  const PlantedInstance two = generate_path_instance(2, strong, 1);
  CHECK(two.is_path());
  CHECK(two.observations[0] > 500.0);

  const PlantedInstance four = generate_path_instance(4, strong, 1);
  int big = 0;
  for (Index e = 0; e < four.observations.edges(); ++e) big += four.observations[e] > 500.0;
  CHECK(big == 3);
  CHECK(four.truth_edges().support_size() == 3);
}

TEST_CASE("same seed gives a bit-identical instance") {
  for (const WeightModel& m : {WeightModel::gaussian(2.0, 0.3), WeightModel::poisson(5.0, 2.0),
                               WeightModel::bernoulli(0.7, 0.2)}) {
    const PlantedInstance a = generate_cycle_instance(40, m, 123);
    const PlantedInstance b = generate_cycle_instance(40, m, 123);
    CHECK(a.cycle() == b.cycle());
    for (Index e = 0; e < a.observations.edges(); ++e) {
      const double x = a.observations[e], y = b.observations[e];
      CHECK(((is_erased(x) && is_erased(y)) || x == y));
    }
    const PlantedInstance c = generate_cycle_instance(40, m, 124);
    CHECK_FALSE(a.cycle() == c.cycle());
  }
}

TEST_CASE("plant_specific keeps the given truth") {
  const int n = 8;
  std::vector<Vertex> id(n);
  std::iota(id.begin(), id.end(), 0);
  const PlantedInstance inst = plant_specific(HamiltonianCycle(id), WeightModel::gaussian(1000.0), 4);
  for (int i = 0; i < n; ++i) CHECK(inst.observations(i, (i + 1) % n) > 500.0);
  std::vector<Vertex> rev(id.rbegin(), id.rend());
  const PlantedInstance r = plant_specific(HamiltonianCycle(rev), WeightModel::gaussian(1000.0), 4);
  CHECK(r.truth_edges() == inst.truth_edges());
}

TEST_CASE("fixed truth and uniform truth give the same error statistics") {
  const int n = 30, trials = 200;
  const WeightModel m = WeightModel::gaussian(std::sqrt(7.0 * std::log(n)));
  std::vector<Vertex> id(n);
  std::iota(id.begin(), id.end(), 0);
  int fixed_ok = 0, uniform_ok = 0;
  for (int t = 0; t < trials; ++t) {
    const PlantedInstance a = plant_specific(HamiltonianCycle(id), m, derive_seed(1, t));
    const PlantedInstance b = generate_cycle_instance(n, m, derive_seed(2, t));
    fixed_ok += simple_thresholding(a.loglik()) == a.truth_edges();
    uniform_ok += simple_thresholding(b.loglik()) == b.truth_edges();
  }
  const double p1 = static_cast<double>(fixed_ok) / trials, p2 = static_cast<double>(uniform_ok) / trials;
  const double pool = 0.5 * (p1 + p2);
  const double se = std::sqrt(2 * pool * (1 - pool) / trials);
  MESSAGE("fixed " << p1 << " uniform " << p2);
  CHECK(std::abs(p1 - p2) <= 4 * se + 1e-12);
}

TEST_CASE("relabeling commutes with planting") {
  const PlantedInstance inst = generate_cycle_instance(9, WeightModel::gaussian(2.0), 31);
  CounterRng rng(8);
  const std::vector<Vertex> perm = random_permutation(9, rng);
  const PlantedInstance r = relabel(inst, perm);
  const auto& order = inst.cycle().order();
  std::vector<Vertex> mapped;
  for (Vertex v : order) mapped.push_back(perm[static_cast<std::size_t>(v)]);
  CHECK(r.cycle() == HamiltonianCycle(mapped));
  CHECK(r.cycle().weight(r.observations) == doctest::Approx(inst.cycle().weight(inst.observations)));
}

TEST_CASE("random permutations are uniform on S_3") {
  std::vector<int> counts(6, 0);
  for (std::uint64_t s = 0; s < 60000; ++s) {
    CounterRng rng(s);
    const auto p = random_permutation(3, rng);
    ++counts[static_cast<std::size_t>(p[0] * 2 + (p[1] > p[2] ? 1 : 0))];
  }
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}
