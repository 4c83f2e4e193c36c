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
#include "hhc/lp_f2f.hpp"
#include "hhc/reductions.hpp"
#include "hhc/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <set>

using namespace hhc;

namespace {

// Number of Hamiltonian paths attaining the maximum weight (within 1e-12).
int optimal_path_count(const WeightedGraph& w) {
  const int n = w.vertices();
  std::vector<Vertex> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  double best = -1e300;
  int count = 0;
  do {
    if (p.front() > p.back()) continue;
    double s = 0;
    for (int k = 0; k + 1 < n; ++k) s += w(p[k], p[k + 1]);
    if (s > best + 1e-12) {
      best = s;
      count = 1;
    } else if (std::abs(s - best) <= 1e-12) {
      ++count;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

// Larger than the weight of any cycle or path in w.
double dominant(const WeightedGraph& w) { return 1.0 + 2.0 * w.weights().cwiseAbs().sum(); }

WeightedGraph noise(int n, std::uint64_t seed) {
  CounterRng rng(seed);
  Eigen::VectorXd w(static_cast<Index>(n) * (n - 1) / 2);
  for (Index e = 0; e < w.size(); ++e) w[e] = rng.normal();
  return WeightedGraph(n, w);
}

}  // namespace

TEST_CASE("brute-force path") {
  Eigen::VectorXd one(1);
  one << 2.5;
  CHECK(brute_force_path(WeightedGraph(2, one)).order() == std::vector<Vertex>{0, 1});

  const PlantedInstance inst = generate_path_instance(8, WeightModel::gaussian(30.0), 3);
  CHECK(brute_force_path(inst.loglik()) == inst.path());

  for (std::uint64_t s = 0; s < 20; ++s) {
    const WeightedGraph w = noise(3 + static_cast<int>(s % 6), s);
    const HamiltonianCycle c = brute_force_tsp(w);
    const EdgeSubset ce = c.edges();
    double min_on = 1e300;
    for (Index e = 0; e < ce.edges(); ++e)
      if (ce.halves(e) == 2) min_on = std::min(min_on, w[e]);
    CHECK(brute_force_path(w).weight(w) >= c.weight(w) - min_on - 1e-12);
  }
  CHECK_THROWS_AS(brute_force_path(noise(10, 1)), std::length_error);
}

TEST_CASE("n = 3") {
  Eigen::VectorXd v(3);
  v << 1.0, 5.0, 2.0;  // 01, 02, 12
  const WeightedGraph w(3, v);
  const auto p = cycle_to_path(w, make_cycle_estimator("tsp"), 100.0, 1);
  // Best two-edge path drops the lightest edge 01.
  CHECK(p.estimate.order() == std::vector<Vertex>{0, 2, 1});
  const auto c = path_to_cycle(w, make_path_estimator("path-bf"), -100.0, 1);
  CHECK(c.estimate.order() == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("dominant planted structures are recovered") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const WeightModel m = WeightModel::gaussian(20.0);
    const PlantedInstance path = generate_path_instance(7, m, s);
    CHECK(cycle_to_path(path.loglik(), make_cycle_estimator("tsp"), m, s).estimate == path.path());
    const PlantedInstance cyc = generate_cycle_instance(7, m, s);
    CHECK(path_to_cycle(cyc.loglik(), make_path_estimator("path-bf"), m, s).estimate == cyc.cycle());
  }
}

TEST_CASE("with a dominant shared weight the reduction is the path MLE") {
  int checked = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const int n = 3 + static_cast<int>(s % 5);
    const WeightedGraph w = noise(n, derive_seed(40, s));
    if (optimal_path_count(w) != 1) continue;
    ++checked;
    const auto r = cycle_to_path(w, make_cycle_estimator("tsp"), dominant(w), s);
    CHECK(r.estimate == brute_force_path(w));
    CHECK(r.inner_calls == n * (n - 1) / 2);
  }
  CHECK(checked >= 95);
}

TEST_CASE("path_to_cycle keeps the best closed path") {
  // Oracle: best path in each modified graph, closed only when its endpoints
  // are the modified edge, then the heaviest closure in g.
  int tsp_hits = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const int n = 3 + static_cast<int>(s % 5);
    const WeightedGraph w = noise(n, derive_seed(41, s));
    const double avoid = -dominant(w);
    std::optional<HamiltonianCycle> best;
    for (Index e = 0; e < w.edges(); ++e) {
      const auto [i, j] = w.indexer().decode(e);
      const HamiltonianPath p = brute_force_path(w.with_weight(e, avoid));
      const auto [a, b] = p.endpoints();
      if (!((a == i && b == j) || (a == j && b == i))) continue;
      const HamiltonianCycle c(p.order());
      if (!best || c.weight(w) > best->weight(w)) best = c;
    }
    if (!best) {
      CHECK_THROWS_AS(path_to_cycle(w, make_path_estimator("path-bf"), avoid, s), EstimatorFailure);
      continue;
    }
    const auto r = path_to_cycle(w, make_path_estimator("path-bf"), avoid, s);
    CHECK(r.estimate == *best);
    tsp_hits += r.estimate == brute_force_tsp(w);
  }
  MESSAGE("path_to_cycle equals the cycle MLE on " << tsp_hits << "/50");
}

TEST_CASE("model-drawn shared weight") {
  // A draw from P in log-likelihood units need not dominate, so agreement
  // with the path MLE is high but not guaranteed.
  int agree = 0, failed = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const int n = 3 + static_cast<int>(s % 5);
    const WeightModel m = WeightModel::gaussian(2.0);
    const PlantedInstance inst = generate_path_instance(n, m, derive_seed(42, s));
    const WeightedGraph w = inst.loglik();
    try {
      agree += cycle_to_path(w, make_cycle_estimator("tsp"), m, s).estimate == brute_force_path(w);
    } catch (const EstimatorFailure&) {
      ++failed;
    }
  }
  MESSAGE("agreement with the path MLE: " << agree << "/100, no candidate: " << failed);
  CHECK(agree >= 90);
}

TEST_CASE("inner calls, shared weight and seeding") {
  const int n = 7;
  const WeightModel m = WeightModel::gaussian(1.5);
  const PlantedInstance inst = generate_path_instance(n, m, 5);
  const WeightedGraph g = inst.loglik();

  std::mutex mu;
  std::atomic<int> calls{0};
  std::set<double> replaced;
  std::set<std::uint64_t> seeds;
  const CycleEstimator tsp = make_cycle_estimator("tsp");
  const CycleEstimator spy{"spy", [&](const WeightedGraph& ge, std::uint64_t seed) {
                             ++calls;
                             std::lock_guard lock(mu);
                             int diffs = 0;
                             for (Index e = 0; e < g.edges(); ++e)
                               if (ge[e] != g[e]) {
                                 ++diffs;
                                 replaced.insert(ge[e]);
                               }
                             CHECK(diffs <= 1);
                             seeds.insert(seed);
                             return tsp.run(ge, seed);
                           }};
  const auto r = cycle_to_path(g, spy, m, 11);
  CHECK(calls == n * (n - 1) / 2);
  CHECK(r.inner_calls == n * (n - 1) / 2);
  REQUIRE(replaced.size() == 1);
  CHECK(*replaced.begin() == r.replacement);
  CHECK(seeds.size() == static_cast<std::size_t>(n * (n - 1) / 2));

  CounterRng rng(derive_seed(11, 5));
  CHECK(r.replacement == m.llr(draw_observation(m, Side::P, rng)));
  const auto again = cycle_to_path(g, tsp, m, 11);
  CHECK(again.estimate == r.estimate);
  CHECK(again.replacement == r.replacement);
  CHECK(cycle_to_path(g, tsp, m, 12).replacement != r.replacement);

  const auto q = path_to_cycle(g, make_path_estimator("path-bf"), m, 11);
  CounterRng qrng(derive_seed(11, 5));
  CHECK(q.replacement == m.llr(draw_observation(m, Side::Q, qrng)));
  CHECK(q.inner_calls == n * (n - 1) / 2);
}

TEST_CASE("workers do not change the result") {
  const WeightModel m = WeightModel::gaussian(2.0);
  const PlantedInstance inst = generate_path_instance(20, m, 9);
  const WeightedGraph w = inst.loglik();
  const auto one = cycle_to_path(w, make_cycle_estimator("f2f"), m, 3, 1);
  const auto four = cycle_to_path(w, make_cycle_estimator("f2f"), m, 3, 4);
  CHECK(one.estimate == four.estimate);
  CHECK(one.candidates == four.candidates);
}

TEST_CASE("no candidate is an estimator failure") {
  const CycleEstimator none{"none", [](const WeightedGraph&, std::uint64_t) { return std::optional<HamiltonianCycle>{}; }};
  CHECK_THROWS_AS(cycle_to_path(noise(5, 1), none, 1.0, 1), EstimatorFailure);
  const PathEstimator nope{"none", [](const WeightedGraph&, std::uint64_t) { return std::optional<HamiltonianPath>{}; }};
  CHECK_THROWS_AS(path_to_cycle(noise(5, 1), nope, 1.0, 1), EstimatorFailure);
  CHECK_THROWS(make_cycle_estimator("bogus"));
  CHECK_THROWS(make_path_estimator("bogus"));
}

TEST_CASE("LP-backed reduction matches the path MLE on small instances") {
  int same = 0, total = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    const int n = 5 + static_cast<int>(s % 4);
    const WeightModel m = WeightModel::gaussian(std::sqrt(6.0 * std::log(n)));
    const PlantedInstance inst = generate_path_instance(n, m, derive_seed(43, s));
    const WeightedGraph w = inst.loglik();
    ++total;
    try {
      same += cycle_to_path(w, make_cycle_estimator("f2f"), m, s).estimate == brute_force_path(w);
    } catch (const EstimatorFailure&) {
    }
  }
  MESSAGE("f2f reduction equals brute-force path MLE on " << same << "/" << total);
  CHECK(same >= total * 9 / 10);
}

TEST_CASE("LP-backed reductions at n = 50") {
  const int n = 50;
  const WeightModel m = WeightModel::gaussian(std::sqrt(6.0 * std::log(n)));
  int path_ok = 0, cycle_agree = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const PlantedInstance p = generate_path_instance(n, m, derive_seed(44, s));
    try {
      path_ok += cycle_to_path(p.loglik(), make_cycle_estimator("f2f"), m, s).estimate == p.path();
    } catch (const EstimatorFailure&) {
    }
    const PlantedInstance c = generate_cycle_instance(n, m, derive_seed(45, s));
    const WeightedGraph w = c.loglik();
    const LpSolution direct = solve_f2f(w);
    try {
      cycle_agree += path_to_cycle(w, make_path_estimator("f2f-path"), m, s).estimate.edges() == direct.x;
    } catch (const EstimatorFailure&) {
    }
  }
  MESSAGE("cycle_to_path recovery " << path_ok << "/50, path_to_cycle agrees with F2F " << cycle_agree << "/50");
  CHECK(path_ok >= 45);
  CHECK(cycle_agree >= 45);
}
