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
#include "hhc/bp.hpp"
#include "hhc/generator.hpp"
#include "hhc/greedy.hpp"
#include "hhc/lp_f2f.hpp"
#include "hhc/rng.hpp"

#include <cmath>

using namespace hhc;

namespace {

WeightedGraph noise(int n, std::uint64_t seed) {
  CounterRng rng(seed);
  Eigen::VectorXd w(static_cast<Index>(n) * (n - 1) / 2);
  for (Index e = 0; e < w.size(); ++e) w[e] = rng.normal();
  return WeightedGraph(n, w);
}

// Reference step written directly from the recurrence, with an explicit sort.
Eigen::MatrixXd reference_step(const Eigen::MatrixXd& prev, const WeightedGraph& w) {
  const int n = w.vertices();
  Eigen::MatrixXd next = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<double> in;
      for (int l = 0; l < n; ++l)
        if (l != i && l != j) in.push_back(prev(l, i));
      std::sort(in.rbegin(), in.rend());
      const double second = in.size() >= 2 ? in[1] : in[0];
      next(i, j) = w(i, j) - second;
    }
  return next;
}

}  // namespace

TEST_CASE("init broadcasts the weights") {
  const WeightedGraph w = noise(6, 1);
  const MessageState s = bp_init(w);
  CHECK(s.t == 0);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j) CHECK(s.m(i, j) == w(i, j));
  CHECK(s.m.isApprox(s.m.transpose()));
  const MessageState s3 = bp_init(noise(3, 2));
  int directed = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) directed += i != j;
  CHECK(directed == 6);
  CHECK(s3.m.rows() == 3);
}

TEST_CASE("n = 3 step by hand") {
  // w01 = 1, w02 = 2, w12 = 5. With one candidate l the update is w_ij - w_li.
  Eigen::VectorXd v(3);
  v << 1.0, 2.0, 5.0;
  const WeightedGraph w(3, v);
  const MessageState s = bp_step(bp_init(w), w);
  CHECK(s.t == 1);
  CHECK(s.m(0, 1) == 1.0 - 2.0);  // l = 2: w_20
  CHECK(s.m(1, 0) == 1.0 - 5.0);  // l = 2: w_21
  CHECK(s.m(0, 2) == 2.0 - 1.0);
  CHECK(s.m(2, 0) == 2.0 - 5.0);
  CHECK(s.m(1, 2) == 5.0 - 1.0);
  CHECK(s.m(2, 1) == 5.0 - 2.0);
  for (auto rule : {DecisionRule::Received, DecisionRule::Sent}) {
    const EdgeSubset x = bp_decide(s, rule);
    CHECK(x.support_size() == 3);
  }
}

TEST_CASE("step matches the reference recurrence") {
  for (int n : {4, 5, 9, 17}) {
    const WeightedGraph w = noise(n, 10 + n);
    MessageState s = bp_init(w);
    Eigen::MatrixXd ref = s.m;
    for (int t = 0; t < 6; ++t) {
      s = bp_step(s, w);
      ref = reference_step(ref, w);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) CHECK(s.m(i, j) == doctest::Approx(ref(i, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("one step with the sent rule is thresholding") {
  int received_differs = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const WeightedGraph w = noise(4 + static_cast<int>(seed % 30), seed);
    CHECK(bp_run(w, 1, 0, DecisionRule::Sent) == simple_thresholding(w));
    received_differs += !(bp_run(w, 1, 0, DecisionRule::Received) == simple_thresholding(w));
  }
  // Ranking received messages after one step is a different rule.
  MESSAGE("received rule differs from thresholding on " << received_differs << "/100");
  CHECK(received_differs > 0);
}

TEST_CASE("planted dominant weights are recovered at t = 1") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PlantedInstance inst = generate_cycle_instance(25, WeightModel::gaussian(40.0), seed);
    const WeightedGraph w = inst.loglik();
    CHECK(bp_run(w, 1, 0) == inst.truth_edges());
    CHECK(bp_run(w, 1, 0, DecisionRule::Sent) == inst.truth_edges());
  }
}

TEST_CASE("messages are equivariant under relabeling") {
  const WeightedGraph w = noise(8, 3);
  const std::vector<Vertex> perm{4, 0, 7, 2, 6, 1, 3, 5};
  const WeightedGraph r = w.relabeled(perm);
  MessageState a = bp_init(w), b = bp_init(r);
  for (int t = 0; t < 5; ++t) {
    a = bp_step(a, w);
    b = bp_step(b, r);
  }
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (i != j) CHECK(b.m(perm[i], perm[j]) == doctest::Approx(a.m(i, j)).epsilon(1e-12));
}

TEST_CASE("one-step decisions ignore a global shift") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const WeightedGraph w = noise(12, 100 + seed);
    const WeightedGraph shifted(12, (w.weights().array() + 3.7).matrix());
    for (auto rule : {DecisionRule::Received, DecisionRule::Sent})
      CHECK(bp_run(w, 1, 0, rule) == bp_run(shifted, 1, 0, rule));
  }
}

TEST_CASE("early stopping") {
  const PlantedInstance inst = generate_cycle_instance(40, WeightModel::gaussian(std::sqrt(6 * std::log(40.0))), 8);
  const WeightedGraph w = inst.loglik();
  const BpResult full = bp_solve(w, {300, 0, DecisionRule::Received});
  CHECK(full.iterations == 300);
  CHECK_FALSE(full.stopped_early);
  const BpResult early = bp_solve(w, {10000, 50, DecisionRule::Received});
  CHECK(early.stopped_early);
  CHECK(early.iterations < 10000);
  CHECK(early.x == full.x);
  CHECK(early.x == bp_run(w, 10000, 0));
}

TEST_CASE("deterministic") {
  const WeightedGraph w = noise(30, 5);
  CHECK(bp_run(w, 200) == bp_run(w, 200));
}

TEST_CASE("agrees with the LP whenever the LP is integral") {
  const int n = 100;
  int integral = 0, agree = 0, total_agree = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const PlantedInstance inst =
        generate_cycle_instance(n, WeightModel::gaussian(std::sqrt(5 * std::log(n))), derive_seed(77, seed));
    const WeightedGraph w = inst.loglik();
    const LpSolution lp = solve_f2f(w);
    const EdgeSubset x = bp_run(w, 5000);
    total_agree += x == lp.x;
    if (lp.x.is_integral()) {
      ++integral;
      agree += x == lp.x;
    }
  }
  MESSAGE("integral " << integral << ", agree " << agree << ", unconditional " << total_agree);
  CHECK(agree == integral);
}

TEST_CASE("iteration budget") {
  CHECK(bp_iteration_budget(100, 50.0, 4.0) == 2500);
  CHECK(bp_iteration_budget(10, 1.0, 3.0) == 7);
  CHECK_THROWS(bp_iteration_budget(10, 1.0, 0.0));
}
