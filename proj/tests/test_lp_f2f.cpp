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

#include <array>
#include <cmath>
#include <map>

using namespace hhc;

namespace {

// The fractional vertex drawn for n = 6: half edges on triangles {0,1,2} and
// {3,4,5}, unit edges 03, 14, 25.
EdgeSubset linked_triangles() {
  EdgeSubset x(6);
  for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}) x.set(i, j, 1);
  for (auto [i, j] : {std::pair{0, 3}, {1, 4}, {2, 5}}) x.set(i, j, 2);
  return x;
}

WeightedGraph planted_weights(const HamiltonianCycle& c, double on, double off) {
  const int n = c.vertices();
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n * (n - 1) / 2, off);
  const EdgeSubset x = c.edges();
  for (Index e = 0; e < x.edges(); ++e)
    if (x.halves(e)) w[e] = on;
  return WeightedGraph(n, w);
}

}  // namespace

TEST_CASE("n = 3 has a single feasible point") {
  const WeightedGraph w(3, Eigen::Vector3d(-1.0, 4.0, 0.5));
  const LpSolution s = solve_f2f(w);
  for (Index e = 0; e < 3; ++e) CHECK(s.x.halves(e) == 2);
  CHECK(s.objective == doctest::Approx(3.5));
  CHECK(s.vertex_class == VertexClass::HamiltonianCycle);
}

TEST_CASE("dominant planted weights return the planted cycle") {
  const HamiltonianCycle c({0, 3, 1, 4, 2});
  const LpSolution s = solve_f2f(planted_weights(c, 10.0, -10.0));
  CHECK(s.x == c.edges());
  CHECK(s.objective == doctest::Approx(50.0));
  CHECK(s.vertex_class == VertexClass::HamiltonianCycle);
}

TEST_CASE("weights aligned with the drawn fractional vertex make it the optimum") {
  const EdgeSubset target = linked_triangles();
  Eigen::VectorXd w(15);
  for (Index e = 0; e < 15; ++e) w[e] = target.halves(e) == 2 ? 3.0 : target.halves(e) == 1 ? 1.0 : -5.0;
  const LpSolution s = solve_f2f(WeightedGraph(6, w));
  CHECK(s.x == target);
  CHECK(s.vertex_class == VertexClass::HalfIntegral);
  CHECK(s.x.support_size() == 9);
  REQUIRE(s.components.size() == 1);
  CHECK(s.components[0].cycles.size() == 2);
  CHECK(s.components[0].unit_paths == 3);
  CHECK(s.components[0].half_edges == 6);
}

TEST_CASE("classify_support on two disjoint triangles") {
  EdgeSubset x(6);
  for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}) x.set(i, j, 2);
  const SupportReport r = classify_support(x);
  CHECK(r.vertex_class == VertexClass::DisjointCycles2Factor);
  CHECK(r.components.size() == 2);
}

TEST_CASE("classify_support rejects a degree violation") {
  EdgeSubset x(4);
  x.set(0, 1, 2);
  CHECK_THROWS_AS(classify_support(x), std::invalid_argument);
}

TEST_CASE("classify_support flags a bowtie of half edges as unknown") {
  // Vertex 0 carries four half edges, outside the odd-cycles-with-paths shape.
  EdgeSubset x(5);
  for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}}) x.set(i, j, 1);
  x.set(1, 3, 2);
  x.set(2, 4, 2);
  CHECK(classify_support(x).vertex_class == VertexClass::Unknown);
}

TEST_CASE("relaxation chain and TSP agreement against brute force") {
  for (int n : {5, 6, 7}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const PlantedInstance inst = generate_cycle_instance(n, WeightModel::gaussian(1.0), seed);
      const WeightedGraph w = inst.loglik();
      const LpSolution lp = solve_f2f(w);
      const EdgeSubset two = brute_force_2factor(w);
      const HamiltonianCycle tsp = brute_force_tsp(w);
      CHECK(lp.objective >= two.dot(w.weights()) - 1e-9);
      CHECK(two.dot(w.weights()) >= tsp.weight(w) - 1e-9);
      CHECK(std::abs(lp.objective - lp.x.dot(w.weights())) <= 1e-9 * (1.0 + std::abs(lp.objective)));
      if (lp.vertex_class == VertexClass::HamiltonianCycle) CHECK(lp.x == tsp.edges());
      if (lp.x.is_integral()) CHECK(lp.objective == doctest::Approx(two.dot(w.weights())));
    }
  }
}

TEST_CASE("LP duals satisfy complementary slackness") {
  const PlantedInstance inst = generate_cycle_instance(30, WeightModel::gaussian(2.0), 11);
  const WeightedGraph w = inst.loglik();
  const LpSolution s = solve_f2f(w);
  CHECK(2.0 * s.u.sum() + s.h.sum() == doctest::Approx(s.objective).epsilon(1e-9));
  for (Index e = 0; e < w.edges(); ++e) {
    if (s.x.halves(e) == 0) CHECK(s.h[e] <= 1e-7);
    if (s.x.halves(e) == 2) CHECK(s.b[e] <= 1e-7);
    if (s.x.halves(e) == 1) CHECK(s.b[e] + s.h[e] <= 1e-7);
  }
}

TEST_CASE("half-integral snapping over families and sizes") {
  const std::array models = {WeightModel::gaussian(1.5), WeightModel::poisson(3.0, 1.0),
                             WeightModel::bernoulli(0.7, 0.3)};
  for (const auto& m : models)
    for (int n : {20, 50})
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const PlantedInstance inst = generate_cycle_instance(n, m, seed);
        CHECK_NOTHROW(solve_f2f(inst.loglik()));
      }
}

TEST_CASE("round_halves") {
  SUBCASE("integral input is unchanged") {
    const EdgeSubset x = HamiltonianCycle({0, 1, 2, 3, 4}).edges();
    CHECK(round_halves(x, 7) == x);
  }
  SUBCASE("deterministic for a seed") {
    CHECK(round_halves(linked_triangles(), 3) == round_halves(linked_triangles(), 3));
  }
  SUBCASE("the six half edges of the drawn vertex are fair and independent") {
    const EdgeSubset x = linked_triangles();
    std::vector<Index> halves;
    for (Index e = 0; e < x.edges(); ++e)
      if (x.halves(e) == 1) halves.push_back(e);
    REQUIRE(halves.size() == 6);
    std::map<int, int> counts;
    for (std::uint64_t seed = 0; seed < 6400; ++seed) {
      const EdgeSubset r = round_halves(x, seed);
      int code = 0;
      for (std::size_t k = 0; k < halves.size(); ++k)
        if (r.halves(halves[k]) == 2) code |= 1 << k;
      ++counts[code];
    }
    CHECK(counts.size() == 64);
    double chi2 = 0.0;
    for (const auto& [code, c] : counts) chi2 += (c - 100.0) * (c - 100.0) / 100.0;
    // 63 degrees of freedom; the 0.999 quantile is about 103.4.
    CHECK(chi2 < 103.4);
  }
}

TEST_CASE("certify") {
  const HamiltonianCycle c({0, 1, 2, 3, 4, 5});
  SUBCASE("dominant weights validate with equality on the cycle") {
    const CertificateResult r = certify(planted_weights(c, 10.0, -10.0), c);
    CHECK(r.valid);
    for (int v = 0; v < 6; ++v) CHECK(r.u[v] == 5.0);
  }
  SUBCASE("one heavy off edge is reported") {
    WeightedGraph w = planted_weights(c, 10.0, -10.0);
    const Index bad = edge_index(0, 3, 6);
    w = w.with_weight(bad, 11.0);
    const CertificateResult r = certify(w, c);
    CHECK_FALSE(r.valid);
    REQUIRE(r.violating_edges.size() == 1);
    CHECK(r.violating_edges[0] == bad);
  }
}

TEST_CASE("brute force oracles") {
  SUBCASE("n = 3") {
    const WeightedGraph w(3, Eigen::Vector3d(1.0, 2.0, 3.0));
    CHECK(brute_force_tsp(w) == HamiltonianCycle({0, 1, 2}));
    CHECK(brute_force_2factor(w) == HamiltonianCycle({0, 1, 2}).edges());
  }
  SUBCASE("n = 4 has three 2-factors, all Hamiltonian") {
    const HamiltonianCycle c({0, 2, 1, 3});
    const WeightedGraph w = planted_weights(c, 1.0, 0.0);
    CHECK(brute_force_2factor(w) == c.edges());
    CHECK(brute_force_tsp(w) == c);
  }
  SUBCASE("two heavy triangles beat any Hamiltonian cycle in the 2-factor search") {
    EdgeSubset tri(6);
    for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}) tri.set(i, j, 2);
    Eigen::VectorXd w(15);
    for (Index e = 0; e < 15; ++e) w[e] = tri.halves(e) ? 5.0 : 0.0;
    CHECK(brute_force_2factor(WeightedGraph(6, w)) == tri);
  }
  SUBCASE("size limits") {
    CHECK_THROWS_AS(brute_force_tsp(WeightedGraph::zeros(11)), std::length_error);
    CHECK_THROWS_AS(brute_force_2factor(WeightedGraph::zeros(11)), std::length_error);
  }
}
