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

#include <string>
#include <string_view>

namespace hhc {

enum class Family { Gaussian, Poisson, Bernoulli };

// Which of the two distributions an edge weight is drawn from.
enum class Side { P, Q };

// Pair of weight distributions (P on the hidden structure, Q elsewhere):
//   Gaussian:  P = N(mu, 1),      Q = N(0, 1)
//   Poisson:   P = Pois(lambda),  Q = Pois(mu)
//   Bernoulli: P = Bern(p),       Q = Bern(q)
// plus an optional erasure probability applied to every edge.
struct WeightModel {
  Family family = Family::Gaussian;
  double p_param = 1.0;  // mu | lambda | p
  double q_param = 0.0;  // unused | mu | q
  double erasure = 0.0;

  static WeightModel gaussian(double mu, double eta = 0.0);
  static WeightModel poisson(double lambda, double mu, double eta = 0.0);
  static WeightModel bernoulli(double p, double q, double eta = 0.0);

  // Parses "gaussian:mu=2", "gaussian:mu2=30", "poisson:lambda=4,mu=1",
  // "bernoulli:p=0.9,q=0.1", each optionally followed by ",eta=0.2".
  static WeightModel parse(std::string_view spec);
  std::string to_string() const;

  // Returns a copy with one named parameter replaced (mu, mu2, lambda, p, q, eta).
  WeightModel with_parameter(std::string_view name, double value) const;

  // Throws std::invalid_argument when the parameters violate the family's
  // constraints.
  void validate() const;

  // True when P and Q coincide (no signal).
  bool degenerate() const;

  // log dP/dQ at a raw observation. Throws std::invalid_argument outside
  // the support of P and Q.
  double llr(double observation) const;

  // For Poisson, the affine extension k log(lambda/mu) - (lambda - mu) to
  // real-valued scores; identical to llr() for the other families.
  double llr_relaxed(double score) const;

  bool operator==(const WeightModel&) const = default;
};

// w_e = log dP/dQ(A_e); erased entries map to 0.
WeightedGraph loglik_transform(const WeightedGraph& raw, const WeightModel& m);

}  // namespace hhc
