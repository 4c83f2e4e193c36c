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

#include "hhc/model.hpp"

#include <string>
#include <vector>

// Threshold calculus for the planted cycle model. Everything is in nats.
//
// X and Y denote the log-likelihood ratio log dP/dQ of one edge weight drawn
// from P and from Q respectively; psi_P and psi_Q are their log-MGFs.
namespace hhc {

// Renyi divergence of order 1/2 scaled by 2: -2 log \int sqrt(dP dQ).
// Ignores the erasure probability; see alpha_erasure.
double alpha(const WeightModel& m);

// -(3/2) log \int dP^{2/3} dQ^{1/3}. Ignores the erasure probability.
double beta(const WeightModel& m);

// -2 log(eta + (1 - eta) exp(-alpha/2)), the order-1/2 divergence once every
// edge is erased independently with probability eta.
double alpha_erasure(const WeightModel& m);

// Same construction for beta: -(3/2) log(eta + (1 - eta) exp(-2 beta / 3)).
double beta_erasure(const WeightModel& m);

// Log-MGF of the LLR under P or Q; psi_Q(t) = psi_P(t - 1).
// Throws std::domain_error for non-finite theta or a divergent MGF.
double psi(const WeightModel& m, Side side, double theta);
double psi_derivative(const WeightModel& m, Side side, double theta);

// F(x) = sup_{t >= 0} { t x - psi_P(-t) - psi_Q(t) }, the Chernoff exponent
// of Y - X. Returns +inf when x exceeds the range of Y - X.
double rate_function(const WeightModel& m, double x);

// Chernoff exponents of the two tails:
//   E_P(tau) = sup_{t>=0} { -t tau - psi_P(-t) }   (P(X <= tau))
//   E_Q(tau) = sup_{t>=0} {  t tau - psi_Q(t) }    (P(Y >= tau))
double legendre_p(const WeightModel& m, double tau);
double legendre_q(const WeightModel& m, double tau);

// Stationary threshold psi_P'(-1/2) = psi_Q'(1/2).
double tau_star(const WeightModel& m);

// sup_tau { log P(X <= tau) + log P(Y >= tau) } + log n, maximized over a
// 512-point grid spanning tau* +- 6 standard deviations of Y - X (plus the
// lattice atoms of discrete families inside that span). Erasure atoms at 0
// are included when the model has eta > 0.
double converse_gap(const WeightModel& m, int n);

struct SufficientCondition {
  std::string algorithm;
  double margin = 0.0;  // nats; success predicted iff margin > 0
  bool predicted = false;
};

// Margins of the efficient-algorithm guarantees at size n. Uses the
// erasure-adjusted divergences, which reduce to alpha and beta when eta = 0.
std::vector<SufficientCondition> sufficient_conditions(const WeightModel& m, int n);

struct DivergenceReport {
  double alpha = 0.0;
  double beta = 0.0;
  double alpha_prime = 0.0;
  double tau_star = 0.0;
  double converse_gap = 0.0;
};

DivergenceReport divergence_report(const WeightModel& m, int n);

// Maximizer of a unimodal function on [lo, hi] by golden-section search.
template <typename Fn>
double golden_section_argmax(Fn&& f, double lo, double hi, double tol = 1e-10) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace hhc
