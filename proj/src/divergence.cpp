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

#include "hhc/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hhc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_sum_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// The two atoms of the Bernoulli LLR: value log(p/q) with P-mass p, and
// log((1-p)/(1-q)) with P-mass 1-p.
struct BernoulliAtoms {
  double l1, l0, p1, p0;
};

BernoulliAtoms bernoulli_atoms(const WeightModel& m) {
  const double p = m.p_param, q = m.q_param;
  return {std::log(p / q), std::log((1 - p) / (1 - q)), p, 1 - p};
}

double psi_p(const WeightModel& m, double t) {
  if (!std::isfinite(t)) throw std::domain_error("psi: theta must be finite");
  double v = 0.0;
  switch (m.family) {
    case Family::Gaussian:
      v = 0.5 * t * (1.0 + t) * m.p_param * m.p_param;
      break;
    case Family::Poisson: {
      const double lambda = m.p_param, mu = m.q_param;
      v = lambda * std::expm1(t * std::log(lambda / mu)) - t * (lambda - mu);
      break;
    }
    case Family::Bernoulli: {
      const auto a = bernoulli_atoms(m);
      v = log_sum_exp(std::log(a.p1) + t * a.l1, std::log(a.p0) + t * a.l0);
      break;
    }
  }
  if (!std::isfinite(v)) throw std::domain_error("psi: moment generating function diverges");
  return v;
}

double psi_p_derivative(const WeightModel& m, double t) {
  if (!std::isfinite(t)) throw std::domain_error("psi': theta must be finite");
  switch (m.family) {
    case Family::Gaussian:
      return 0.5 * (1.0 + 2.0 * t) * m.p_param * m.p_param;
    case Family::Poisson: {
      const double lambda = m.p_param, mu = m.q_param, lr = std::log(lambda / mu);
      return lambda * std::exp(t * lr) * lr - (lambda - mu);
    }
    case Family::Bernoulli: {
      const auto a = bernoulli_atoms(m);
      const double e1 = std::log(a.p1) + t * a.l1, e0 = std::log(a.p0) + t * a.l0;
      const double hi = std::max(e1, e0);
      const double w1 = std::exp(e1 - hi), w0 = std::exp(e0 - hi);
      return (w1 * a.l1 + w0 * a.l0) / (w1 + w0);
    }
  }
  return 0.0;
}

// sup over t >= 0 of a concave function g with derivative dg. The bracket is
// grown by doubling until the slope turns negative; a slope that stays
// positive means the supremum is +inf.
template <typename G, typename DG>
double concave_sup(G&& g, DG&& dg) {
  if (dg(0.0) <= 0.0) return g(0.0);
  double hi = 1.0;
  while (dg(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e6) return kInf;
  }
  const double t = golden_section_argmax(g, 0.0, hi, 1e-10);
  return std::max(g(t), g(0.0));
}

// Means and variances of X and Y.
struct Moments {
  double mean_x, var_x, mean_y, var_y;
};

Moments llr_moments(const WeightModel& m) {
  Moments mo{};
  switch (m.family) {
    case Family::Gaussian: {
      const double mu2 = m.p_param * m.p_param;
      mo = {0.5 * mu2, mu2, -0.5 * mu2, mu2};
      break;
    }
    case Family::Poisson: {
      const double lambda = m.p_param, mu = m.q_param, lr = std::log(lambda / mu);
      mo = {lambda * lr - (lambda - mu), lambda * lr * lr, mu * lr - (lambda - mu), mu * lr * lr};
      break;
    }
    case Family::Bernoulli: {
      const auto a = bernoulli_atoms(m);
      const double q = m.q_param, d = a.l1 - a.l0;
      mo = {a.p1 * a.l1 + a.p0 * a.l0, a.p1 * a.p0 * d * d, q * a.l1 + (1 - q) * a.l0,
            q * (1 - q) * d * d};
      break;
    }
  }
  const double eta = m.erasure;
  if (eta > 0.0) {
    // Mixture with an atom at 0.
    const auto mix = [eta](double mean, double var) {
      const double m1 = (1 - eta) * mean;
      const double m2 = (1 - eta) * (var + mean * mean);
      return std::pair{m1, m2 - m1 * m1};
    };
    std::tie(mo.mean_x, mo.var_x) = mix(mo.mean_x, mo.var_x);
    std::tie(mo.mean_y, mo.var_y) = mix(mo.mean_y, mo.var_y);
  }
  return mo;
}

double log_normal_cdf(double z) { return std::log(0.5 * std::erfc(-z / std::sqrt(2.0))); }

double log_poisson_pmf(long k, double rate) {
  return k * std::log(rate) - rate - std::lgamma(static_cast<double>(k) + 1.0);
}

// log P(Pois(rate) <= k) by summing downward from k.
double log_poisson_cdf(long k, double rate) {
  if (k < 0) return -kInf;
  if (k > rate + 40.0 * std::sqrt(rate) + 100.0) return 0.0;
  double acc = -kInf;
  for (long i = k; i >= 0; --i) {
    const double t = log_poisson_pmf(i, rate);
    acc = log_sum_exp(acc, t);
    if (i < rate && t < acc - 40.0) break;
  }
  return acc;
}

// log P(Pois(rate) >= k) by summing upward from k.
double log_poisson_sf(long k, double rate) {
  if (k <= 0 || k < rate - 40.0 * std::sqrt(rate) - 100.0) return 0.0;
  double acc = -kInf;
  for (long i = k;; ++i) {
    const double t = log_poisson_pmf(i, rate);
    acc = log_sum_exp(acc, t);
    if (i > rate && t < acc - 40.0) break;
  }
  return acc;
}

// log P(X <= tau) and log P(Y >= tau) without erasures.
double log_cdf_x(const WeightModel& m, double tau) {
  switch (m.family) {
    case Family::Gaussian: {
      const double mu = m.p_param;
      return log_normal_cdf((tau - 0.5 * mu * mu) / mu);
    }
    case Family::Poisson: {
      const double lambda = m.p_param, mu = m.q_param, lr = std::log(lambda / mu);
      const double k = std::floor((tau + (lambda - mu)) / lr + 1e-9);
      return log_poisson_cdf(static_cast<long>(std::min(k, 1e9)), lambda);
    }
    case Family::Bernoulli: {
      const auto a = bernoulli_atoms(m);
      if (tau >= a.l1) return 0.0;
      if (tau >= a.l0) return std::log(a.p0);
      return -kInf;
    }
  }
  return -kInf;
}

double log_sf_y(const WeightModel& m, double tau) {
  switch (m.family) {
    case Family::Gaussian: {
      const double mu = m.p_param;
      return log_normal_cdf(-(tau + 0.5 * mu * mu) / mu);
    }
    case Family::Poisson: {
      const double lambda = m.p_param, mu = m.q_param, lr = std::log(lambda / mu);
      const double k = std::ceil((tau + (lambda - mu)) / lr - 1e-9);
      return log_poisson_sf(static_cast<long>(std::max(k, -1.0)), mu);
    }
    case Family::Bernoulli: {
      const auto a = bernoulli_atoms(m);
      if (tau <= a.l0) return 0.0;
      if (tau <= a.l1) return std::log(m.q_param);
      return -kInf;
    }
  }
  return -kInf;
}

double with_erasure_atom(double log_p, double eta, bool atom_included) {
  if (eta == 0.0) return log_p;
  return log_sum_exp(std::log1p(-eta) + log_p, atom_included ? std::log(eta) : -kInf);
}

}  // namespace

double alpha(const WeightModel& m) {
  switch (m.family) {
    case Family::Gaussian:
      return 0.25 * m.p_param * m.p_param;
    case Family::Poisson: {
      const double d = std::sqrt(m.p_param) - std::sqrt(m.q_param);
      return d * d;
    }
    case Family::Bernoulli: {
      const double p = m.p_param, q = m.q_param;
      return -2.0 * std::log(std::sqrt(p * q) + std::sqrt((1 - p) * (1 - q)));
    }
  }
  return 0.0;
}

double beta(const WeightModel& m) {
  switch (m.family) {
    case Family::Gaussian:
      return m.p_param * m.p_param / 6.0;
    case Family::Poisson: {
      const double lambda = m.p_param, mu = m.q_param;
      // \int dP^{2/3} dQ^{1/3} = exp(lambda^{2/3} mu^{1/3} - (2 lambda + mu) / 3)
      return lambda + 0.5 * mu - 1.5 * std::cbrt(lambda * lambda * mu);
    }
    case Family::Bernoulli: {
      const double p = m.p_param, q = m.q_param;
      return -1.5 * std::log(std::cbrt(p * p * q) + std::cbrt((1 - p) * (1 - p) * (1 - q)));
    }
  }
  return 0.0;
}

double alpha_erasure(const WeightModel& m) {
  const double eta = m.erasure;
  return -2.0 * std::log(eta + (1.0 - eta) * std::exp(-0.5 * alpha(m)));
}

double beta_erasure(const WeightModel& m) {
  const double eta = m.erasure;
  return -1.5 * std::log(eta + (1.0 - eta) * std::exp(-2.0 * beta(m) / 3.0));
}

double psi(const WeightModel& m, Side side, double theta) {
  return side == Side::P ? psi_p(m, theta) : psi_p(m, theta - 1.0);
}

double psi_derivative(const WeightModel& m, Side side, double theta) {
  return side == Side::P ? psi_p_derivative(m, theta) : psi_p_derivative(m, theta - 1.0);
}

double rate_function(const WeightModel& m, double x) {
  if (m.family == Family::Gaussian) {
    const double mu2 = m.p_param * m.p_param;
    if (mu2 == 0.0) return x > 0.0 ? kInf : 0.0;
    return x >= -mu2 ? (x + mu2) * (x + mu2) / (4.0 * mu2) : 0.0;
  }
  const auto g = [&](double t) { return t * x - psi_p(m, -t) - psi_p(m, t - 1.0); };
  const auto dg = [&](double t) { return x + psi_p_derivative(m, -t) - psi_p_derivative(m, t - 1.0); };
  return concave_sup(g, dg);
}

double legendre_p(const WeightModel& m, double tau) {
  const auto g = [&](double t) { return -t * tau - psi_p(m, -t); };
  const auto dg = [&](double t) { return -tau + psi_p_derivative(m, -t); };
  return concave_sup(g, dg);
}

double legendre_q(const WeightModel& m, double tau) {
  const auto g = [&](double t) { return t * tau - psi_p(m, t - 1.0); };
  const auto dg = [&](double t) { return tau - psi_p_derivative(m, t - 1.0); };
  return concave_sup(g, dg);
}

double tau_star(const WeightModel& m) { return psi_p_derivative(m, -0.5); }

double converse_gap(const WeightModel& m, int n) {
  if (n < 3) throw std::invalid_argument("converse_gap: n must be >= 3");
  const double log_n = std::log(static_cast<double>(n));
  if (m.degenerate()) return log_n;

  const Moments mo = llr_moments(m);
  const double center = tau_star(m);
  const double spread = 6.0 * std::sqrt(mo.var_x + mo.var_y);
  std::vector<double> taus;
  constexpr int kGrid = 512;
  for (int k = 0; k < kGrid; ++k)
    taus.push_back(center - spread + 2.0 * spread * k / (kGrid - 1));
  // Step-function CDFs attain their extremes at atoms, which a uniform grid
  // misses; add the atoms inside the span.
  if (m.family == Family::Bernoulli) {
    const auto a = bernoulli_atoms(m);
    for (double t : {a.l0, a.l1})
      if (std::abs(t - center) <= spread) taus.push_back(t);
  } else if (m.family == Family::Poisson) {
    const double lambda = m.p_param, mu = m.q_param, lr = std::log(lambda / mu);
    const double k_lo = std::ceil((center - spread + (lambda - mu)) / lr);
    const double k_hi = std::floor((center + spread + (lambda - mu)) / lr);
    for (double k = std::max(k_lo, 0.0); k <= k_hi && taus.size() < 100000; k += 1.0)
      taus.push_back(k * lr - (lambda - mu));
  }
  if (m.erasure > 0.0 && std::abs(center) <= spread) taus.push_back(0.0);

  double best = -kInf;
  for (double tau : taus) {
    const double lx = with_erasure_atom(log_cdf_x(m, tau), m.erasure, tau >= 0.0);
    const double ly = with_erasure_atom(log_sf_y(m, tau), m.erasure, tau <= 0.0);
    best = std::max(best, lx + ly);
  }
  return best + log_n;
}

std::vector<SufficientCondition> sufficient_conditions(const WeightModel& m, int n) {
  if (n < 3) throw std::invalid_argument("sufficient_conditions: n must be >= 3");
  const double log_n = std::log(static_cast<double>(n));
  const double a = alpha_erasure(m), b = beta_erasure(m);
  std::vector<SufficientCondition> rows = {
      {"f2f", a - log_n, false},
      {"bp", a - log_n, false},
      {"greedy_merging", b - log_n, false},
      {"thresholding", a - 2.0 * log_n, false},
      {"nearest_neighbor", a - 2.0 * log_n, false},
  };
  for (auto& r : rows) r.predicted = r.margin > 0.0;
  return rows;
}

DivergenceReport divergence_report(const WeightModel& m, int n) {
  return {alpha(m), beta(m), alpha_erasure(m), tau_star(m), converse_gap(m, n)};
}

}  // namespace hhc
