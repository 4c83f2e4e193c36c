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

#include "hhc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace hhc {

bool VertexCatalog::contains(const EdgeSubset& x) const {
  return std::find(vertices.begin(), vertices.end(), x) != vertices.end();
}

int exact_rank(std::vector<std::vector<long long>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    const auto& piv = rows[rank];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const long long f = rows[r][c];
      long long g = 0;
      for (std::size_t k = 0; k < cols; ++k) {
        rows[r][k] = piv[c] * rows[r][k] - f * piv[k];
        g = std::gcd(g, rows[r][k]);
      }
      if (g > 1)
        for (auto& v : rows[r]) v /= g;
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

namespace {

struct VertexSearch {
  int n;
  EdgeIndexer ix;
  EdgeSubset x;
  std::vector<int> deg;  // in halves
  std::vector<int> remaining;  // undecided incident edges per vertex
  VertexCatalog* out;

  void assign(Index e) {
    if (e == ix.edges()) {
      for (int v = 0; v < n; ++v)
        if (deg[static_cast<std::size_t>(v)] != 4) return;
      if (!extreme()) return;
      out->vertices.push_back(x);
      out->reports.push_back(classify_support(x));
      return;
    }
    const auto [i, j] = ix.decode(e);
    auto& di = deg[static_cast<std::size_t>(i)];
    auto& dj = deg[static_cast<std::size_t>(j)];
    --remaining[static_cast<std::size_t>(i)];
    --remaining[static_cast<std::size_t>(j)];
    for (int h = 0; h <= 2; ++h) {
      if (di + h > 4 || dj + h > 4) break;
      // Each undecided edge adds at most 2 halves.
      if (di + h + 2 * remaining[static_cast<std::size_t>(i)] < 4) continue;
      if (dj + h + 2 * remaining[static_cast<std::size_t>(j)] < 4) continue;
      di += h;
      dj += h;
      x.set_halves(e, h);
      assign(e + 1);
      x.set_halves(e, 0);
      di -= h;
      dj -= h;
    }
    ++remaining[static_cast<std::size_t>(i)];
    ++remaining[static_cast<std::size_t>(j)];
  }

  bool extreme() const {
    std::vector<std::vector<long long>> cols;
    for (Index e = 0; e < ix.edges(); ++e) {
      if (x.halves(e) != 1) continue;
      std::vector<long long> col(static_cast<std::size_t>(n), 0);
      const auto [i, j] = ix.decode(e);
      col[static_cast<std::size_t>(i)] = 1;
      col[static_cast<std::size_t>(j)] = 1;
      cols.push_back(std::move(col));
    }
    return exact_rank(cols) == static_cast<int>(cols.size());
  }
};

double log_poisson(double rate, long k) {
  return k * std::log(rate) - rate - std::lgamma(static_cast<double>(k) + 1.0);
}

// Adaptive Simpson on [a, b].
template <typename Fn>
double simpson(Fn& f, double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename Fn>
double integrate(Fn f, double a, double b, double tol) {
  // Split into panels so the adaptive rule sees the bulk of the mass.
  constexpr int kPanels = 64;
  const double h = (b - a) / kPanels;
  double total = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    const double lo = a + p * h, hi = lo + h, mid = 0.5 * (lo + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    total += simpson(f, lo, hi, flo, fmid, fhi, h / 6.0 * (flo + 4.0 * fmid + fhi), tol / kPanels, 40);
  }
  return total;
}

double continuous_affinity(const WeightModel& m, double a) {
  switch (m.family) {
    case Family::Gaussian: {
      const double mu = m.p_param;
      const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
      auto f = [&](double x) {
        const double lp = -0.5 * (x - mu) * (x - mu);
        const double lq = -0.5 * x * x;
        return inv_sqrt_2pi * std::exp(a * lp + (1.0 - a) * lq);
      };
      const double centre = a * mu;
      return integrate(f, centre - 40.0, centre + 40.0, 1e-14);
    }
    case Family::Poisson: {
      const double lam = m.p_param, mu = m.q_param;
      const double top = std::max(lam, mu);
      const long kmax = static_cast<long>(top + 60.0 * std::sqrt(top) + 100.0);
      double sum = 0.0;
      for (long k = 0; k <= kmax; ++k) sum += std::exp(a * log_poisson(lam, k) + (1.0 - a) * log_poisson(mu, k));
      return sum;
    }
    case Family::Bernoulli: {
      const double p = m.p_param, q = m.q_param;
      return std::pow(p, a) * std::pow(q, 1.0 - a) + std::pow(1.0 - p, a) * std::pow(1.0 - q, 1.0 - a);
    }
  }
  return 0.0;
}

}  // namespace

VertexCatalog enumerate_f2f_vertices(int n) {
  if (n < 3 || n > 6) throw std::length_error("enumerate_f2f_vertices: n must be in [3, 6]");
  VertexCatalog cat;
  cat.n = n;
  VertexSearch s{n, EdgeIndexer(n), EdgeSubset(n), std::vector<int>(static_cast<std::size_t>(n), 0),
                 std::vector<int>(static_cast<std::size_t>(n), n - 1), &cat};
  s.assign(0);
  return cat;
}

double numeric_affinity(const WeightModel& m, double a) {
  m.validate();
  const double eta = m.erasure;
  // The erased value is an atom of mass eta under both P and Q.
  return eta + (1.0 - eta) * continuous_affinity(m, a);
}

double numeric_alpha(const WeightModel& m) {
  WeightModel clean = m;
  clean.erasure = 0.0;
  return -2.0 * std::log(numeric_affinity(clean, 0.5));
}

double numeric_beta(const WeightModel& m) {
  WeightModel clean = m;
  clean.erasure = 0.0;
  return -1.5 * std::log(numeric_affinity(clean, 2.0 / 3.0));
}

double numeric_alpha_erasure(const WeightModel& m) { return -2.0 * std::log(numeric_affinity(m, 0.5)); }

double numeric_beta_erasure(const WeightModel& m) { return -1.5 * std::log(numeric_affinity(m, 2.0 / 3.0)); }

}  // namespace hhc
