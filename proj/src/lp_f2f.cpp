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

#include "hhc/lp_f2f.hpp"

#include "hhc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hhc {

std::string to_string(VertexClass c) {
  switch (c) {
    case VertexClass::HamiltonianCycle: return "hamiltonian_cycle";
    case VertexClass::DisjointCycles2Factor: return "disjoint_cycles";
    case VertexClass::HalfIntegral: return "half_integral";
    case VertexClass::Unknown: break;
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Status : std::uint8_t { Basic, AtLower, AtUpper };

// Bounded-variable revised simplex specialised to the vertex-edge incidence
// matrix of K_n plus one artificial column per row.
//
// Variables 0..m-1 are edges, m..m+n-1 artificials. The basis inverse is kept
// as a dense LU of the last refactorized basis followed by a product-form
// eta file.
class F2fSimplex {
 public:
  F2fSimplex(const WeightedGraph& w, const SimplexOptions& options)
      : n_(w.vertices()), m_(w.edges()), total_(m_ + n_), options_(options) {
    ends_.resize(static_cast<std::size_t>(m_));
    const EdgeIndexer& ix = w.indexer();
    for (Index e = 0; e < m_; ++e) ends_[static_cast<std::size_t>(e)] = ix.decode(e);
    weights_ = w.weights();
    scale_ = std::max(1.0, weights_.cwiseAbs().maxCoeff());
    lower_ = Eigen::VectorXd::Zero(total_);
    upper_ = Eigen::VectorXd::Ones(total_);
    value_ = Eigen::VectorXd::Zero(total_);
    cost_ = Eigen::VectorXd::Zero(total_);
    status_.assign(static_cast<std::size_t>(total_), Status::AtLower);
    art_sign_.assign(static_cast<std::size_t>(n_), 1.0);
    max_pivots_ = options.max_pivots > 0 ? options.max_pivots : 50 * static_cast<std::int64_t>(total_);
  }

  void run() {
    warm_start();
    // Artificials absorb the residual of the starting point.
    Eigen::VectorXd residual = Eigen::VectorXd::Constant(n_, 2.0);
    for (Index k = 0; k < m_; ++k)
      if (value_[k] != 0.0) add_column(k, value_[k] * -1.0, residual);
    basis_.resize(static_cast<std::size_t>(n_));
    for (int r = 0; r < n_; ++r) {
      const Index a = m_ + r;
      art_sign_[static_cast<std::size_t>(r)] = residual[r] < 0.0 ? -1.0 : 1.0;
      basis_[static_cast<std::size_t>(r)] = a;
      status_[static_cast<std::size_t>(a)] = Status::Basic;
      upper_[a] = kInf;
    }
    refactor();
    recompute_basic_values();

    if (xb_.sum() > 1e-9) {
      cost_.head(m_).setZero();
      cost_.tail(n_).setConstant(-1.0);
      iterate(1.0);
      if (xb_.cwiseMax(0.0).dot(basic_artificial_mask()) > 1e-7)
        throw std::runtime_error("solve_f2f: phase 1 ended infeasible");
    }
    upper_.tail(n_).setZero();
    for (Index a = m_; a < total_; ++a)
      if (status_[static_cast<std::size_t>(a)] != Status::Basic) {
        status_[static_cast<std::size_t>(a)] = Status::AtLower;
        value_[a] = 0.0;
      }
    cost_.head(m_) = weights_;
    cost_.tail(n_).setZero();
    iterate(scale_);
  }

  Eigen::VectorXd edge_values() const {
    Eigen::VectorXd x = value_.head(m_);
    for (int r = 0; r < n_; ++r) {
      const Index k = basis_[static_cast<std::size_t>(r)];
      if (k < m_) x[k] = xb_[r];
    }
    return x;
  }

  const Eigen::VectorXd& duals() const { return y_; }
  std::int64_t pivots() const { return pivots_; }

 private:
  // Nonbasic edges of a nearest-neighbour tour sit at their upper bound, so
  // every row residual is zero and phase 1 is skipped.
  void warm_start() {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    Vertex cur = 0;
    seen[0] = 1;
    EdgeIndexer ix(n_);
    for (int step = 1; step < n_; ++step) {
      Vertex next = -1;
      double best = -kInf;
      for (Vertex v = 0; v < n_; ++v) {
        if (seen[static_cast<std::size_t>(v)]) continue;
        const double wv = weights_[ix.index(cur, v)];
        if (wv > best) {
          best = wv;
          next = v;
        }
      }
      set_upper(ix.index(cur, next));
      seen[static_cast<std::size_t>(next)] = 1;
      cur = next;
    }
    set_upper(ix.index(cur, 0));
  }

  void set_upper(Index e) {
    status_[static_cast<std::size_t>(e)] = Status::AtUpper;
    value_[e] = upper_[e];
  }

  Eigen::VectorXd basic_artificial_mask() const {
    Eigen::VectorXd mask = Eigen::VectorXd::Zero(n_);
    for (int r = 0; r < n_; ++r)
      if (basis_[static_cast<std::size_t>(r)] >= m_) mask[r] = 1.0;
    return mask;
  }

  void add_column(Index k, double scale, Eigen::VectorXd& out) const {
    if (k < m_) {
      const auto [i, j] = ends_[static_cast<std::size_t>(k)];
      out[i] += scale;
      out[j] += scale;
    } else {
      const auto r = static_cast<Index>(k - m_);
      out[r] += scale * art_sign_[static_cast<std::size_t>(r)];
    }
  }

  double column_dot(Index k, const Eigen::VectorXd& v) const {
    if (k < m_) {
      const auto [i, j] = ends_[static_cast<std::size_t>(k)];
      return v[i] + v[j];
    }
    const auto r = static_cast<Index>(k - m_);
    return art_sign_[static_cast<std::size_t>(r)] * v[r];
  }

  void refactor() {
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n_, n_);
    for (int r = 0; r < n_; ++r) {
      Eigen::VectorXd col = Eigen::VectorXd::Zero(n_);
      add_column(basis_[static_cast<std::size_t>(r)], 1.0, col);
      basis.col(r) = col;
    }
    lu_.compute(basis);
    const Eigen::VectorXd diag = lu_.matrixLU().diagonal().cwiseAbs();
    if (diag.minCoeff() < 1e-11 * std::max(1.0, diag.maxCoeff()))
      throw std::runtime_error("solve_f2f: singular basis");
    etas_.clear();
  }

  void recompute_basic_values() {
    Eigen::VectorXd rhs = Eigen::VectorXd::Constant(n_, 2.0);
    for (Index k = 0; k < total_; ++k) {
      if (status_[static_cast<std::size_t>(k)] == Status::Basic) continue;
      if (value_[k] != 0.0) add_column(k, -value_[k], rhs);
    }
    xb_ = ftran(rhs);
  }

  Eigen::VectorXd ftran(const Eigen::VectorXd& rhs) const {
    Eigen::VectorXd z = lu_.solve(rhs);
    for (const Eta& eta : etas_) {
      const double pivot = z[eta.row] / eta.col[eta.row];
      z -= pivot * eta.col;
      z[eta.row] = pivot;
    }
    return z;
  }

  Eigen::VectorXd btran(Eigen::VectorXd v) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      const double alpha_r = it->col[it->row];
      const double others = it->col.dot(v) - alpha_r * v[it->row];
      v[it->row] = (v[it->row] - others) / alpha_r;
    }
    return lu_.transpose().solve(v);
  }

  void iterate(double cost_scale) {
    const double dtol = 1e-9 * cost_scale;
    constexpr double kPivotTol = 1e-9;
    constexpr double kTieTol = 1e-12;
    const std::int64_t bland_after = 5 * static_cast<std::int64_t>(n_);
    std::int64_t degenerate_run = 0;
    bool bland = false;
    Eigen::VectorXd cb(n_);

    for (;;) {
      if (pivots_ >= max_pivots_) throw std::runtime_error("solve_f2f: pivot limit reached");
      if (static_cast<int>(etas_.size()) >= options_.refactor_interval) {
        refactor();
        recompute_basic_values();
      }
      for (int r = 0; r < n_; ++r) cb[r] = cost_[basis_[static_cast<std::size_t>(r)]];
      y_ = btran(cb);

      Index entering = -1;
      int dir = 0;
      double best = 0.0;
      for (Index k = 0; k < total_; ++k) {
        const Status s = status_[static_cast<std::size_t>(k)];
        if (s == Status::Basic || upper_[k] - lower_[k] <= 0.0) continue;
        const double d = cost_[k] - column_dot(k, y_);
        double gain = 0.0;
        int kdir = 0;
        if (s == Status::AtLower && d > dtol) {
          gain = d;
          kdir = 1;
        } else if (s == Status::AtUpper && d < -dtol) {
          gain = -d;
          kdir = -1;
        }
        if (kdir == 0) continue;
        if (bland) {
          entering = k;
          dir = kdir;
          break;
        }
        if (gain > best) {
          best = gain;
          entering = k;
          dir = kdir;
        }
      }
      if (entering < 0) {
        if (etas_.empty()) return;
        refactor();
        recompute_basic_values();
        continue;
      }

      Eigen::VectorXd col = Eigen::VectorXd::Zero(n_);
      add_column(entering, 1.0, col);
      const Eigen::VectorXd alpha = ftran(col);

      double theta = upper_[entering] - lower_[entering];
      int leave = -1;
      bool leave_to_upper = false;
      double leave_mag = 0.0;
      for (int r = 0; r < n_; ++r) {
        const double a = dir * alpha[r];
        if (std::abs(a) <= kPivotTol) continue;
        const Index k = basis_[static_cast<std::size_t>(r)];
        double limit;
        if (a > 0.0) {
          limit = (xb_[r] - lower_[k]) / a;
        } else {
          if (!std::isfinite(upper_[k])) continue;
          limit = (upper_[k] - xb_[r]) / -a;
        }
        limit = std::max(limit, 0.0);
        bool take = limit < theta - kTieTol;
        if (!take && leave >= 0 && limit <= theta + kTieTol) {
          take = bland ? k < basis_[static_cast<std::size_t>(leave)] : std::abs(a) > leave_mag;
        }
        if (take) {
          theta = limit;
          leave = r;
          leave_to_upper = a < 0.0;
          leave_mag = std::abs(a);
        }
      }
      if (!std::isfinite(theta)) throw std::runtime_error("solve_f2f: unbounded direction");

      xb_ -= (theta * dir) * alpha;
      if (leave < 0) {
        status_[static_cast<std::size_t>(entering)] = dir > 0 ? Status::AtUpper : Status::AtLower;
        value_[entering] = dir > 0 ? upper_[entering] : lower_[entering];
      } else {
        const Index out = basis_[static_cast<std::size_t>(leave)];
        status_[static_cast<std::size_t>(out)] = leave_to_upper ? Status::AtUpper : Status::AtLower;
        value_[out] = leave_to_upper ? upper_[out] : lower_[out];
        basis_[static_cast<std::size_t>(leave)] = entering;
        status_[static_cast<std::size_t>(entering)] = Status::Basic;
        xb_[leave] = value_[entering] + dir * theta;
        etas_.push_back(Eta{leave, alpha});
      }
      ++pivots_;

      if (theta <= kTieTol) {
        if (++degenerate_run > bland_after) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
  }

  struct Eta {
    Index row;
    Eigen::VectorXd col;
  };

  int n_;
  Index m_;
  Index total_;
  SimplexOptions options_;
  std::int64_t max_pivots_ = 0;
  std::int64_t pivots_ = 0;
  double scale_ = 1.0;
  std::vector<std::pair<Vertex, Vertex>> ends_;
  std::vector<double> art_sign_;
  Eigen::VectorXd weights_, lower_, upper_, value_, cost_;
  std::vector<Status> status_;
  std::vector<Index> basis_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  std::vector<Eta> etas_;
  Eigen::VectorXd xb_, y_;
};

std::vector<Vertex> walk_cycle(Vertex start, const std::vector<std::vector<Vertex>>& adj) {
  std::vector<Vertex> order{start};
  Vertex prev = start;
  Vertex cur = std::min(adj[static_cast<std::size_t>(start)][0], adj[static_cast<std::size_t>(start)][1]);
  while (cur != start) {
    order.push_back(cur);
    const auto& nb = adj[static_cast<std::size_t>(cur)];
    const Vertex next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  return order;
}

SupportComponent describe_component(const std::vector<Vertex>& verts,
                                    const std::vector<std::vector<Vertex>>& unit,
                                    const std::vector<std::vector<Vertex>>& half) {
  SupportComponent c;
  c.vertices = verts;
  std::sort(c.vertices.begin(), c.vertices.end());
  Index unit_deg = 0, half_deg = 0;
  for (Vertex v : verts) {
    unit_deg += static_cast<Index>(unit[static_cast<std::size_t>(v)].size());
    half_deg += static_cast<Index>(half[static_cast<std::size_t>(v)].size());
  }
  c.unit_edges = unit_deg / 2;
  c.half_edges = half_deg / 2;

  if (c.half_edges == 0) {
    c.kind = SupportComponent::Kind::Cycle;
    c.cycles.push_back(walk_cycle(c.vertices.front(), unit));
    return c;
  }

  for (Vertex v : verts) {
    const auto u = unit[static_cast<std::size_t>(v)].size();
    const auto h = half[static_cast<std::size_t>(v)].size();
    if (!((u == 2 && h == 0) || (u == 1 && h == 2))) return c;
  }

  std::vector<char> on_cycle_seen(unit.size(), 0);
  int cycle_vertices = 0;
  for (Vertex v : c.vertices) {
    if (half[static_cast<std::size_t>(v)].empty() || on_cycle_seen[static_cast<std::size_t>(v)]) continue;
    std::vector<Vertex> cyc = walk_cycle(v, half);
    for (Vertex x : cyc) on_cycle_seen[static_cast<std::size_t>(x)] = 1;
    if (cyc.size() % 2 == 0) return c;
    cycle_vertices += static_cast<int>(cyc.size());
    c.cycles.push_back(std::move(cyc));
  }
  if (c.cycles.size() < 2 || c.cycles.size() % 2 != 0) {
    c.cycles.clear();
    return c;
  }

  // Unit edges must split into vertex-disjoint paths between cycle vertices.
  std::vector<char> visited(unit.size(), 0);
  Index path_vertices = 0;
  for (Vertex v : c.vertices) {
    if (unit[static_cast<std::size_t>(v)].size() != 1 || visited[static_cast<std::size_t>(v)]) continue;
    Vertex prev = -1, cur = v;
    for (;;) {
      visited[static_cast<std::size_t>(cur)] = 1;
      ++path_vertices;
      const auto& nb = unit[static_cast<std::size_t>(cur)];
      Vertex next = -1;
      for (Vertex x : nb)
        if (x != prev) next = x;
      if (next < 0 || (nb.size() == 1 && cur != v)) break;
      prev = cur;
      cur = next;
    }
    ++c.unit_paths;
  }
  if (path_vertices != static_cast<Index>(verts.size()) || c.unit_paths * 2 != cycle_vertices) {
    c.cycles.clear();
    c.unit_paths = 0;
    return c;
  }
  c.kind = SupportComponent::Kind::OddCyclesWithPaths;
  return c;
}

}  // namespace

SupportReport classify_support(const EdgeSubset& x) {
  const int n = x.vertices();
  for (Vertex v = 0; v < n; ++v)
    if (x.degree_halves(v) != 4)
      throw std::invalid_argument("classify_support: vertex " + std::to_string(v) + " has degree != 2");

  std::vector<std::vector<Vertex>> unit(static_cast<std::size_t>(n)), half(static_cast<std::size_t>(n));
  for (Index e = 0; e < x.edges(); ++e) {
    const int h = x.halves(e);
    if (h == 0) continue;
    const auto [i, j] = x.indexer().decode(e);
    auto& adj = h == 2 ? unit : half;
    adj[static_cast<std::size_t>(i)].push_back(j);
    adj[static_cast<std::size_t>(j)].push_back(i);
  }

  SupportReport report;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Vertex s = 0; s < n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<Vertex> comp{s}, stack{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (const auto* adj : {&unit, &half})
        for (Vertex u : (*adj)[static_cast<std::size_t>(v)])
          if (!seen[static_cast<std::size_t>(u)]) {
            seen[static_cast<std::size_t>(u)] = 1;
            comp.push_back(u);
            stack.push_back(u);
          }
    }
    report.components.push_back(describe_component(comp, unit, half));
  }

  bool unknown = false, fractional = false;
  for (const auto& c : report.components) {
    unknown |= c.kind == SupportComponent::Kind::Unknown;
    fractional |= c.kind == SupportComponent::Kind::OddCyclesWithPaths;
  }
  if (unknown)
    report.vertex_class = VertexClass::Unknown;
  else if (fractional)
    report.vertex_class = VertexClass::HalfIntegral;
  else if (report.components.size() == 1)
    report.vertex_class = VertexClass::HamiltonianCycle;
  else
    report.vertex_class = VertexClass::DisjointCycles2Factor;
  return report;
}

LpSolution solve_f2f(const WeightedGraph& w, const SimplexOptions& options) {
  require_finite(w, "solve_f2f");
  const int n = w.vertices();
  if (n < 3) throw std::invalid_argument("solve_f2f: n must be >= 3");

  F2fSimplex simplex(w, options);
  simplex.run();
  const Eigen::VectorXd raw = simplex.edge_values();

  LpSolution sol;
  sol.x = EdgeSubset(n);
  for (Index e = 0; e < raw.size(); ++e) {
    const double h = std::round(2.0 * raw[e]);
    if (h < 0.0 || h > 2.0 || std::abs(raw[e] - 0.5 * h) > options.snap_tolerance)
      throw NumericDegeneracyError(
          "solve_f2f: entry " + std::to_string(e) + " = " + std::to_string(raw[e]) + " is not in {0, 1/2, 1}",
          raw);
    sol.x.set_halves(e, static_cast<int>(h));
  }
  if (!sol.x.all_degrees_two())
    throw NumericDegeneracyError("solve_f2f: snapped solution violates a degree constraint", raw);

  sol.objective = sol.x.dot(w.weights());
  SupportReport report = classify_support(sol.x);
  sol.vertex_class = report.vertex_class;
  sol.components = std::move(report.components);

  sol.u = simplex.duals();
  sol.b.resize(w.edges());
  sol.h.resize(w.edges());
  for (Index e = 0; e < w.edges(); ++e) {
    const auto [i, j] = w.indexer().decode(e);
    const double slack = sol.u[i] + sol.u[j] - w[e];
    sol.b[e] = std::max(0.0, slack);
    sol.h[e] = std::max(0.0, -slack);
  }
  sol.pivots = simplex.pivots();
  return sol;
}

EdgeSubset round_halves(const EdgeSubset& x, std::uint64_t seed) {
  CounterRng rng(seed);
  EdgeSubset out = x;
  for (Index e = 0; e < x.edges(); ++e)
    if (x.halves(e) == 1) out.set_halves(e, rng.uniform() < 0.5 ? 0 : 2);
  return out;
}

CertificateResult certify(const WeightedGraph& w, const HamiltonianCycle& truth) {
  const int n = w.vertices();
  if (truth.vertices() != n) throw std::invalid_argument("certify: size mismatch");
  require_finite(w, "certify");
  CertificateResult res;
  res.u = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  const auto& order = truth.order();
  for (int k = 0; k < n; ++k) {
    const Vertex a = order[static_cast<std::size_t>(k)];
    const Vertex b = order[static_cast<std::size_t>((k + 1) % n)];
    const double half = 0.5 * w(a, b);
    res.u[a] = std::min(res.u[a], half);
    res.u[b] = std::min(res.u[b], half);
  }
  for (Index e = 0; e < w.edges(); ++e) {
    const auto [i, j] = w.indexer().decode(e);
    const double s = res.u[i] + res.u[j];
    const bool ok = truth.contains(i, j) ? s <= w[e] + 1e-12 * (1.0 + std::abs(w[e])) : s >= w[e];
    if (!ok) res.violating_edges.push_back(e);
  }
  res.valid = res.violating_edges.empty();
  return res;
}

HamiltonianCycle brute_force_tsp(const WeightedGraph& w) {
  const int n = w.vertices();
  if (n < 3 || n > 10) throw std::length_error("brute_force_tsp: n must be in [3, 10]");
  const Eigen::MatrixXd d = w.dense();
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<Vertex> best_order;
  double best = -kInf;
  do {
    if (order[1] > order.back()) continue;
    double total = d(order.back(), 0);
    for (int k = 0; k + 1 < n; ++k) total += d(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k + 1)]);
    if (total > best) {
      best = total;
      best_order = order;
    }
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return HamiltonianCycle(best_order);
}

namespace {

struct TwoFactorSearch {
  const Eigen::MatrixXd& d;
  int n;
  unsigned full;
  double best = -kInf;
  std::vector<std::pair<Vertex, Vertex>> chosen, best_edges;

  void cover(unsigned mask, double acc) {
    if (mask == full) {
      if (acc > best) {
        best = acc;
        best_edges = chosen;
      }
      return;
    }
    Vertex v = 0;
    while (mask & (1u << v)) ++v;
    std::vector<Vertex> path{v};
    extend(mask | (1u << v), acc, path);
  }

  // Grows a cycle whose smallest vertex is path[0]; closes it when it has at
  // least three vertices and path[1] < path.back() to fix orientation.
  void extend(unsigned mask, double acc, std::vector<Vertex>& path) {
    const Vertex last = path.back();
    if (path.size() >= 3 && path[1] < last) {
      chosen.emplace_back(last, path[0]);
      cover(mask, acc + d(last, path[0]));
      chosen.pop_back();
    }
    for (Vertex u = path[0] + 1; u < n; ++u) {
      if (mask & (1u << u)) continue;
      chosen.emplace_back(last, u);
      path.push_back(u);
      extend(mask | (1u << u), acc + d(last, u), path);
      path.pop_back();
      chosen.pop_back();
    }
  }
};

}  // namespace

EdgeSubset brute_force_2factor(const WeightedGraph& w) {
  const int n = w.vertices();
  if (n < 3 || n > 10) throw std::length_error("brute_force_2factor: n must be in [3, 10]");
  const Eigen::MatrixXd d = w.dense();
  TwoFactorSearch search{d, n, (1u << n) - 1u, -kInf, {}, {}};
  search.cover(0u, 0.0);
  EdgeSubset x(n);
  for (const auto& [i, j] : search.best_edges) x.set(i, j, 2);
  return x;
}

}  // namespace hhc
