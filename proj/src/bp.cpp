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

#include "hhc/bp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hhc {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Indices of the three largest entries of `values` over l != skip, ordered
// by value descending, then index ascending. Missing slots hold -1.
struct Top3 {
  int idx[3] = {-1, -1, -1};
  double val[3] = {kNegInf, kNegInf, kNegInf};

  void offer(int l, double v) {
    for (int k = 0; k < 3; ++k) {
      if (idx[k] < 0 || v > val[k]) {
        for (int s = 2; s > k; --s) {
          idx[s] = idx[s - 1];
          val[s] = val[s - 1];
        }
        idx[k] = l;
        val[k] = v;
        return;
      }
    }
  }
};

template <typename Get>
Top3 top3(int n, int skip, Get get) {
  Top3 t;
  for (int l = 0; l < n; ++l)
    if (l != skip) t.offer(l, get(l));
  return t;
}

}  // namespace

MessageState bp_init(const WeightedGraph& w) {
  require_finite(w, "bp_init");
  MessageState s;
  s.m = w.dense();
  s.t = 0;
  return s;
}

namespace {

void flood(const Eigen::MatrixXd& prev, const Eigen::MatrixXd& wd, Eigen::MatrixXd& next) {
  const int n = static_cast<int>(wd.rows());
  for (int i = 0; i < n; ++i) {
    const Top3 in = top3(n, i, [&](int l) { return prev(l, i); });
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double second;
      if (n == 3)
        second = in.idx[0] == j ? in.val[1] : in.val[0];
      else if (j == in.idx[0] || j == in.idx[1])
        second = in.val[2];
      else
        second = in.val[1];
      next(i, j) = wd(i, j) - second;
    }
  }
}

}  // namespace

MessageState bp_step(const MessageState& s, const WeightedGraph& w) {
  const int n = w.vertices();
  if (s.m.rows() != n || s.m.cols() != n) throw std::invalid_argument("bp_step: size mismatch");
  MessageState next{Eigen::MatrixXd::Zero(n, n), s.t + 1};
  flood(s.m, w.dense(), next.m);
  return next;
}

EdgeSubset bp_decide(const MessageState& s, DecisionRule rule) {
  const int n = static_cast<int>(s.m.rows());
  EdgeSubset x(n);
  for (int i = 0; i < n; ++i) {
    const Top3 t = rule == DecisionRule::Received ? top3(n, i, [&](int l) { return s.m(l, i); })
                                                  : top3(n, i, [&](int l) { return s.m(i, l); });
    x.set(i, t.idx[0], 2);
    x.set(i, t.idx[1], 2);
  }
  return x;
}

BpResult bp_solve(const WeightedGraph& w, const BpOptions& options) {
  if (options.iterations < 1) throw std::invalid_argument("bp_solve: iterations must be >= 1");
  if (w.vertices() < 3) throw std::invalid_argument("bp_solve: n must be >= 3");
  MessageState s = bp_init(w);
  const Eigen::MatrixXd wd = s.m;
  Eigen::MatrixXd scratch = Eigen::MatrixXd::Zero(wd.rows(), wd.cols());
  BpResult r;
  int unchanged = 0;
  for (int t = 1; t <= options.iterations; ++t) {
    flood(s.m, wd, scratch);
    s.m.swap(scratch);
    s.t = t;
    EdgeSubset x = bp_decide(s, options.rule);
    if (t > 1 && x == r.x)
      ++unchanged;
    else
      unchanged = 0;
    r.x = std::move(x);
    r.iterations = t;
    if (options.early_stop_window > 0 && unchanged >= options.early_stop_window) {
      r.stopped_early = t < options.iterations;
      break;
    }
  }
  return r;
}

std::int64_t bp_iteration_budget(int n, double optimum_weight, double gap) {
  if (!(gap > 0.0)) throw std::invalid_argument("bp_iteration_budget: gap must be positive");
  return static_cast<std::int64_t>(std::ceil(2.0 * n * optimum_weight / gap));
}

}  // namespace hhc
