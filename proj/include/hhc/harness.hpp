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
#include "hhc/lp_f2f.hpp"
#include "hhc/model.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace hhc {

enum class Algorithm { F2f, Bp, GreedyMerging, Threshold, NearestNeighbor, Spectral };

// Short names used in specs and CSV: f2f, bp, gm, threshold, nn, spectral.
std::string to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

struct SweepSpec {
  WeightModel model = WeightModel::gaussian(1.0);
  std::string parameter = "mu2";
  std::vector<double> grid;
  // "absolute" or "log_n"; in log_n units every grid value is multiplied by
  // log n before it is applied.
  std::string grid_units = "absolute";
  int n = 200;
  int trials = 20;
  std::vector<Algorithm> algorithms;
  int bp_iterations = 1000;
  int bp_early_stop = 50;
  std::uint64_t seed = 1;
  std::string output;
  int workers = 1;

  // Throws std::invalid_argument on an empty grid, trials < 1, n < 3, or a
  // grid value the model rejects.
  void validate() const;
  double parameter_value(std::size_t point) const;
  WeightModel model_at(std::size_t point) const;
};

// JSON object with keys model, parameter, grid, grid_units, n, trials,
// algorithms, bp_iters, bp_early_stop, seed, output, workers. `grid` is an
// array or {"start", "stop", "count"}. Unknown keys are rejected.
SweepSpec parse_sweep_spec(std::string_view json_text);
std::string sweep_spec_to_json(const SweepSpec& spec);

// Named presets: "desk" (n = 200, 20 trials, 11 points over
// [0.8, 2.2] x 4 log n) and "paper-fig7" (n = 1000, 50 trials, mu^2 in
// 20, 25, ..., 65).
SweepSpec sweep_preset(std::string_view name);

// Child seed of trial t at grid point p.
std::uint64_t trial_seed(std::uint64_t base, std::size_t point, std::size_t trial);

struct Score {
  bool exact = false;
  double frac_misclassified = 0.0;
};

// |estimate xor truth| / n. Both must be integral.
Score score(const EdgeSubset& estimate, const EdgeSubset& truth);

struct CellResult {
  std::size_t point = 0;
  double grid_value = 0.0;
  double parameter_value = 0.0;
  Algorithm algorithm = Algorithm::F2f;
  int trials = 0;
  int exact = 0;
  int errors = 0;
  double exact_rate = 0.0;
  double mean_frac_misclassified = 0.0;  // over trials without error
  double mean_runtime_s = 0.0;
  // LP vertex classes, indexed by VertexClass (F2F cells only).
  std::array<int, 4> lp_classes{};
  // BP cells when F2F also ran: agreement with the LP output split by
  // whether the LP vertex was integral.
  int bp_lp_integral = 0;
  int bp_lp_agree_integral = 0;
  int bp_lp_fractional = 0;
  int bp_lp_agree_fractional = 0;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<CellResult> cells;  // point-major, algorithms in spec order
  int failed_trials = 0;

  const CellResult& cell(std::size_t point, Algorithm a) const;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

// Runs every (point, trial) task on `spec.workers` threads. Each task is a
// pure function of its child seed and results are aggregated in task order,
// so the output does not depend on scheduling. Solver exceptions count as
// errors for that trial and algorithm.
SweepResult run_sweep(const SweepSpec& spec, const ProgressFn& progress = {});

// Fixed-column CSV, one row per (grid point, algorithm); runtime is left out
// so reruns are byte-identical.
std::string results_csv(const SweepResult& r);
std::string results_json(const SweepResult& r);
std::string timing_csv(const SweepResult& r);

// Writes <prefix>.csv, <prefix>.json and <prefix>.timing.csv.
void emit_results(const SweepResult& r, const std::string& prefix);

inline constexpr int kResultsSchemaVersion = 1;

}  // namespace hhc
