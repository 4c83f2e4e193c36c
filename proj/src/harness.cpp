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

#include "hhc/harness.hpp"

#include "hhc/bp.hpp"
#include "hhc/generator.hpp"
#include "hhc/greedy.hpp"
#include "hhc/rng.hpp"
#include "hhc/spectral.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hhc {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Algorithm, const char*>, 6> kAlgorithmNames{{
    {Algorithm::F2f, "f2f"},
    {Algorithm::Bp, "bp"},
    {Algorithm::GreedyMerging, "gm"},
    {Algorithm::Threshold, "threshold"},
    {Algorithm::NearestNeighbor, "nn"},
    {Algorithm::Spectral, "spectral"},
}};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Outcome {
  bool error = false;
  std::string message;
  Score s;
  double seconds = 0.0;
  int lp_class = -1;
};

struct TrialRecord {
  std::vector<Outcome> outcomes;  // parallel to spec.algorithms
  bool has_pair = false;          // both f2f and bp ran cleanly
  bool lp_integral = false;
  bool agree = false;
};

TrialRecord run_trial(const SweepSpec& spec, std::size_t point, std::size_t trial) {
  const std::uint64_t seed = trial_seed(spec.seed, point, trial);
  const PlantedInstance inst = generate_cycle_instance(spec.n, spec.model_at(point), seed);
  const WeightedGraph w = inst.loglik();
  const EdgeSubset truth = inst.truth_edges();

  TrialRecord rec;
  rec.outcomes.resize(spec.algorithms.size());
  std::optional<EdgeSubset> lp_x, bp_x;
  for (std::size_t k = 0; k < spec.algorithms.size(); ++k) {
    Outcome& o = rec.outcomes[k];
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (spec.algorithms[k]) {
        case Algorithm::F2f: {
          const LpSolution lp = solve_f2f(w);
          o.lp_class = static_cast<int>(lp.vertex_class);
          // Success means the LP itself returned the truth; the rounded
          // vector only feeds the misclassification fraction.
          const Score rounded = score(round_halves(lp, derive_seed(seed, 7)), truth);
          o.s = {lp.x == truth, rounded.frac_misclassified};
          lp_x = lp.x;
          break;
        }
        case Algorithm::Bp: {
          BpOptions opt;
          opt.iterations = spec.bp_iterations;
          opt.early_stop_window = spec.bp_early_stop;
          const BpResult r = bp_solve(w, opt);
          o.s = score(r.x, truth);
          bp_x = r.x;
          break;
        }
        case Algorithm::GreedyMerging:
          o.s = score(greedy_merging(w), truth);
          break;
        case Algorithm::Threshold:
          o.s = score(simple_thresholding(w), truth);
          break;
        case Algorithm::NearestNeighbor:
          o.s = score(nearest_neighbor(w).edges(), truth);
          break;
        case Algorithm::Spectral:
          o.s = score(spectral_order(w).edges(), truth);
          break;
      }
    } catch (const std::exception& e) {
      o.error = true;
      o.message = e.what();
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  if (lp_x && bp_x) {
    rec.has_pair = true;
    rec.lp_integral = lp_x->is_integral();
    rec.agree = *lp_x == *bp_x;
  }
  return rec;
}

std::vector<double> parse_grid(const json& g) {
  if (g.is_array()) return g.get<std::vector<double>>();
  if (g.is_object()) {
    for (const auto& [k, _] : g.items())
      if (k != "start" && k != "stop" && k != "count")
        throw std::invalid_argument("sweep spec: unknown grid key '" + k + "'");
    const double a = g.at("start").get<double>(), b = g.at("stop").get<double>();
    const int count = g.at("count").get<int>();
    if (count < 1) throw std::invalid_argument("sweep spec: grid count must be >= 1");
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
    return out;
  }
  throw std::invalid_argument("sweep spec: grid must be an array or {start, stop, count}");
}

json spec_json(const SweepSpec& s) {
  json algs = json::array();
  for (Algorithm a : s.algorithms) algs.push_back(to_string(a));
  return json{{"model", s.model.to_string()},     {"parameter", s.parameter},
              {"grid", s.grid},                   {"grid_units", s.grid_units},
              {"n", s.n},                         {"trials", s.trials},
              {"algorithms", algs},               {"bp_iters", s.bp_iterations},
              {"bp_early_stop", s.bp_early_stop}, {"seed", s.seed},
              {"output", s.output},               {"workers", s.workers}};
}

}  // namespace

std::string to_string(Algorithm a) {
  for (const auto& [alg, name] : kAlgorithmNames)
    if (alg == a) return name;
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto& [alg, n] : kAlgorithmNames)
    if (name == n) return alg;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

double SweepSpec::parameter_value(std::size_t point) const {
  const double g = grid.at(point);
  if (grid_units == "log_n") return g * std::log(static_cast<double>(n));
  return g;
}

WeightModel SweepSpec::model_at(std::size_t point) const {
  return model.with_parameter(parameter, parameter_value(point));
}

void SweepSpec::validate() const {
  if (grid.empty()) throw std::invalid_argument("sweep spec: empty grid");
  if (n < 3) throw std::invalid_argument("sweep spec: n must be >= 3");
  if (trials < 1) throw std::invalid_argument("sweep spec: trials must be >= 1");
  if (workers < 1) throw std::invalid_argument("sweep spec: workers must be >= 1");
  if (bp_iterations < 0 || bp_early_stop < 0) throw std::invalid_argument("sweep spec: BP settings must be >= 0");
  if (grid_units != "absolute" && grid_units != "log_n")
    throw std::invalid_argument("sweep spec: grid_units must be 'absolute' or 'log_n'");
  if (algorithms.empty()) throw std::invalid_argument("sweep spec: no algorithms");
  model.validate();
  for (std::size_t p = 0; p < grid.size(); ++p) model_at(p);
}

SweepSpec parse_sweep_spec(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("sweep spec: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("sweep spec: expected a JSON object");
  SweepSpec s;
  s.algorithms = {Algorithm::F2f, Algorithm::Bp, Algorithm::GreedyMerging, Algorithm::Threshold};
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "model") s.model = WeightModel::parse(v.get<std::string>());
      else if (key == "parameter") s.parameter = v.get<std::string>();
      else if (key == "grid") s.grid = parse_grid(v);
      else if (key == "grid_units") s.grid_units = v.get<std::string>();
      else if (key == "n") s.n = v.get<int>();
      else if (key == "trials") s.trials = v.get<int>();
      else if (key == "bp_iters") s.bp_iterations = v.get<int>();
      else if (key == "bp_early_stop") s.bp_early_stop = v.get<int>();
      else if (key == "seed") s.seed = v.get<std::uint64_t>();
      else if (key == "output") s.output = v.get<std::string>();
      else if (key == "workers") s.workers = v.get<int>();
      else if (key == "algorithms") {
        s.algorithms.clear();
        for (const auto& a : v) s.algorithms.push_back(parse_algorithm(a.get<std::string>()));
      } else {
        throw std::invalid_argument("sweep spec: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("sweep spec: ") + e.what());
  }
  s.validate();
  return s;
}

std::string sweep_spec_to_json(const SweepSpec& spec) { return spec_json(spec).dump(2); }

SweepSpec sweep_preset(std::string_view name) {
  SweepSpec s;
  s.model = WeightModel::gaussian(1.0);
  s.parameter = "mu2";
  s.algorithms = {Algorithm::F2f, Algorithm::Bp, Algorithm::GreedyMerging, Algorithm::Threshold};
  if (name == "desk") {
    s.n = 200;
    s.trials = 20;
    s.grid_units = "log_n";
    for (int i = 0; i <= 10; ++i) s.grid.push_back(4.0 * (0.8 + 0.14 * i));
    s.bp_iterations = 1000;
    s.output = "sweep_desk";
  } else if (name == "paper-fig7") {
    s.n = 1000;
    s.trials = 50;
    for (int v = 20; v <= 65; v += 5) s.grid.push_back(v);
    s.bp_iterations = 10000;
    s.output = "sweep_fig7";
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  }
  return s;
}

std::uint64_t trial_seed(std::uint64_t base, std::size_t point, std::size_t trial) {
  return derive_seed(base, point, trial);
}

Score score(const EdgeSubset& estimate, const EdgeSubset& truth) {
  const Index diff = symmetric_difference_size(estimate, truth);
  return {diff == 0, static_cast<double>(diff) / truth.vertices()};
}

const CellResult& SweepResult::cell(std::size_t point, Algorithm a) const {
  for (const auto& c : cells)
    if (c.point == point && c.algorithm == a) return c;
  throw std::out_of_range("SweepResult::cell: no such cell");
}

SweepResult run_sweep(const SweepSpec& spec, const ProgressFn& progress) {
  spec.validate();
  const std::size_t points = spec.grid.size();
  const std::size_t trials = static_cast<std::size_t>(spec.trials);
  const std::size_t total = points * trials;
  std::vector<TrialRecord> records(total);

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mu;
  auto worker = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      records[task] = run_trial(spec, task / trials, task % trials);
      const std::size_t d = ++done;
      if (progress) {
        std::lock_guard lock(progress_mu);
        progress(d, total);
      }
    }
  };
  const int threads = std::min<int>(spec.workers, static_cast<int>(total));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  SweepResult out;
  out.spec = spec;
  for (std::size_t p = 0; p < points; ++p) {
    for (std::size_t k = 0; k < spec.algorithms.size(); ++k) {
      CellResult c;
      c.point = p;
      c.grid_value = spec.grid[p];
      c.parameter_value = spec.parameter_value(p);
      c.algorithm = spec.algorithms[k];
      c.trials = spec.trials;
      double frac = 0.0, secs = 0.0;
      for (std::size_t t = 0; t < trials; ++t) {
        const TrialRecord& rec = records[p * trials + t];
        const Outcome& o = rec.outcomes[k];
        secs += o.seconds;
        if (o.error) {
          ++c.errors;
          continue;
        }
        c.exact += o.s.exact;
        frac += o.s.frac_misclassified;
        if (o.lp_class >= 0) ++c.lp_classes[static_cast<std::size_t>(o.lp_class)];
        if (c.algorithm == Algorithm::Bp && rec.has_pair) {
          if (rec.lp_integral) {
            ++c.bp_lp_integral;
            c.bp_lp_agree_integral += rec.agree;
          } else {
            ++c.bp_lp_fractional;
            c.bp_lp_agree_fractional += rec.agree;
          }
        }
      }
      // Errored trials count as failures in the exact rate.
      c.exact_rate = static_cast<double>(c.exact) / c.trials;
      const int ok = c.trials - c.errors;
      c.mean_frac_misclassified = ok > 0 ? frac / ok : 0.0;
      c.mean_runtime_s = secs / c.trials;
      out.cells.push_back(c);
    }
  }
  for (const auto& rec : records)
    for (const auto& o : rec.outcomes)
      if (o.error) {
        ++out.failed_trials;
        break;
      }
  return out;
}

std::string results_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "point,grid_value,parameter,parameter_value,algorithm,trials,exact,errors,exact_rate,"
        "mean_frac_misclassified,lp_hamiltonian_cycle,lp_disjoint_cycles,lp_half_integral,lp_unknown,"
        "bp_lp_integral,bp_lp_agree_integral,bp_lp_fractional,bp_lp_agree_fractional\n";
  for (const auto& c : r.cells) {
    os << c.point << ',' << fmt(c.grid_value) << ',' << r.spec.parameter << ',' << fmt(c.parameter_value) << ','
       << to_string(c.algorithm) << ',' << c.trials << ',' << c.exact << ',' << c.errors << ','
       << fmt(c.exact_rate) << ',' << fmt(c.mean_frac_misclassified);
    for (int k : c.lp_classes) os << ',' << k;
    os << ',' << c.bp_lp_integral << ',' << c.bp_lp_agree_integral << ',' << c.bp_lp_fractional << ','
       << c.bp_lp_agree_fractional << '\n';
  }
  return os.str();
}

std::string results_json(const SweepResult& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    json lp = json::object();
    for (std::size_t k = 0; k < c.lp_classes.size(); ++k)
      lp[to_string(static_cast<VertexClass>(k))] = c.lp_classes[k];
    cells.push_back({{"point", c.point},
                     {"grid_value", c.grid_value},
                     {"parameter_value", c.parameter_value},
                     {"algorithm", to_string(c.algorithm)},
                     {"trials", c.trials},
                     {"exact", c.exact},
                     {"errors", c.errors},
                     {"exact_rate", c.exact_rate},
                     {"mean_frac_misclassified", c.mean_frac_misclassified},
                     {"lp_classes", lp},
                     {"bp_lp", {{"integral", c.bp_lp_integral},
                                {"agree_integral", c.bp_lp_agree_integral},
                                {"fractional", c.bp_lp_fractional},
                                {"agree_fractional", c.bp_lp_agree_fractional}}}});
  }
  // Output path and worker count do not affect results; keep them out so
  // reruns with different parallelism produce identical manifests.
  json run_fields = spec_json(r.spec);
  run_fields.erase("output");
  run_fields.erase("workers");
  json j{{"schema_version", kResultsSchemaVersion},
         {"spec", run_fields},
         {"seeding", "trial seed = derive_seed(seed, point, trial)"},
         {"failed_trials", r.failed_trials},
         {"cells", cells}};
  return j.dump(2) + "\n";
}

std::string timing_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "point,algorithm,mean_runtime_s\n";
  for (const auto& c : r.cells) os << c.point << ',' << to_string(c.algorithm) << ',' << fmt(c.mean_runtime_s) << '\n';
  return os.str();
}

void emit_results(const SweepResult& r, const std::string& prefix) {
  auto write = [](const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << body;
  };
  write(prefix + ".csv", results_csv(r));
  write(prefix + ".json", results_json(r));
  write(prefix + ".timing.csv", timing_csv(r));
}

}  // namespace hhc
