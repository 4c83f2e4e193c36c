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

// Command-line front end. Every subcommand writes JSON to stdout (or files)
// and is a pure function of its arguments.

#include "CLI11.hpp"
#include "hhc/bp.hpp"
#include "hhc/contact_map.hpp"
#include "hhc/divergence.hpp"
#include "hhc/generator.hpp"
#include "hhc/greedy.hpp"
#include "hhc/harness.hpp"
#include "hhc/lp_f2f.hpp"
#include "hhc/oracle.hpp"
#include "hhc/reductions.hpp"
#include "hhc/spectral.hpp"
#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

namespace {

using nlohmann::json;
using namespace hhc;

json edge_list(const EdgeSubset& x) {
  json out = json::array();
  for (Index e = 0; e < x.edges(); ++e) {
    if (x.halves(e) == 0) continue;
    const auto [i, j] = x.indexer().decode(e);
    out.push_back({i, j, x.value(e)});
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

// An instance on disk: raw observations plus an optional sidecar
// `<csv>.json` carrying the model and the planted truth.
struct LoadedInstance {
  WeightedGraph weights;
  std::optional<WeightModel> model;
  std::optional<std::vector<Vertex>> truth;
  bool truth_is_path = false;
};

LoadedInstance load_instance(const std::string& path, const std::string& model_spec, bool raw) {
  LoadedInstance li;
  const WeightedGraph obs = load_graph_csv(path);
  const std::string sidecar = path + ".json";
  if (std::filesystem::exists(sidecar)) {
    const json j = json::parse(read_file(sidecar));
    if (j.contains("model")) li.model = WeightModel::parse(j.at("model").get<std::string>());
    if (j.contains("truth")) li.truth = j.at("truth").get<std::vector<Vertex>>();
    li.truth_is_path = j.value("structure", "cycle") == "path";
  }
  if (!model_spec.empty()) li.model = WeightModel::parse(model_spec);
  if (raw) li.model.reset();
  if (li.model) {
    li.weights = loglik_transform(obs, *li.model);
  } else {
    require_finite(obs, "CLI (raw weights; pass --model to score erasures)");
    li.weights = obs;
  }
  return li;
}

int cmd_thresholds(const std::string& model_spec, int n) {
  const WeightModel m = WeightModel::parse(model_spec);
  const DivergenceReport r = divergence_report(m, n);
  json conds = json::array();
  for (const auto& c : sufficient_conditions(m, n))
    conds.push_back({{"algorithm", c.algorithm}, {"margin", c.margin}, {"predicted", c.predicted}});
  const json out{{"model", m.to_string()},
                 {"n", n},
                 {"alpha", r.alpha},
                 {"beta", r.beta},
                 {"alpha_prime", r.alpha_prime},
                 {"beta_prime", beta_erasure(m)},
                 {"tau_star", r.tau_star},
                 {"converse_gap", r.converse_gap},
                 {"conditions", conds}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_generate(int n, const std::string& model_spec, std::uint64_t seed, const std::string& out, bool path) {
  const WeightModel m = WeightModel::parse(model_spec);
  const PlantedInstance inst = path ? generate_path_instance(n, m, seed) : generate_cycle_instance(n, m, seed);
  save_graph_csv(out, inst.observations);
  const auto& order = path ? inst.path().order() : inst.cycle().order();
  const json side{{"model", m.to_string()},
                  {"n", n},
                  {"seed", seed},
                  {"structure", path ? "path" : "cycle"},
                  {"truth", order}};
  write_file(out + ".json", side.dump(2) + "\n");
  return 0;
}

int cmd_solve(const std::string& algo, const std::string& in, const std::string& model_spec, bool raw,
              std::uint64_t seed, int iters, int early_stop, bool as_json) {
  const LoadedInstance li = load_instance(in, model_spec, raw);
  const WeightedGraph& w = li.weights;
  json out{{"algorithm", algo}, {"n", w.vertices()}, {"seed", seed}};
  EdgeSubset x;
  if (algo == "f2f") {
    const LpSolution lp = solve_f2f(w);
    x = lp.x;
    out["class"] = to_string(lp.vertex_class);
    out["objective"] = lp.objective;
    out["pivots"] = lp.pivots;
    const EdgeSubset rounded = round_halves(lp, seed);
    out["rounded_edges"] = edge_list(rounded);
    if (auto c = edges_to_cycle(rounded)) out["rounded_cycle"] = c->order();
    else out["rounded_cycle"] = nullptr;
  } else if (algo == "bp") {
    BpOptions opt;
    opt.iterations = iters;
    opt.early_stop_window = early_stop;
    const BpResult r = bp_solve(w, opt);
    x = r.x;
    out["iterations"] = r.iterations;
    out["stopped_early"] = r.stopped_early;
  } else if (algo == "threshold") {
    x = simple_thresholding(w);
  } else if (algo == "nn") {
    x = nearest_neighbor(w).edges();
  } else if (algo == "gm") {
    x = greedy_merging(w);
  } else if (algo == "spectral") {
    x = spectral_order(w).edges();
  } else {
    throw CLI::ValidationError("--algo", "unknown algorithm " + algo);
  }
  out["edges"] = edge_list(x);
  out["weight"] = x.dot(w.weights());
  const auto cycle = edges_to_cycle(x);
  out["cycle"] = cycle ? json(cycle->order()) : json(nullptr);

  // Certify against the planted cycle when known, else against the output.
  std::optional<HamiltonianCycle> target;
  if (li.truth && !li.truth_is_path) target = HamiltonianCycle(*li.truth);
  else if (cycle) target = cycle;
  if (target) {
    const CertificateResult cert = certify(w, *target);
    out["certificate"] = {{"against", li.truth && !li.truth_is_path ? "truth" : "output"},
                          {"valid", cert.valid},
                          {"violating_edges", cert.violating_edges.size()}};
  } else {
    out["certificate"] = nullptr;
  }
  if (li.truth && !li.truth_is_path && x.is_integral()) {
    const Score s = score(x, HamiltonianCycle(*li.truth).edges());
    out["exact"] = s.exact;
    out["frac_misclassified"] = s.frac_misclassified;
  }
  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "algorithm " << algo << "  n " << w.vertices() << "  weight " << out["weight"].dump() << "\n";
    if (out.contains("class")) std::cout << "class " << out["class"].get<std::string>() << "\n";
    std::cout << "cycle " << out["cycle"].dump() << "\n";
  }
  return 0;
}

// Shared weight for raw-score graphs: the median over vertices of the
// heaviest incident edge.
double raw_replacement(const WeightedGraph& w) {
  std::vector<double> best(static_cast<std::size_t>(w.vertices()), -std::numeric_limits<double>::infinity());
  for (Index e = 0; e < w.indexer().edges(); ++e) {
    const auto [i, j] = w.indexer().decode(e);
    best[static_cast<std::size_t>(i)] = std::max(best[static_cast<std::size_t>(i)], w[e]);
    best[static_cast<std::size_t>(j)] = std::max(best[static_cast<std::size_t>(j)], w[e]);
  }
  std::sort(best.begin(), best.end());
  return best[best.size() / 2];
}

int cmd_reduce(const std::string& direction, const std::string& inner, const std::string& in,
               const std::string& model_spec, bool raw, std::optional<double> replacement, std::uint64_t seed,
               int workers) {
  const LoadedInstance li = load_instance(in, model_spec, raw);
  const WeightedGraph& w = li.weights;
  json out{{"direction", direction}, {"inner", inner}, {"n", w.vertices()}, {"seed", seed}};
  auto finish = [&](const auto& r, const std::vector<Vertex>& order, double weight) {
    out["estimate"] = order;
    out["weight"] = weight;
    out["inner_calls"] = r.inner_calls;
    out["candidates"] = r.candidates;
    out["replacement"] = r.replacement;
  };
  if (direction == "c2p") {
    const CycleEstimator est = make_cycle_estimator(inner);
    const auto r = replacement ? cycle_to_path(w, est, *replacement, seed, workers)
                   : li.model  ? cycle_to_path(w, est, *li.model, seed, workers)
                               : cycle_to_path(w, est, raw_replacement(w), seed, workers);
    finish(r, r.estimate.order(), r.estimate.weight(w));
  } else if (direction == "p2c") {
    const PathEstimator est = make_path_estimator(inner);
    const auto r = replacement ? path_to_cycle(w, est, *replacement, seed, workers)
                   : li.model  ? path_to_cycle(w, est, *li.model, seed, workers)
                               : path_to_cycle(w, est, raw_replacement(w), seed, workers);
    finish(r, r.estimate.order(), r.estimate.weight(w));
  } else {
    throw CLI::ValidationError("--direction", "expected c2p or p2c");
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_scaffold(const std::string& counts, const std::string& algo, bool path, const std::string& model_spec,
                 std::uint64_t seed, int workers) {
  const ContactMap cm = load_contact_map(counts);
  const BalancedMap b = ice_balance(cm);
  std::optional<WeightModel> m;
  if (!model_spec.empty()) m = WeightModel::parse(model_spec);
  const WeightedGraph w = balanced_to_instance(b, m);
  json out{{"contigs", cm.contigs()},
           {"kept", b.kept.size()},
           {"dropped", b.dropped},
           {"balance", {{"converged", b.report.converged},
                        {"iterations", b.report.iterations},
                        {"max_deviation", b.report.max_deviation}}},
           {"algorithm", algo},
           {"mode", path ? "path" : "cycle"},
           {"scores", m ? "poisson_llr" : "raw"}};
  auto original = [&](const std::vector<Vertex>& order) {
    std::vector<int> ids;
    for (Vertex v : order) ids.push_back(b.kept[static_cast<std::size_t>(v)]);
    return ids;
  };
  int status = 0;
  if (w.vertices() < 3) {
    out["order"] = original({0, 1});
  } else if (path) {
    const CycleEstimator est = make_cycle_estimator(algo);
    const double rep = raw_replacement(w);
    try {
      const auto r = cycle_to_path(w, est, rep, seed, workers);
      out["order"] = original(r.estimate.order());
      out["weight"] = r.estimate.weight(w);
      out["inner_calls"] = r.inner_calls;
    } catch (const EstimatorFailure& e) {
      out["order"] = nullptr;
      out["error"] = e.what();
      status = 2;
    }
  } else {
    if (algo == "f2f") out["class"] = to_string(solve_f2f(w).vertex_class);
    const auto c = make_cycle_estimator(algo).run(w, seed);
    if (c) {
      out["order"] = original(c->order());
      out["weight"] = c->weight(w);
    } else {
      out["order"] = nullptr;
      status = 2;
    }
  }
  std::cout << out.dump(2) << "\n";
  return status;
}

int cmd_sweep(const std::string& spec_path, const std::string& preset, const std::string& out_prefix,
              std::optional<int> workers, bool quiet) {
  SweepSpec spec;
  if (!spec_path.empty()) spec = parse_sweep_spec(read_file(spec_path));
  else spec = sweep_preset(preset.empty() ? "desk" : preset);
  if (!out_prefix.empty()) spec.output = out_prefix;
  if (workers) spec.workers = *workers;
  if (spec.output.empty()) spec.output = "sweep";
  ProgressFn progress;
  if (!quiet)
    progress = [](std::size_t done, std::size_t total) {
      if (done == total || done % 10 == 0) std::cerr << "\r" << done << "/" << total << std::flush;
    };
  const SweepResult r = run_sweep(spec, progress);
  if (!quiet) std::cerr << "\n";
  emit_results(r, spec.output);
  std::cout << spec.output << ".csv\n";
  if (r.failed_trials > 0) {
    std::cerr << r.failed_trials << " trial(s) had solver errors\n";
    return 1;
  }
  return 0;
}

int cmd_oracle_vertices(int n) {
  const VertexCatalog cat = enumerate_f2f_vertices(n);
  json verts = json::array();
  std::array<int, 4> counts{};
  for (std::size_t k = 0; k < cat.vertices.size(); ++k) {
    const auto cls = cat.reports[k].vertex_class;
    ++counts[static_cast<std::size_t>(cls)];
    verts.push_back({{"class", to_string(cls)}, {"edges", edge_list(cat.vertices[k])}});
  }
  json by_class = json::object();
  for (std::size_t c = 0; c < counts.size(); ++c) by_class[to_string(static_cast<VertexClass>(c))] = counts[c];
  std::cout << json{{"n", n}, {"count", cat.vertices.size()}, {"by_class", by_class}, {"vertices", verts}}.dump(2)
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hidden Hamiltonian cycle recovery"};
  app.require_subcommand(1);
  int status = 0;

  std::string model_spec, in, out, algo = "f2f", direction, inner, counts, spec_path, preset;
  int n = 0, iters = 1000, early_stop = 50, workers_opt = 1;
  std::uint64_t seed = 1;
  bool as_json = false, path = false, raw = false, quiet = false;
  std::optional<double> replacement;
  std::optional<int> sweep_workers;

  auto* th = app.add_subcommand("thresholds", "Divergences and sufficient-condition margins");
  th->add_option("--model", model_spec, "e.g. gaussian:mu=3, poisson:lambda=4,mu=1")->required();
  th->add_option("--n", n, "Number of vertices")->required()->check(CLI::Range(2, 1 << 30));
  th->callback([&] { status = cmd_thresholds(model_spec, n); });

  auto* gen = app.add_subcommand("generate", "Draw a planted instance");
  gen->add_option("--n", n)->required()->check(CLI::Range(2, 1 << 20));
  gen->add_option("--model", model_spec)->required();
  gen->add_option("--seed", seed);
  gen->add_option("--out", out)->required();
  gen->add_flag("--path", path, "Plant a Hamiltonian path instead of a cycle");
  gen->callback([&] { status = cmd_generate(n, model_spec, seed, out, path); });

  auto* solve = app.add_subcommand("solve", "Run one recovery algorithm");
  solve->add_option("--algo", algo)->check(CLI::IsMember({"f2f", "bp", "threshold", "nn", "gm", "spectral"}));
  solve->add_option("--in", in)->required()->check(CLI::ExistingFile);
  solve->add_option("--model", model_spec, "Override the sidecar model");
  solve->add_flag("--raw", raw, "Use the CSV values as weights");
  solve->add_option("--seed", seed);
  solve->add_option("--iters", iters)->check(CLI::NonNegativeNumber);
  solve->add_option("--early-stop", early_stop)->check(CLI::NonNegativeNumber);
  solve->add_flag("--json", as_json);
  solve->callback([&] { status = cmd_solve(algo, in, model_spec, raw, seed, iters, early_stop, as_json); });

  auto* red = app.add_subcommand("reduce", "Cycle/path reductions");
  red->add_option("--direction", direction)->required()->check(CLI::IsMember({"c2p", "p2c"}));
  red->add_option("--inner", inner)->required();
  red->add_option("--in", in)->required()->check(CLI::ExistingFile);
  red->add_option("--model", model_spec);
  red->add_flag("--raw", raw);
  red->add_option("--replacement", replacement, "Shared weight W (log-likelihood units)");
  red->add_option("--seed", seed);
  red->add_option("--workers", workers_opt)->check(CLI::PositiveNumber);
  red->callback(
      [&] { status = cmd_reduce(direction, inner, in, model_spec, raw, replacement, seed, workers_opt); });

  auto* sc = app.add_subcommand("scaffold", "Order contigs from a contact map");
  sc->add_option("--counts", counts)->required()->check(CLI::ExistingFile);
  sc->add_option("--algo", algo)->check(CLI::IsMember({"f2f", "bp", "nn", "gm", "spectral", "tsp"}));
  sc->add_flag("--path", path, "Recover a linear order via the cycle-to-path reduction");
  sc->add_option("--model", model_spec, "Poisson model for LLR scores; raw balanced scores otherwise");
  sc->add_option("--seed", seed);
  sc->add_option("--workers", workers_opt)->check(CLI::PositiveNumber);
  sc->callback([&] { status = cmd_scaffold(counts, algo, path, model_spec, seed, workers_opt); });

  auto* sw = app.add_subcommand("sweep", "Monte Carlo phase-transition sweep");
  sw->add_option("--spec", spec_path)->check(CLI::ExistingFile);
  sw->add_option("--preset", preset)->check(CLI::IsMember({"desk", "paper-fig7"}));
  sw->add_option("--out", out, "Output prefix");
  sw->add_option("--workers", sweep_workers)->check(CLI::PositiveNumber);
  sw->add_flag("--quiet", quiet);
  sw->callback([&] { status = cmd_sweep(spec_path, preset, out, sweep_workers, quiet); });

  auto* orc = app.add_subcommand("oracle", "Reference enumerations");
  orc->require_subcommand(1);
  auto* ov = orc->add_subcommand("vertices", "Extreme points of the fractional 2-factor polytope");
  ov->add_option("--n", n)->required()->check(CLI::Range(3, 6));
  ov->callback([&] { status = cmd_oracle_vertices(n); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return status;
}
