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

#include "hhc/contact_map.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace hhc {
namespace {

bool parse_header(const std::string& line, int& n) {
  if (line.rfind("#n=", 0) != 0) return false;
  std::istringstream ss(line.substr(3));
  long v = -1;
  std::string rest;
  if (!(ss >> v) || (ss >> rest) || v < 1) return false;
  n = static_cast<int>(v);
  return true;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

double parse_count(const std::string& token, int line_no) {
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ContactMapParseError("malformed number '" + token + "'", line_no);
  }
  if (used != token.size() || !std::isfinite(v)) throw ContactMapParseError("malformed number '" + token + "'", line_no);
  if (v < 0.0) throw ContactMapParseError("negative count " + token, line_no);
  return v;
}

ContactMap read_dense(std::istream& in, int n) {
  Eigen::MatrixXd counts(n, n);
  std::string line;
  int line_no = 1, row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (row >= n) throw ContactMapParseError("more than " + std::to_string(n) + " rows", line_no);
    std::istringstream ss(line);
    std::string tok;
    int col = 0;
    while (ss >> tok) {
      if (col >= n) throw ContactMapParseError("row has more than " + std::to_string(n) + " entries", line_no);
      counts(row, col++) = parse_count(tok, line_no);
    }
    if (col != n) throw ContactMapParseError("row has " + std::to_string(col) + " entries, expected " + std::to_string(n), line_no);
    for (int j = 0; j < row; ++j)
      if (counts(row, j) != counts(j, row))
        throw ContactMapParseError("asymmetric entry at (" + std::to_string(row) + ", " + std::to_string(j) + ")", line_no);
    ++row;
  }
  if (row != n) throw ContactMapParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(row), line_no);
  counts.diagonal().setZero();
  return ContactMap{std::move(counts)};
}

}  // namespace

ContactMap make_contact_map(Eigen::MatrixXd counts) {
  if (counts.rows() != counts.cols() || counts.rows() < 1)
    throw std::invalid_argument("make_contact_map: counts must be a non-empty square matrix");
  if (!counts.allFinite() || (counts.array() < 0.0).any())
    throw std::invalid_argument("make_contact_map: counts must be finite and nonnegative");
  if (counts != counts.transpose()) throw std::invalid_argument("make_contact_map: counts must be symmetric");
  counts.diagonal().setZero();
  return ContactMap{std::move(counts)};
}

ContactMap read_contact_map(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::map<std::pair<int, int>, double> pairs;
  int n = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (first) {
      first = false;
      int header_n;
      if (parse_header(line, header_n)) return read_dense(in, header_n);
    }
    if (blank(line)) continue;
    if (line[0] == '#') {
      int header_n;
      if (parse_header(line, header_n)) n = std::max(n, header_n);
      continue;
    }
    std::istringstream ss(line);
    std::string a, b, c, extra;
    if (!(ss >> a >> b >> c) || (ss >> extra)) throw ContactMapParseError("expected 'i j count'", line_no);
    long i, j;
    try {
      std::size_t ui = 0, uj = 0;
      i = std::stol(a, &ui);
      j = std::stol(b, &uj);
      if (ui != a.size() || uj != b.size()) throw std::invalid_argument("index");
    } catch (const std::exception&) {
      throw ContactMapParseError("malformed contig index", line_no);
    }
    if (i < 0 || j < 0) throw ContactMapParseError("negative contig index", line_no);
    const double v = parse_count(c, line_no);
    n = std::max<int>(n, static_cast<int>(std::max(i, j)) + 1);
    if (i == j) continue;
    pairs[{static_cast<int>(std::min(i, j)), static_cast<int>(std::max(i, j))}] += v;
  }
  if (n == 0) throw ContactMapParseError("no contigs", line_no);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [ij, v] : pairs) {
    counts(ij.first, ij.second) = v;
    counts(ij.second, ij.first) = v;
  }
  return ContactMap{std::move(counts)};
}

ContactMap load_contact_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_contact_map(in);
}

BalancedMap ice_balance(const ContactMap& c, int max_iters, double tol) {
  const int n = c.contigs();
  BalancedMap out;
  for (int i = 0; i < n; ++i) {
    if (c.counts.row(i).sum() > 0.0)
      out.kept.push_back(i);
    else
      out.dropped.push_back(i);
  }
  const int k = static_cast<int>(out.kept.size());
  Eigen::MatrixXd counts(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) counts(a, b) = c.counts(out.kept[a], out.kept[b]);
  out.total_counts = counts.sum();

  Eigen::VectorXd bias = Eigen::VectorXd::Ones(k);
  Eigen::MatrixXd w = counts;
  int it = 0;
  for (;; ++it) {
    const Eigen::VectorXd rows = w.rowwise().sum();
    out.report.max_deviation = k == 0 ? 0.0 : (rows.array() - 1.0).abs().maxCoeff();
    if (out.report.max_deviation < tol) {
      out.report.converged = true;
      break;
    }
    if (it == max_iters) break;
    // Scaling w directly by sqrt(r_i r_j) keeps exact cases exact.
    bias.array() /= rows.array().sqrt();
    w.array() /= (rows * rows.transpose()).array().sqrt();
  }
  out.report.iterations = it;
  out.weights = std::move(w);
  out.bias = std::move(bias);
  return out;
}

WeightedGraph balanced_to_instance(const BalancedMap& b, const std::optional<WeightModel>& m) {
  const int k = static_cast<int>(b.weights.rows());
  if (k < 2) throw std::invalid_argument("balanced_to_instance: need at least two kept contigs");
  const EdgeIndexer ix(k);
  Eigen::VectorXd w(ix.edges());
  for (Index e = 0; e < ix.edges(); ++e) {
    const auto [i, j] = ix.decode(e);
    w[e] = b.weights(i, j);
  }
  if (m) {
    if (m->family != Family::Poisson)
      throw std::invalid_argument("balanced_to_instance: only a Poisson model can score balanced counts");
    const double total = b.weights.sum();
    const double scale = total > 0.0 ? b.total_counts / total : 1.0;
    for (Index e = 0; e < w.size(); ++e) w[e] = m->llr_relaxed(scale * w[e]);
  }
  return WeightedGraph(k, std::move(w));
}

}  // namespace hhc
