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
#include "hhc/model.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhc {

// Symmetric, nonnegative contig-by-contig contact counts with zero diagonal.
struct ContactMap {
  Eigen::MatrixXd counts;
  int contigs() const { return static_cast<int>(counts.rows()); }
};

class ContactMapParseError : public std::runtime_error {
 public:
  ContactMapParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Two text formats are accepted.
//
// Dense: the first line is `#n=<count>`, followed by exactly n rows of n
// numbers separated by tabs or spaces. The matrix must be exactly symmetric;
// the diagonal is ignored.
//
// Triplets: any other file. Each non-empty line not starting with `#` is
// `i j count` with 0-based contig indices. Every line adds its count to the
// unordered pair {i, j}, so repeated pairs (in either orientation) are
// summed; lines with i == j are ignored. The contig count is one more than
// the largest index seen, unless a `#n=<count>` comment line raises it.
ContactMap read_contact_map(std::istream& in);
ContactMap load_contact_map(const std::string& path);

// Validates symmetry, nonnegativity and finiteness, and zeroes the diagonal.
ContactMap make_contact_map(Eigen::MatrixXd counts);

struct BalanceReport {
  bool converged = false;
  int iterations = 0;
  double max_deviation = 0.0;  // max_i |sum_j w_ij - 1|
};

struct BalancedMap {
  // Balanced weights w_ij = b_i b_j N_ij over the kept contigs.
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
  // kept[k] is the original index of row k; dropped lists contigs whose
  // counts were all zero.
  std::vector<int> kept;
  std::vector<int> dropped;
  // Sum of the raw counts over kept contigs, for mapping back to count units.
  double total_counts = 0.0;
  BalanceReport report;
};

// Symmetric Sinkhorn balancing: starting from b = 1, repeat
// b_i <- b_i / sqrt(sum_j b_i b_j N_ij) until every row sum of w is within
// `tol` of 1 or `max_iters` updates were made. Non-convergence is reported,
// not thrown; the last iterate is returned.
BalancedMap ice_balance(const ContactMap& c, int max_iters = 1000, double tol = 1e-8);

// Weighted graph over the kept contigs. Without a model the balanced weights
// are the scores. With a Poisson model they are first rescaled to count
// units (so the total matches the raw total) and mapped through the affine
// Poisson log-likelihood ratio.
WeightedGraph balanced_to_instance(const BalancedMap& b, const std::optional<WeightModel>& m = std::nullopt);

}  // namespace hhc
