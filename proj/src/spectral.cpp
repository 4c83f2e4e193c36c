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

#include "hhc/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hhc {

SpectralEmbedding spectral_embedding(const WeightedGraph& a) {
  const int n = a.vertices();
  if (n < 3) throw std::invalid_argument("spectral_embedding: n must be >= 3");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.dense());
  if (es.info() != Eigen::Success) throw std::runtime_error("spectral_embedding: eigensolver did not converge");
  SpectralEmbedding emb;
  emb.eigenvalues = es.eigenvalues().reverse();
  emb.coords.resize(n, 2);
  emb.coords.col(0) = es.eigenvectors().col(n - 2);
  emb.coords.col(1) = es.eigenvectors().col(n - 3);
  return emb;
}

HamiltonianCycle spectral_order(const WeightedGraph& a) {
  const SpectralEmbedding emb = spectral_embedding(a);
  const int n = a.vertices();
  const Eigen::RowVector2d centroid = emb.coords.colwise().mean();
  std::vector<double> angle(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const Eigen::RowVector2d p = emb.coords.row(v) - centroid;
    angle[static_cast<std::size_t>(v)] = std::atan2(p.y(), p.x());
  }
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex u, Vertex v) {
    return angle[static_cast<std::size_t>(u)] < angle[static_cast<std::size_t>(v)];
  });
  return HamiltonianCycle(std::move(order));
}

}  // namespace hhc
