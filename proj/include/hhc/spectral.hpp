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

namespace hhc {

struct SpectralEmbedding {
  // Row v holds vertex v at (v2_v, v3_v), the entries of the eigenvectors of
  // the second and third largest eigenvalues.
  Eigen::MatrixX2d coords;
  // All eigenvalues, descending.
  Eigen::VectorXd eigenvalues;
};

// Eigendecomposition of the symmetric matrix of A; erased entries count as 0.
// Throws std::runtime_error if the eigensolver does not converge.
SpectralEmbedding spectral_embedding(const WeightedGraph& a);

// Orders vertices by the angle of their embedding around its centroid (ties
// to the smaller index) and closes the order into a cycle.
HamiltonianCycle spectral_order(const WeightedGraph& a);

}  // namespace hhc
