// Copyright 2026 The gibbskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GIBBSKIT_RANDOM_INSTANCES_H
#define GIBBSKIT_RANDOM_INSTANCES_H

#include <cstdint>

#include "gibbskit/pauli.h"

namespace gibbskit {

/// `num_terms` random Pauli strings, each of weight exactly `k` on a uniformly
/// random support, with coefficients uniform in [-scale, scale].
PauliSumHamiltonian random_k_local(int n, int k, int num_terms, double scale, uint64_t seed);

/// Random 2-local Hamiltonian touching every pair: each pair gets a random
/// combination of the nine two-qubit Pauli products, plus random fields.
PauliSumHamiltonian random_dense_two_local(int n, double scale, uint64_t seed);

/// J * sum_{i<j} Z_i Z_j.
PauliSumHamiltonian complete_graph_zz(int n, double coupling);

/// Same Hamiltonian with every coefficient rescaled so that the sum of
/// magnitudes equals `target`.
PauliSumHamiltonian normalize_norm_bound(const PauliSumHamiltonian &h, double target);

}  // namespace gibbskit

#endif
