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

#ifndef GIBBSKIT_TWO_LOCAL_H
#define GIBBSKIT_TWO_LOCAL_H

#include <map>
#include <utility>

#include <Eigen/Dense>

#include "gibbskit/pauli.h"

namespace gibbskit {

/// Pairwise decomposition H = c I + sum_{i<j} H_ij of a 2-local Hamiltonian.
///
/// Each unordered pair is stored once and Gamma sums over unordered pairs.
/// Single-qubit terms on qubit q are split evenly across the n-1 blocks
/// containing q, so that the blocks reconstruct H exactly.
struct TwoLocalView {
    int n = 0;
    double identity = 0;
    /// 4x4 block on (i, j), i < j; qubit i is the first tensor factor.
    std::map<std::pair<int, int>, Eigen::Matrix4cd> blocks;
    std::map<std::pair<int, int>, double> gammas;
    double gamma_total = 0;
    double gamma_max = 0;
    /// Gamma / (n^2 max Gamma_ij); 0 when `degenerate`.
    double delta = 0;
    /// Set when every block vanishes and delta is undefined.
    bool degenerate = true;

    /// sum_{ij} Tr(H_ij sigma_ij) given a callback for the two-qubit marginals.
    template <typename Marginal>
    double energy(Marginal &&marginal) const {
        double e = identity;
        for (const auto &[pair, block] : blocks) {
            Eigen::Matrix4cd sigma = marginal(pair.first, pair.second);
            e += (block * sigma).trace().real();
        }
        return e;
    }
};

TwoLocalView two_local_view(const PauliSumHamiltonian &h);

}  // namespace gibbskit

#endif
