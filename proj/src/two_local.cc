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

#include "gibbskit/two_local.h"

#include <algorithm>

#include "gibbskit/dense.h"
#include "gibbskit/errors.h"

namespace gibbskit {

TwoLocalView two_local_view(const PauliSumHamiltonian &h) {
    if (h.locality() > 2) {
        throw ValidationError("two-local view needs locality <= 2, got " +
                              std::to_string(h.locality()));
    }
    const int n = h.num_qubits();
    TwoLocalView view;
    view.n = n;
    view.identity = h.identity_coeff();
    for (const PauliTerm &t : h.terms()) {
        std::vector<int> sup = t.pauli.support();
        if (sup.size() == 2) {
            Eigen::Matrix4cd local = pauli_matrix(restrict_pauli(t.pauli, sup));
            auto key = std::make_pair(sup[0], sup[1]);
            auto it = view.blocks.find(key);
            if (it == view.blocks.end()) {
                view.blocks.emplace(key, t.coeff * local);
            } else {
                it->second += t.coeff * local;
            }
            continue;
        }
        if (n < 2) {
            throw ValidationError("single-qubit terms need n >= 2 to form pair blocks");
        }
        const int q = sup[0];
        const Eigen::Matrix2cd single = pauli_matrix(restrict_pauli(t.pauli, sup));
        const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
        const double share = t.coeff / (n - 1);
        for (int other = 0; other < n; ++other) {
            if (other == q) {
                continue;
            }
            auto key = std::make_pair(std::min(q, other), std::max(q, other));
            Eigen::Matrix4cd local = q < other ? kron(single, id) : kron(id, single);
            auto it = view.blocks.find(key);
            if (it == view.blocks.end()) {
                view.blocks.emplace(key, share * local);
            } else {
                it->second += share * local;
            }
        }
    }
    for (const auto &[key, block] : view.blocks) {
        double g = spectral_norm(block);
        view.gammas[key] = g;
        view.gamma_total += g;
        view.gamma_max = std::max(view.gamma_max, g);
    }
    if (view.gamma_max > 0) {
        view.degenerate = false;
        view.delta = view.gamma_total / (static_cast<double>(n) * n * view.gamma_max);
    }
    return view;
}

}  // namespace gibbskit
