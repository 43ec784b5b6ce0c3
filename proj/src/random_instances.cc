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

#include "gibbskit/random_instances.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "gibbskit/errors.h"
#include "gibbskit/rng.h"

namespace gibbskit {

namespace {

constexpr char kLetters[3] = {'X', 'Y', 'Z'};

double uniform_sym(Rng &rng, double scale) {
    return scale * (2.0 * uniform01(rng) - 1.0);
}

}  // namespace

PauliSumHamiltonian random_k_local(int n, int k, int num_terms, double scale, uint64_t seed) {
    if (k < 1 || k > n) {
        throw ValidationError("random_k_local needs 1 <= k <= n");
    }
    Rng rng(seed);
    std::vector<PauliTerm> terms;
    std::vector<int> qubits(n);
    for (int t = 0; t < num_terms; ++t) {
        std::iota(qubits.begin(), qubits.end(), 0);
        // Partial Fisher-Yates for a uniform k-subset.
        for (int i = 0; i < k; ++i) {
            int j = i + static_cast<int>(uniform_below(rng, n - i));
            std::swap(qubits[i], qubits[j]);
        }
        std::string s(n, 'I');
        for (int i = 0; i < k; ++i) {
            s[qubits[i]] = kLetters[uniform_below(rng, 3)];
        }
        terms.push_back({PauliString::parse(s), uniform_sym(rng, scale)});
    }
    return PauliSumHamiltonian(n, std::move(terms));
}

PauliSumHamiltonian random_dense_two_local(int n, double scale, uint64_t seed) {
    Rng rng(seed);
    std::vector<PauliTerm> terms;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (char a : kLetters) {
                for (char b : kLetters) {
                    std::string s(n, 'I');
                    s[i] = a;
                    s[j] = b;
                    terms.push_back({PauliString::parse(s), uniform_sym(rng, scale)});
                }
            }
        }
        for (char a : kLetters) {
            terms.push_back({PauliString::single(n, i, a), uniform_sym(rng, scale)});
        }
    }
    return PauliSumHamiltonian(n, std::move(terms));
}

PauliSumHamiltonian complete_graph_zz(int n, double coupling) {
    std::vector<PauliTerm> terms;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::string s(n, 'I');
            s[i] = 'Z';
            s[j] = 'Z';
            terms.push_back({PauliString::parse(s), coupling});
        }
    }
    return PauliSumHamiltonian(n, std::move(terms));
}

PauliSumHamiltonian normalize_norm_bound(const PauliSumHamiltonian &h, double target) {
    double b = pauli_norm_bound(h);
    if (b == 0) {
        return h;
    }
    return h.scaled(target / b);
}

}  // namespace gibbskit
