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

#ifndef GIBBSKIT_PSEUDO_DENSITY_H
#define GIBBSKIT_PSEUDO_DENSITY_H

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "gibbskit/pauli.h"

namespace gibbskit {

/// Local Pauli frame of one qubit subset S: every non-identity Pauli string
/// supported inside S, as a dense |S|-qubit matrix and as a parameter index.
struct SubsetFrame {
    std::vector<int> qubits;
    std::vector<int> params;
    std::vector<Eigen::MatrixXcd> paulis;
};

struct PseudoDensityLayout;

/// k-local pseudodensity matrix on n qubits.
///
/// Parameterized by the expectation values c_P = Tr(sigma P) of all Pauli
/// strings of weight 1..k, so that sigma_S = 2^{-|S|} (I + sum_{P in S} c_P P).
/// Shared coefficients make every pair of marginals consistent by
/// construction. Any c with sum |c_P| <= 1 is feasible.
class PseudoDensityMatrix {
   public:
    /// Empty placeholder; assign before use.
    PseudoDensityMatrix() = default;
    /// Maximally mixed (all c_P = 0). Requires 1 <= k <= n <= 12.
    PseudoDensityMatrix(int n, int k);

    /// Marginals of a dense n-qubit state.
    static PseudoDensityMatrix from_state(const Eigen::MatrixXcd &rho, int n, int k);
    /// Marginals of the product state (x)_q states[q].
    static PseudoDensityMatrix product(const std::vector<Eigen::Matrix2cd> &states, int k);

    int num_qubits() const;
    int locality() const;
    int num_parameters() const {
        return static_cast<int>(c_.size());
    }
    /// Pauli string of each parameter, ordered by weight, then support, then letters.
    const std::vector<PauliString> &basis() const;
    /// Parameter index of `p`, or -1 for identity and weights above k.
    int index_of(const PauliString &p) const;

    const Eigen::VectorXd &coefficients() const {
        return c_;
    }
    void set_coefficients(const Eigen::VectorXd &c);
    /// Tr(sigma P) for weight(P) <= k.
    double expectation(const PauliString &p) const;
    /// 2^{-n} Tr(sigma P), the coefficient of P in the global Pauli expansion.
    double normalized_coefficient(int index) const;

    /// sigma_S for ascending `qubits` with |S| <= k (empty S gives [1]).
    Eigen::MatrixXcd marginal(const std::vector<int> &qubits) const;
    const SubsetFrame &frame(const std::vector<int> &qubits) const;
    /// Frames of every subset of size 1..k.
    const std::vector<SubsetFrame> &frames() const;

    /// Smallest eigenvalue over all k-qubit marginals.
    double min_eigenvalue() const;
    bool feasible(double tol = 0) const {
        return min_eigenvalue() >= -tol;
    }

    /// lambda * this + (1 - lambda) * other.
    PseudoDensityMatrix mix(double lambda, const PseudoDensityMatrix &other) const;

   private:
    std::shared_ptr<const PseudoDensityLayout> layout_;
    Eigen::VectorXd c_;
};

/// Random feasible point: a Gaussian direction scaled to `fraction` of the
/// distance to the boundary of the feasible set. Usually not the marginals
/// of any global state.
PseudoDensityMatrix random_pseudo_density(int n, int k, uint64_t seed, double fraction = 0.9);

}  // namespace gibbskit

#endif
