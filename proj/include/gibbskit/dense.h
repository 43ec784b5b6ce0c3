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

#ifndef GIBBSKIT_DENSE_H
#define GIBBSKIT_DENSE_H

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "gibbskit/pauli.h"

namespace gibbskit {

/// Kronecker product a (x) b.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

/// Pauli string restricted to `qubits` (ascending), as a |qubits|-qubit string.
/// Letters outside `qubits` must be identity.
PauliString restrict_pauli(const PauliString &p, const std::vector<int> &qubits);

/// Embeds a |qubits|-qubit operator `op` into n qubits as op (x) I. `qubits`
/// must be ascending; op's first tensor factor acts on qubits[0].
Eigen::MatrixXcd embed_operator(const Eigen::MatrixXcd &op, const std::vector<int> &qubits, int n);

/// Reduced density matrix of the n-qubit `rho` on ascending `keep`.
Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd &rho, int n, const std::vector<int> &keep);

/// f(A) for Hermitian A through its eigendecomposition.
Eigen::MatrixXcd hermitian_function(const Eigen::MatrixXcd &a, const std::function<double(double)> &f);

/// Von Neumann entropy -Tr(rho ln rho); eigenvalues below `floor` contribute 0.
double von_neumann_entropy(const Eigen::MatrixXcd &rho, double floor = 1e-14);

/// Trace norm of a Hermitian matrix.
double trace_norm(const Eigen::MatrixXcd &a);

/// Operator norm of a Hermitian matrix.
double spectral_norm(const Eigen::MatrixXcd &a);

/// All ascending subsets of {0..n-1} of size m, in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int n, int m);

/// Random n-qubit density matrix W W^dag / Tr with W a complex Gaussian
/// d x rank matrix.
Eigen::MatrixXcd random_density_matrix(int n, int rank, uint64_t seed);

/// Random Hermitian d x d matrix with standard complex Gaussian entries.
Eigen::MatrixXcd random_hermitian(int d, uint64_t seed);

}  // namespace gibbskit

#endif
