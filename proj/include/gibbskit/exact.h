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

#ifndef GIBBSKIT_EXACT_H
#define GIBBSKIT_EXACT_H

#include <Eigen/Dense>

#include "gibbskit/pauli.h"

namespace gibbskit {

/// Default ceiling on n for dense materialization (a 4096 x 4096 eigensolve).
inline constexpr int kExactQubitCap = 12;

/// Ascending eigenvalues of a Hamiltonian, with eigenvectors on request.
struct Spectrum {
    int n = 0;
    Eigen::VectorXd eigenvalues;
    /// Columns are eigenvectors; empty unless requested.
    Eigen::MatrixXcd eigenvectors;

    bool has_vectors() const {
        return eigenvectors.size() > 0;
    }
    /// ln sum_i exp(s * e_i), stable for any real s.
    double log_trace_exp(double s) const;
    /// sum_i exp(s * e_i); exact 2^n at s = 0.
    double trace_exp(double s) const;
    /// Closed-interval count |{i : a <= e_i <= b}|.
    long count_in(double a, double b) const;
    /// <v_i|P|v_i> for every eigenvector; requires eigenvectors.
    Eigen::VectorXd pauli_diagonal(const PauliString &p) const;
    /// Tr(P e^{sH}) / Tr(e^{sH}) from a precomputed `pauli_diagonal`.
    double weighted_mean(const Eigen::VectorXd &diag, double s) const;
};

/// Dense 2^n x 2^n matrix of H; throws ValidationError when n > cap.
Eigen::MatrixXcd dense_matrix(const PauliSumHamiltonian &h, int cap = kExactQubitCap);

/// Full eigendecomposition. Uses the real symmetric solver when H is real.
Spectrum exact_spectrum(const PauliSumHamiltonian &h, bool with_vectors = false,
                        int cap = kExactQubitCap);

/// Tr(e^{-beta H}), beta >= 0.
double exact_partition(const PauliSumHamiltonian &h, double beta, int cap = kExactQubitCap);

/// ln Tr(e^{-beta H}), beta >= 0.
double exact_log_partition(const PauliSumHamiltonian &h, double beta, int cap = kExactQubitCap);

/// -(1/beta) ln Tr(e^{-beta H}), beta > 0.
double exact_free_energy(const PauliSumHamiltonian &h, double beta, int cap = kExactQubitCap);

/// Tr(P e^{-beta H}) / Tr(e^{-beta H}). Any real beta is accepted; a negative
/// beta gives the e^{+|beta| H} weighting used by the counting reductions.
double exact_gibbs_mean(const PauliSumHamiltonian &h, const PauliString &p, double beta,
                        int cap = kExactQubitCap);

/// Number of eigenvalues in the closed interval [a, b].
long count_eigenvalues(const PauliSumHamiltonian &h, double a, double b, int cap = kExactQubitCap);

/// Dense e^{sH}.
Eigen::MatrixXcd dense_expm(const PauliSumHamiltonian &h, double s, int cap = kExactQubitCap);

/// Dense Gibbs state e^{-beta H} / Z.
Eigen::MatrixXcd gibbs_state(const PauliSumHamiltonian &h, double beta, int cap = kExactQubitCap);

}  // namespace gibbskit

#endif
