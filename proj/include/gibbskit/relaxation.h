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

#ifndef GIBBSKIT_RELAXATION_H
#define GIBBSKIT_RELAXATION_H

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "gibbskit/pauli.h"
#include "gibbskit/pseudo_density.h"
#include "gibbskit/two_local.h"

namespace gibbskit {

/// Largest n accepted by the dense relaxation and rounding routines.
constexpr int kRelaxationQubitCap = 8;

struct PseudoEntropy {
    double value = 0;
    /// Minimizing conditioning set C (first in size-then-lexicographic order).
    std::vector<int> subset;
};

/// S_k(sigma) = min over |C| < k of S(C) + sum_{j not in C} S(j | C), with
/// natural-log entropies. Throws ValidationError if a marginal has an
/// eigenvalue below -tol.
PseudoEntropy pseudo_entropy_detail(const PseudoDensityMatrix &sigma, double tol = 1e-10);
double pseudo_entropy(const PseudoDensityMatrix &sigma, double tol = 1e-10);

/// sum_{ij} Tr(H_ij sigma_ij), including the identity offset.
double relaxed_energy(const PseudoDensityMatrix &sigma, const TwoLocalView &v);

/// f_k(sigma) = relaxed_energy - S_k(sigma).
double relaxed_objective(const PseudoDensityMatrix &sigma, const TwoLocalView &v);

struct RelaxationOptions {
    /// Target bound on f_k(sigma*) - min f_k.
    double tol = 1e-8;
    int max_iterations = 2000;
    double mu_initial = 1.0;
    double mu_factor = 0.1;
};

struct RelaxationResult {
    double f_k_star = 0;
    PseudoDensityMatrix sigma;
    double energy = 0;
    double pseudo_entropy = 0;
    int iterations = 0;
    double mu_final = 0;
    /// Duality-gap bound of the final barrier subproblem.
    double gap_bound = 0;
};

/// Minimizes f_k over k-local pseudodensity matrices.
///
/// f_k is the pointwise max of the convex functions E - S(C) - sum_j S(j|C),
/// so the problem is solved in epigraph form: minimize t subject to each of
/// them being at most t and every k-qubit marginal being positive definite,
/// with a logarithmic barrier and damped Newton steps while the barrier
/// weight mu shrinks. Throws NumericalError when the iteration budget runs out.
RelaxationResult minimize_relaxation(const TwoLocalView &v, int k,
                                     const RelaxationOptions &opts = RelaxationOptions{});

struct EnergyGap {
    double energy_relaxed = 0;
    double energy_rounded = 0;
    double absolute = 0;
    /// absolute / Gamma; 0 when the Hamiltonian has no pairwise weight.
    double per_gamma = 0;
};

/// |Tr(H rho) - sum_{ij} Tr(H_ij sigma_ij)| and its ratio to Gamma.
EnergyGap energy_gap_report(const PseudoDensityMatrix &sigma, const Eigen::MatrixXcd &rho,
                            const TwoLocalView &v);

struct DenseFreeEnergyResult {
    int n = 0;
    int k = 0;
    double beta = 1;
    /// Lower bound min f_k, in units of free energy (divided by beta).
    double f_k_star = 0;
    double pseudo_entropy = 0;
    double energy_relaxed = 0;
    double energy_rounded = 0;
    double entropy_rounded = 0;
    /// Variational upper bound Tr(H rho) - S(rho) / beta.
    double f_rounded = 0;
    std::optional<double> f_exact;
    EnergyGap gap;
    RelaxationResult solver;
    Eigen::MatrixXcd rho;
};

/// Full lower/upper free-energy bracket for a 2-local H at inverse
/// temperature beta: relaxation of beta H, rounding, and the exact value
/// when `with_exact` is set.
DenseFreeEnergyResult dense_free_energy(const PauliSumHamiltonian &h, double beta, int k,
                                        const RelaxationOptions &opts = RelaxationOptions{},
                                        bool with_exact = true);

nlohmann::json to_json(const DenseFreeEnergyResult &r, double tol);

}  // namespace gibbskit

#endif
