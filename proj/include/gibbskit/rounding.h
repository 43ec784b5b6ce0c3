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

#ifndef GIBBSKIT_ROUNDING_H
#define GIBBSKIT_ROUNDING_H

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "gibbskit/pseudo_density.h"

namespace gibbskit {

/// Rounds a k-local pseudodensity matrix to a dense n-qubit state:
///
///   rho = (1/k) sum_{m<k} E_{|C|=m} sum_x p_C(x) |psi_x><psi_x|_C (x) prod_{i not in C} rho_i^(x)
///
/// where x ranges over a Pauli basis (X, Y or Z) and outcome per qubit of C,
/// p_C(x) = 3^{-m} <psi_x|sigma_C|psi_x>, and rho_i^(x) is the state of qubit i
/// conditioned on outcome x. Evaluated exactly. Requires n <= 8 and
/// k <= locality; throws ValidationError if some p_C(x) < -tol.
Eigen::MatrixXcd round_pseudo_density(const PseudoDensityMatrix &sigma, int k, double tol = 1e-10);

/// Lambda^{(x)l}(Q) for an l-qubit Hermitian Q (l <= 4): the array
/// 3^{-l} <psi_x|Q|psi_x> over outcomes x in ({X,Y,Z} x {+,-})^l. Per qubit
/// the outcome index is 2 b + r with b = 0, 1, 2 for X, Y, Z and r = 0 for
/// the +1 eigenstate; qubit 0 is the most significant base-6 digit.
Eigen::VectorXd measurement_channel(const Eigen::MatrixXcd &q);

/// A t-local pseudodistribution over n variables with alphabet size d.
class Pseudodistribution {
   public:
    /// Returns the joint distribution of ascending `vars`, indexed base d with
    /// vars[0] most significant.
    using Marginal = std::function<Eigen::VectorXd(const std::vector<int> &)>;

    Pseudodistribution(int n, int d, int t, Marginal marginal);

    /// q_S = Lambda^{(x)|S|}(sigma_S); alphabet 6, locality of sigma.
    static Pseudodistribution measured(const PseudoDensityMatrix &sigma);
    /// Independent variables with the given single-variable distributions.
    static Pseudodistribution product(const std::vector<Eigen::VectorXd> &dists);

    int num_variables() const {
        return n_;
    }
    int alphabet() const {
        return d_;
    }
    int locality() const {
        return t_;
    }
    Eigen::VectorXd marginal(const std::vector<int> &vars) const;

   private:
    int n_;
    int d_;
    int t_;
    Marginal marginal_;
};

struct OneNormCheck {
    double lhs = 0;
    double bound = 0;
    bool holds = false;
};

/// Evaluates (1/k) sum_{m<k} E_{|C|=m} E_{(i,j)~omega} || p_ij - E_{x_C} p_{i|x_C} p_{j|x_C} ||_1
/// exactly and compares it with sqrt(2 ln d / (k Delta)). Pairs touching C
/// contribute zero by marginal consistency. Requires k < locality(p),
/// omega a distribution with zero diagonal and Delta n^2 omega <= 1.
/// Throws ValidationError on inconsistent marginals.
OneNormCheck pseudodistribution_1norm_check(const Pseudodistribution &p, const Eigen::MatrixXd &omega,
                                            double delta, int k);

/// Uniform omega over ordered pairs i != j and its largest admissible Delta, (n-1)/n.
Eigen::MatrixXd uniform_pair_weights(int n);
double uniform_pair_delta(int n);

}  // namespace gibbskit

#endif
