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

#include "gibbskit/rounding.h"

#include <algorithm>
#include <cmath>

#include "gibbskit/dense.h"
#include "gibbskit/errors.h"
#include "gibbskit/relaxation.h"

namespace gibbskit {

namespace {

// Eigenstates |psi_{b,r}> of X, Y, Z with eigenvalue (-1)^r.
Eigen::Vector2cd basis_state(int b, int r) {
    const double h = 1 / std::sqrt(2.0);
    const double s = r == 0 ? 1.0 : -1.0;
    switch (b) {
        case 0:
            return Eigen::Vector2cd(h, s * h);
        case 1:
            return Eigen::Vector2cd(h, Complex(0, s * h));
        default:
            return r == 0 ? Eigen::Vector2cd(1, 0) : Eigen::Vector2cd(0, 1);
    }
}

Eigen::VectorXcd kron_vectors(const std::vector<Eigen::Vector2cd> &factors) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
    for (const Eigen::Vector2cd &f : factors) {
        Eigen::VectorXcd next(v.size() * 2);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            next[2 * i] = v[i] * f[0];
            next[2 * i + 1] = v[i] * f[1];
        }
        v = std::move(next);
    }
    return v;
}

long power(long base, int e) {
    long out = 1;
    for (int i = 0; i < e; ++i) {
        out *= base;
    }
    return out;
}

// Base-6 digits of x, most significant first.
std::vector<int> digits(long x, int len, int base) {
    std::vector<int> out(len);
    for (int i = len - 1; i >= 0; --i) {
        out[i] = static_cast<int>(x % base);
        x /= base;
    }
    return out;
}

double binomial(int n, int m) {
    double out = 1;
    for (int i = 0; i < m; ++i) {
        out = out * (n - i) / (i + 1);
    }
    return out;
}

// Joint of (x_C, y_i) from the marginal on C + {i}, as a d^|C| x d matrix.
Eigen::MatrixXd joint_with(const Pseudodistribution &p, const std::vector<int> &c, int i) {
    std::vector<int> s = c;
    s.insert(std::upper_bound(s.begin(), s.end(), i), i);
    const int pos = static_cast<int>(std::find(s.begin(), s.end(), i) - s.begin());
    const int d = p.alphabet();
    Eigen::VectorXd joint = p.marginal(s);
    Eigen::MatrixXd out(power(d, static_cast<int>(c.size())), d);
    for (Eigen::Index idx = 0; idx < joint.size(); ++idx) {
        std::vector<int> dig = digits(idx, static_cast<int>(s.size()), d);
        long x = 0;
        for (int q = 0; q < static_cast<int>(s.size()); ++q) {
            if (q != pos) {
                x = x * d + dig[q];
            }
        }
        out(x, dig[pos]) = joint[idx];
    }
    return out;
}

}  // namespace

Eigen::MatrixXcd round_pseudo_density(const PseudoDensityMatrix &sigma, int k, double tol) {
    const int n = sigma.num_qubits();
    if (n > kRelaxationQubitCap) {
        throw ValidationError("rounding materializes 2^n states; n must be at most " +
                              std::to_string(kRelaxationQubitCap));
    }
    if (k < 1 || k > sigma.locality()) {
        throw ValidationError("rounding needs 1 <= k <= locality");
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (int m = 0; m < k; ++m) {
        const std::vector<std::vector<int>> subsets = subsets_of_size(n, m);
        const double weight = 1.0 / (k * static_cast<double>(subsets.size()));
        const long outcomes = power(6, m);
        for (const std::vector<int> &c : subsets) {
            const Eigen::MatrixXcd sigma_c = sigma.marginal(c);
            std::vector<int> rest;
            std::vector<Eigen::MatrixXcd> joint;
            std::vector<int> slot;
            for (int i = 0; i < n; ++i) {
                if (!std::binary_search(c.begin(), c.end(), i)) {
                    std::vector<int> s = c;
                    s.insert(std::upper_bound(s.begin(), s.end(), i), i);
                    rest.push_back(i);
                    joint.push_back(sigma.marginal(s));
                    slot.push_back(static_cast<int>(std::find(s.begin(), s.end(), i) - s.begin()));
                }
            }
            for (long x = 0; x < outcomes; ++x) {
                std::vector<int> dig = digits(x, m, 6);
                std::vector<Eigen::Vector2cd> psi(m);
                for (int q = 0; q < m; ++q) {
                    psi[q] = basis_state(dig[q] / 2, dig[q] % 2);
                }
                Eigen::VectorXcd psi_c = kron_vectors(psi);
                const double mass = (psi_c.adjoint() * sigma_c * psi_c).value().real();
                if (mass < -tol) {
                    throw ValidationError("rounding met a negative outcome probability");
                }
                if (mass <= 1e-15) {
                    continue;
                }
                std::vector<Eigen::Matrix2cd> factor(n);
                for (int q = 0; q < m; ++q) {
                    factor[c[q]] = psi[q] * psi[q].adjoint();
                }
                for (size_t r = 0; r < rest.size(); ++r) {
                    Eigen::Matrix2cd cond;
                    std::vector<Eigen::VectorXcd> v(2);
                    for (int a = 0; a < 2; ++a) {
                        std::vector<Eigen::Vector2cd> f = psi;
                        f.insert(f.begin() + slot[r], a == 0 ? Eigen::Vector2cd(1, 0) : Eigen::Vector2cd(0, 1));
                        v[a] = kron_vectors(f);
                    }
                    for (int a = 0; a < 2; ++a) {
                        for (int b = 0; b < 2; ++b) {
                            cond(a, b) = (v[a].adjoint() * joint[r] * v[b]).value();
                        }
                    }
                    factor[rest[r]] = cond / mass;
                }
                Eigen::MatrixXcd term = Eigen::MatrixXcd::Ones(1, 1);
                for (int q = 0; q < n; ++q) {
                    term = kron(term, factor[q]);
                }
                // sum over x of p_C(x) with p_C(x) = mass / 3^m
                rho += (weight * mass / static_cast<double>(power(3, m))) * term;
            }
        }
    }
    return rho;
}

Eigen::VectorXd measurement_channel(const Eigen::MatrixXcd &q) {
    const Eigen::Index d = q.rows();
    if (q.cols() != d || d < 2 || (d & (d - 1)) != 0 || d > 16) {
        throw ValidationError("measurement channel needs a 2^l x 2^l matrix with 1 <= l <= 4");
    }
    int l = 0;
    while ((Eigen::Index{1} << l) < d) {
        ++l;
    }
    const long outcomes = power(6, l);
    const double scale = 1.0 / static_cast<double>(power(3, l));
    Eigen::VectorXd out(outcomes);
    for (long x = 0; x < outcomes; ++x) {
        std::vector<int> dig = digits(x, l, 6);
        std::vector<Eigen::Vector2cd> psi(l);
        for (int i = 0; i < l; ++i) {
            psi[i] = basis_state(dig[i] / 2, dig[i] % 2);
        }
        Eigen::VectorXcd v = kron_vectors(psi);
        out[x] = scale * (v.adjoint() * q * v).value().real();
    }
    return out;
}

Pseudodistribution::Pseudodistribution(int n, int d, int t, Marginal marginal)
    : n_(n), d_(d), t_(t), marginal_(std::move(marginal)) {
    if (n < 1 || d < 2 || t < 1 || t > n) {
        throw ValidationError("pseudodistribution needs n >= 1, d >= 2 and 1 <= t <= n");
    }
}

Pseudodistribution Pseudodistribution::measured(const PseudoDensityMatrix &sigma) {
    return Pseudodistribution(sigma.num_qubits(), 6, sigma.locality(),
                              [sigma](const std::vector<int> &vars) {
                                  return measurement_channel(sigma.marginal(vars));
                              });
}

Pseudodistribution Pseudodistribution::product(const std::vector<Eigen::VectorXd> &dists) {
    if (dists.empty()) {
        throw ValidationError("product pseudodistribution needs at least one variable");
    }
    const Eigen::Index d = dists[0].size();
    for (const Eigen::VectorXd &p : dists) {
        if (p.size() != d) {
            throw ValidationError("all variables must share one alphabet");
        }
    }
    return Pseudodistribution(static_cast<int>(dists.size()), static_cast<int>(d),
                              static_cast<int>(dists.size()), [dists](const std::vector<int> &vars) {
                                  Eigen::VectorXd v = Eigen::VectorXd::Ones(1);
                                  for (int i : vars) {
                                      Eigen::VectorXd next(v.size() * dists[i].size());
                                      for (Eigen::Index a = 0; a < v.size(); ++a) {
                                          next.segment(a * dists[i].size(), dists[i].size()) =
                                              v[a] * dists[i];
                                      }
                                      v = std::move(next);
                                  }
                                  return v;
                              });
}

Eigen::VectorXd Pseudodistribution::marginal(const std::vector<int> &vars) const {
    if (static_cast<int>(vars.size()) > t_ || !std::is_sorted(vars.begin(), vars.end()) ||
        std::adjacent_find(vars.begin(), vars.end()) != vars.end() ||
        (!vars.empty() && (vars.front() < 0 || vars.back() >= n_))) {
        throw ValidationError("marginal needs an ascending subset of at most t variables");
    }
    if (vars.empty()) {
        return Eigen::VectorXd::Ones(1);
    }
    return marginal_(vars);
}

OneNormCheck pseudodistribution_1norm_check(const Pseudodistribution &p, const Eigen::MatrixXd &omega,
                                            double delta, int k) {
    const int n = p.num_variables();
    const int d = p.alphabet();
    if (k < 1 || k >= p.locality()) {
        throw ValidationError("the bound needs 1 <= k < locality of the pseudodistribution");
    }
    if (omega.rows() != n || omega.cols() != n) {
        throw ValidationError("omega must be n x n");
    }
    if (!(delta > 0)) {
        throw ValidationError("Delta must be positive");
    }
    if (omega.minCoeff() < 0 || std::abs(omega.sum() - 1) > 1e-9 || omega.diagonal().cwiseAbs().maxCoeff() > 0) {
        throw ValidationError("omega must be a distribution with zero diagonal");
    }
    if (delta * n * n * omega.maxCoeff() > 1 + 1e-12) {
        throw ValidationError("omega violates Delta n^2 omega <= 1");
    }

    double lhs = 0;
    for (int m = 0; m < k; ++m) {
        const std::vector<std::vector<int>> subsets = subsets_of_size(n, m);
        const double weight = 1.0 / (k * binomial(n, m));
        for (const std::vector<int> &c : subsets) {
            const Eigen::VectorXd pc = p.marginal(c);
            std::vector<Eigen::MatrixXd> joint(n);
            for (int i = 0; i < n; ++i) {
                if (std::binary_search(c.begin(), c.end(), i)) {
                    continue;
                }
                joint[i] = joint_with(p, c, i);
                if ((joint[i].rowwise().sum() - pc).cwiseAbs().maxCoeff() > 1e-9) {
                    throw ValidationError("pseudodistribution marginals are inconsistent");
                }
                if (joint[i].minCoeff() < -1e-12) {
                    throw ValidationError("pseudodistribution has negative probabilities");
                }
            }
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (i == j || omega(i, j) == 0 || joint[i].size() == 0 || joint[j].size() == 0) {
                        continue;
                    }
                    Eigen::MatrixXd cond = Eigen::MatrixXd::Zero(d, d);
                    for (Eigen::Index x = 0; x < pc.size(); ++x) {
                        if (pc[x] > 0) {
                            cond += joint[i].row(x).transpose() * joint[j].row(x) / pc[x];
                        }
                    }
                    Eigen::VectorXd pij = p.marginal({std::min(i, j), std::max(i, j)});
                    Eigen::MatrixXd pair = Eigen::Map<Eigen::MatrixXd>(pij.data(), d, d).transpose();
                    if (i > j) {
                        pair.transposeInPlace();
                    }
                    lhs += weight * omega(i, j) * (pair - cond).cwiseAbs().sum();
                }
            }
        }
    }
    OneNormCheck out;
    out.lhs = lhs;
    out.bound = std::sqrt(2 * std::log(static_cast<double>(d)) / (k * delta));
    out.holds = out.lhs <= out.bound;
    return out;
}

Eigen::MatrixXd uniform_pair_weights(int n) {
    if (n < 2) {
        throw ValidationError("pair weights need n >= 2");
    }
    Eigen::MatrixXd w = Eigen::MatrixXd::Constant(n, n, 1.0 / (n * (n - 1.0)));
    w.diagonal().setZero();
    return w;
}

double uniform_pair_delta(int n) {
    return (n - 1.0) / n;
}

}  // namespace gibbskit
