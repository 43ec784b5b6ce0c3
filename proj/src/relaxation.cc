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

#include "gibbskit/relaxation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "gibbskit/dense.h"
#include "gibbskit/errors.h"
#include "gibbskit/exact.h"
#include "gibbskit/rounding.h"

namespace gibbskit {

namespace {

double entropy_of(const Eigen::VectorXd &lambda, double floor = 1e-14) {
    double s = 0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda[i] > floor) {
            s -= lambda[i] * std::log(lambda[i]);
        }
    }
    return s;
}

std::vector<int> with_qubit(const std::vector<int> &c, int j) {
    std::vector<int> out = c;
    out.insert(std::upper_bound(out.begin(), out.end(), j), j);
    return out;
}

// Index of the frame for `qubits` in sigma.frames(), or -1 for the empty set.
int frame_id(const PseudoDensityMatrix &sigma, const std::vector<int> &qubits) {
    if (qubits.empty()) {
        return -1;
    }
    return static_cast<int>(&sigma.frame(qubits) - sigma.frames().data());
}

// One conditioning set C of the pseudo-entropy: h_C = sum_j S(C+j) - (n-|C|-1) S(C).
struct Constraint {
    int self = -1;
    double self_weight = 0;
    std::vector<int> extended;
};

std::vector<Constraint> constraints_for(const PseudoDensityMatrix &sigma) {
    const int n = sigma.num_qubits();
    std::vector<Constraint> out;
    for (int m = 0; m < sigma.locality(); ++m) {
        for (const std::vector<int> &c : subsets_of_size(n, m)) {
            Constraint con;
            con.self = frame_id(sigma, c);
            con.self_weight = n - m - 1;
            for (int j = 0; j < n; ++j) {
                if (!std::binary_search(c.begin(), c.end(), j)) {
                    con.extended.push_back(frame_id(sigma, with_qubit(c, j)));
                }
            }
            out.push_back(std::move(con));
        }
    }
    return out;
}

// Gradient and Hessian of Tr phi(sigma_S) in the frame coordinates, where
// `first` is phi' at each eigenvalue and `divided` the divided difference of phi'.
void spectral_derivatives(const SubsetFrame &f, const Eigen::VectorXd &lambda, const Eigen::MatrixXcd &u,
                          const Eigen::VectorXd &first, const Eigen::MatrixXd &divided, bool hessian,
                          Eigen::VectorXd &grad, Eigen::MatrixXd &hess) {
    const Eigen::Index d = lambda.size();
    const Eigen::Index l = static_cast<Eigen::Index>(f.paulis.size());
    Eigen::MatrixXcd a(d * d, l);
    grad.resize(l);
    for (Eigen::Index p = 0; p < l; ++p) {
        Eigen::MatrixXcd rotated = u.adjoint() * f.paulis[p] * u;
        grad[p] = (rotated.diagonal().real().cwiseProduct(first)).sum() / d;
        if (hessian) {
            a.col(p) = Eigen::Map<Eigen::VectorXcd>(rotated.data(), d * d);
        }
    }
    if (hessian) {
        Eigen::VectorXcd weights = Eigen::Map<const Eigen::VectorXd>(divided.data(), d * d).cast<Complex>();
        Eigen::MatrixXcd b = weights.asDiagonal() * a;
        hess = (a.adjoint() * b).real() / static_cast<double>(d * d);
    }
}

struct LocalTerms {
    double entropy = 0;
    Eigen::VectorXd entropy_grad;
    Eigen::MatrixXd entropy_hess;
    double logdet = 0;
    Eigen::VectorXd logdet_grad;
    Eigen::MatrixXd logdet_hess;
};

struct Evaluation {
    bool feasible = false;
    double barrier = 0;
    double fk = 0;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
};

class BarrierProblem {
   public:
    BarrierProblem(const TwoLocalView &v, int k) : sigma_(v.n, k) {
        constraints_ = constraints_for(sigma_);
        const int m = sigma_.num_parameters();
        linear_ = Eigen::VectorXd::Zero(m);
        offset_ = v.identity;
        for (const auto &[pair, block] : v.blocks) {
            const SubsetFrame &f = sigma_.frame({pair.first, pair.second});
            offset_ += block.trace().real() / 4;
            for (size_t p = 0; p < f.params.size(); ++p) {
                linear_[f.params[p]] += (block * f.paulis[p]).trace().real() / 4;
            }
        }
        nu_ = static_cast<double>(constraints_.size());
        for (const SubsetFrame &f : sigma_.frames()) {
            if (static_cast<int>(f.qubits.size()) == k) {
                nu_ += std::ldexp(1.0, k);
            }
        }
    }

    int size() const {
        return sigma_.num_parameters() + 1;
    }
    double nu() const {
        return nu_;
    }
    const PseudoDensityMatrix &sigma() const {
        return sigma_;
    }

    // Largest constraint value max_C g_C at c, which is f_k(sigma(c)).
    double objective(const Eigen::VectorXd &c) {
        Evaluation e = evaluate(c, std::numeric_limits<double>::infinity(), 1.0, false);
        return e.fk;
    }

    Evaluation evaluate(const Eigen::VectorXd &c, double t, double mu, bool derivatives) {
        Evaluation out;
        sigma_.set_coefficients(c);
        const auto &frames = sigma_.frames();
        const int k = sigma_.locality();
        std::vector<LocalTerms> local(frames.size());
        for (size_t i = 0; i < frames.size(); ++i) {
            const SubsetFrame &f = frames[i];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sigma_.marginal(f.qubits));
            const Eigen::VectorXd &lambda = es.eigenvalues();
            if (!(lambda[0] > 0)) {
                return out;
            }
            LocalTerms &lt = local[i];
            lt.entropy = entropy_of(lambda, 0);
            const bool top = static_cast<int>(f.qubits.size()) == k;
            if (top) {
                lt.logdet = lambda.array().log().sum();
            }
            if (!derivatives) {
                continue;
            }
            const Eigen::Index d = lambda.size();
            Eigen::VectorXd logs = lambda.array().log();
            Eigen::MatrixXd gamma(d, d);
            for (Eigen::Index a = 0; a < d; ++a) {
                for (Eigen::Index b = 0; b < d; ++b) {
                    const double gap = lambda[a] - lambda[b];
                    gamma(a, b) = std::abs(gap) > 1e-9 * std::max(lambda[a], lambda[b])
                                      ? -(logs[a] - logs[b]) / gap
                                      : -2 / (lambda[a] + lambda[b]);
                }
            }
            spectral_derivatives(f, lambda, es.eigenvectors(), -logs, gamma, true, lt.entropy_grad,
                                 lt.entropy_hess);
            if (top) {
                Eigen::VectorXd inv = lambda.cwiseInverse();
                Eigen::MatrixXd divided = -(inv * inv.transpose());
                spectral_derivatives(f, lambda, es.eigenvectors(), inv, divided, true, lt.logdet_grad,
                                     lt.logdet_hess);
            }
        }

        const double energy = offset_ + linear_.dot(c);
        std::vector<double> slack(constraints_.size());
        out.fk = -std::numeric_limits<double>::infinity();
        double barrier = t;
        for (size_t ci = 0; ci < constraints_.size(); ++ci) {
            const Constraint &con = constraints_[ci];
            double h = 0;
            for (int id : con.extended) {
                h += local[id].entropy;
            }
            if (con.self >= 0) {
                h -= con.self_weight * local[con.self].entropy;
            }
            const double g = energy - h;
            out.fk = std::max(out.fk, g);
            slack[ci] = t - g;
            if (std::isfinite(t)) {
                if (!(slack[ci] > 0)) {
                    return out;
                }
                barrier -= mu * std::log(slack[ci]);
            }
        }
        for (size_t i = 0; i < frames.size(); ++i) {
            if (static_cast<int>(frames[i].qubits.size()) == k) {
                barrier -= mu * local[i].logdet;
            }
        }
        out.feasible = true;
        out.barrier = barrier;
        if (!derivatives) {
            return out;
        }

        const int m = sigma_.num_parameters();
        out.grad = Eigen::VectorXd::Zero(m + 1);
        out.hess = Eigen::MatrixXd::Zero(m + 1, m + 1);
        std::vector<double> weight(frames.size(), 0.0);
        Eigen::MatrixXd jac(m, constraints_.size());
        Eigen::VectorXd inv_slack(constraints_.size());
        for (size_t ci = 0; ci < constraints_.size(); ++ci) {
            const Constraint &con = constraints_[ci];
            Eigen::VectorXd dg = linear_;
            const double w = mu / slack[ci];
            for (int id : con.extended) {
                scatter(frames[id], -1.0, local[id].entropy_grad, dg);
                weight[id] -= w;
            }
            if (con.self >= 0 && con.self_weight != 0) {
                scatter(frames[con.self], con.self_weight, local[con.self].entropy_grad, dg);
                weight[con.self] += con.self_weight * w;
            }
            jac.col(ci) = dg;
            inv_slack[ci] = 1 / slack[ci];
        }
        out.grad.head(m) = mu * jac * inv_slack;
        out.grad[m] = 1 - mu * inv_slack.sum();
        Eigen::VectorXd sq = inv_slack.cwiseAbs2();
        Eigen::MatrixXd scaled = jac * sq.asDiagonal();
        out.hess.topLeftCorner(m, m).noalias() = mu * scaled * jac.transpose();
        out.hess.block(0, m, m, 1) = -mu * jac * sq;
        out.hess.block(m, 0, 1, m) = out.hess.block(0, m, m, 1).transpose();
        out.hess(m, m) = mu * sq.sum();
        for (size_t i = 0; i < frames.size(); ++i) {
            const SubsetFrame &f = frames[i];
            if (weight[i] != 0) {
                scatter(f, weight[i], local[i].entropy_hess, out.hess);
            }
            if (static_cast<int>(f.qubits.size()) == k) {
                for (size_t p = 0; p < f.params.size(); ++p) {
                    out.grad[f.params[p]] -= mu * local[i].logdet_grad[p];
                }
                scatter(f, -mu, local[i].logdet_hess, out.hess);
            }
        }
        return out;
    }

    // Starting epigraph height with unit slack on every constraint.
    double initial_height(const Eigen::VectorXd &c) {
        return objective(c) + 1;
    }

   private:
    static void scatter(const SubsetFrame &f, double w, const Eigen::VectorXd &g, Eigen::VectorXd &out) {
        for (size_t p = 0; p < f.params.size(); ++p) {
            out[f.params[p]] += w * g[p];
        }
    }
    static void scatter(const SubsetFrame &f, double w, const Eigen::MatrixXd &h, Eigen::MatrixXd &out) {
        for (size_t p = 0; p < f.params.size(); ++p) {
            for (size_t q = 0; q < f.params.size(); ++q) {
                out(f.params[p], f.params[q]) += w * h(p, q);
            }
        }
    }

    PseudoDensityMatrix sigma_;
    std::vector<Constraint> constraints_;
    Eigen::VectorXd linear_;
    double offset_ = 0;
    double nu_ = 0;
};

Eigen::VectorXd newton_direction(const Eigen::MatrixXd &h, const Eigen::VectorXd &g) {
    double shift = 0;
    const double scale = std::max(1e-300, h.diagonal().cwiseAbs().maxCoeff());
    for (int attempt = 0; attempt < 40; ++attempt) {
        Eigen::MatrixXd m = h;
        m.diagonal().array() += shift;
        Eigen::LLT<Eigen::MatrixXd> llt(m);
        if (llt.info() == Eigen::Success) {
            Eigen::VectorXd d = -llt.solve(g);
            if (d.allFinite()) {
                return d;
            }
        }
        shift = shift == 0 ? 1e-14 * scale : shift * 10;
    }
    throw NumericalError("Newton system could not be factorized");
}

}  // namespace

PseudoEntropy pseudo_entropy_detail(const PseudoDensityMatrix &sigma, double tol) {
    const auto &frames = sigma.frames();
    std::vector<double> entropy(frames.size());
    for (size_t i = 0; i < frames.size(); ++i) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sigma.marginal(frames[i].qubits),
                                                           Eigen::EigenvaluesOnly);
        if (es.eigenvalues()[0] < -tol) {
            throw ValidationError("pseudodensity matrix has a negative marginal eigenvalue");
        }
        entropy[i] = entropy_of(es.eigenvalues());
    }
    const int n = sigma.num_qubits();
    PseudoEntropy best;
    best.value = std::numeric_limits<double>::infinity();
    for (int m = 0; m < sigma.locality(); ++m) {
        for (const std::vector<int> &c : subsets_of_size(n, m)) {
            const int self = frame_id(sigma, c);
            const double base = self < 0 ? 0.0 : entropy[self];
            double value = base;
            for (int j = 0; j < n; ++j) {
                if (!std::binary_search(c.begin(), c.end(), j)) {
                    value += entropy[frame_id(sigma, with_qubit(c, j))] - base;
                }
            }
            if (value < best.value) {
                best.value = value;
                best.subset = c;
            }
        }
    }
    return best;
}

double pseudo_entropy(const PseudoDensityMatrix &sigma, double tol) {
    return pseudo_entropy_detail(sigma, tol).value;
}

double relaxed_energy(const PseudoDensityMatrix &sigma, const TwoLocalView &v) {
    if (v.n != sigma.num_qubits()) {
        throw ValidationError("Hamiltonian and pseudodensity matrix sizes differ");
    }
    if (sigma.locality() < 2 && !v.blocks.empty()) {
        throw ValidationError("relaxed energy needs locality at least 2");
    }
    return v.energy([&](int i, int j) { return Eigen::Matrix4cd(sigma.marginal({i, j})); });
}

double relaxed_objective(const PseudoDensityMatrix &sigma, const TwoLocalView &v) {
    return relaxed_energy(sigma, v) - pseudo_entropy(sigma);
}

RelaxationResult minimize_relaxation(const TwoLocalView &v, int k, const RelaxationOptions &opts) {
    if (v.n > kRelaxationQubitCap) {
        throw ValidationError("relaxation supports n <= " + std::to_string(kRelaxationQubitCap));
    }
    if (k < 2 || k > v.n) {
        throw ValidationError("relaxation needs 2 <= k <= n");
    }
    if (!(opts.tol > 0) || !(opts.mu_factor > 0 && opts.mu_factor < 1) || !(opts.mu_initial > 0)) {
        throw ValidationError("invalid solver options");
    }
    BarrierProblem problem(v, k);
    const int m = problem.size() - 1;
    Eigen::VectorXd z = Eigen::VectorXd::Zero(m + 1);
    z[m] = problem.initial_height(z.head(m));

    double mu = opts.mu_initial;
    int iterations = 0;
    double decrement = 0;
    const double inner_tol = std::min(1e-10, 1e-2 * opts.tol);
    while (true) {
        for (;;) {
            Evaluation e = problem.evaluate(z.head(m), z[m], mu, true);
            Eigen::VectorXd d = newton_direction(e.hess, e.grad);
            decrement = -e.grad.dot(d);
            if (decrement / 2 <= inner_tol) {
                break;
            }
            if (++iterations > opts.max_iterations) {
                throw NumericalError("relaxation solver did not converge within " +
                                     std::to_string(opts.max_iterations) + " Newton steps");
            }
            double alpha = 1;
            bool moved = false;
            for (int halving = 0; halving < 60; ++halving, alpha /= 2) {
                Eigen::VectorXd trial = z + alpha * d;
                Evaluation te = problem.evaluate(trial.head(m), trial[m], mu, false);
                if (te.feasible && te.barrier <= e.barrier - 1e-4 * alpha * decrement) {
                    z = trial;
                    moved = true;
                    break;
                }
            }
            if (!moved) {
                // Line search stalls only at roundoff level near the center.
                if (decrement < 1e-6 * std::max(1.0, std::abs(e.barrier))) {
                    break;
                }
                throw NumericalError("relaxation line search stalled");
            }
        }
        if (mu * problem.nu() <= 0.1 * opts.tol) {
            break;
        }
        mu *= opts.mu_factor;
    }

    RelaxationResult out;
    out.f_k_star = problem.objective(z.head(m));
    out.sigma = problem.sigma();
    out.sigma.set_coefficients(z.head(m));
    out.energy = relaxed_energy(out.sigma, v);
    out.pseudo_entropy = pseudo_entropy(out.sigma);
    out.iterations = iterations;
    out.mu_final = mu;
    out.gap_bound = mu * problem.nu() + decrement;
    return out;
}

EnergyGap energy_gap_report(const PseudoDensityMatrix &sigma, const Eigen::MatrixXcd &rho,
                            const TwoLocalView &v) {
    const int n = sigma.num_qubits();
    if (rho.rows() != (Eigen::Index{1} << n)) {
        throw ValidationError("state dimension does not match the pseudodensity matrix");
    }
    EnergyGap gap;
    gap.energy_relaxed = relaxed_energy(sigma, v);
    gap.energy_rounded =
        v.energy([&](int i, int j) { return Eigen::Matrix4cd(partial_trace(rho, n, {i, j})); });
    gap.absolute = std::abs(gap.energy_rounded - gap.energy_relaxed);
    gap.per_gamma = v.gamma_total > 0 ? gap.absolute / v.gamma_total : 0.0;
    return gap;
}

DenseFreeEnergyResult dense_free_energy(const PauliSumHamiltonian &h, double beta, int k,
                                        const RelaxationOptions &opts, bool with_exact) {
    if (!(beta > 0) || !std::isfinite(beta)) {
        throw ValidationError("free energy needs finite beta > 0");
    }
    if (h.locality() > 2) {
        throw ValidationError("the relaxation handles 2-local Hamiltonians only");
    }
    const int n = h.num_qubits();
    if (n > kRelaxationQubitCap) {
        throw ValidationError("dense free energy supports n <= " + std::to_string(kRelaxationQubitCap));
    }
    TwoLocalView view = two_local_view(h);
    TwoLocalView scaled = two_local_view(h.scaled(beta));

    DenseFreeEnergyResult r;
    r.n = n;
    r.k = k;
    r.beta = beta;
    r.solver = minimize_relaxation(scaled, k, opts);
    r.f_k_star = r.solver.f_k_star / beta;
    r.pseudo_entropy = r.solver.pseudo_entropy;
    r.energy_relaxed = relaxed_energy(r.solver.sigma, view);
    r.rho = round_pseudo_density(r.solver.sigma, k);
    r.gap = energy_gap_report(r.solver.sigma, r.rho, view);
    r.energy_rounded = r.gap.energy_rounded;
    r.entropy_rounded = von_neumann_entropy(r.rho);
    r.f_rounded = r.energy_rounded - r.entropy_rounded / beta;
    if (with_exact) {
        r.f_exact = exact_free_energy(h, beta);
    }
    return r;
}

nlohmann::json to_json(const DenseFreeEnergyResult &r, double tol) {
    nlohmann::json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["beta"] = r.beta;
    j["f_k_star"] = r.f_k_star;
    j["S_k"] = r.pseudo_entropy;
    j["energy_relaxed"] = r.energy_relaxed;
    j["energy_rounded"] = r.energy_rounded;
    j["entropy_rounded"] = r.entropy_rounded;
    j["f_rounded"] = r.f_rounded;
    j["F_exact"] = r.f_exact ? nlohmann::json(*r.f_exact) : nlohmann::json(nullptr);
    j["energy_deviation"] = r.gap.absolute;
    j["energy_deviation_per_gamma"] = r.gap.per_gamma;
    j["solver"] = {{"iterations", r.solver.iterations},
                   {"mu_final", r.solver.mu_final},
                   {"gap_bound", r.solver.gap_bound},
                   {"tol", tol}};
    return j;
}

}  // namespace gibbskit
