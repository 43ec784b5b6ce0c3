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

#include "gibbskit/exact.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "gibbskit/errors.h"

namespace gibbskit {

namespace {

void check_cap(const PauliSumHamiltonian &h, int cap) {
    if (h.num_qubits() > cap) {
        throw ValidationError("n = " + std::to_string(h.num_qubits()) + " exceeds exact cap of " +
                              std::to_string(cap) + " qubits");
    }
}

// Neumaier-compensated sum of exp(s * e_i - shift).
double shifted_sum(const Eigen::VectorXd &e, double s, double shift) {
    double sum = 0;
    double comp = 0;
    for (double ei : e) {
        double term = std::exp(s * ei - shift);
        double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

double max_exponent(const Eigen::VectorXd &e, double s) {
    return std::max(s * e.minCoeff(), s * e.maxCoeff());
}

}  // namespace

double Spectrum::log_trace_exp(double s) const {
    const double shift = max_exponent(eigenvalues, s);
    return shift + std::log(shifted_sum(eigenvalues, s, shift));
}

double Spectrum::trace_exp(double s) const {
    const double shift = max_exponent(eigenvalues, s);
    return std::exp(shift) * shifted_sum(eigenvalues, s, shift);
}

long Spectrum::count_in(double a, double b) const {
    if (a > b) {
        throw ValidationError("interval needs a <= b");
    }
    auto lo = std::lower_bound(eigenvalues.begin(), eigenvalues.end(), a);
    auto hi = std::upper_bound(eigenvalues.begin(), eigenvalues.end(), b);
    return static_cast<long>(hi - lo);
}

Eigen::VectorXd Spectrum::pauli_diagonal(const PauliString &p) const {
    if (!has_vectors()) {
        throw ValidationError("spectrum was computed without eigenvectors");
    }
    const uint64_t d = uint64_t{1} << n;
    const Complex phase = p.y_phase();
    Eigen::VectorXd out(eigenvectors.cols());
    for (Eigen::Index c = 0; c < eigenvectors.cols(); ++c) {
        Complex acc = 0;
        for (uint64_t y = 0; y < d; ++y) {
            double sign = (std::popcount(y & p.z_mask()) & 1) ? -1.0 : 1.0;
            acc += std::conj(eigenvectors(static_cast<Eigen::Index>(y ^ p.x_mask()), c)) * sign *
                   eigenvectors(static_cast<Eigen::Index>(y), c);
        }
        out[c] = (phase * acc).real();
    }
    return out;
}

double Spectrum::weighted_mean(const Eigen::VectorXd &diag, double s) const {
    const double shift = max_exponent(eigenvalues, s);
    double num = 0;
    double den = 0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        double w = std::exp(s * eigenvalues[i] - shift);
        num += w * diag[i];
        den += w;
    }
    return num / den;
}

Eigen::MatrixXcd dense_matrix(const PauliSumHamiltonian &h, int cap) {
    check_cap(h, cap);
    const uint64_t d = h.dimension();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    m.diagonal().setConstant(h.identity_coeff());
    for (const PauliTerm &t : h.terms()) {
        const Complex phase = t.coeff * t.pauli.y_phase();
        for (uint64_t y = 0; y < d; ++y) {
            double sign = (std::popcount(y & t.pauli.z_mask()) & 1) ? -1.0 : 1.0;
            m(static_cast<Eigen::Index>(y ^ t.pauli.x_mask()), static_cast<Eigen::Index>(y)) +=
                sign * phase;
        }
    }
    return m;
}

Spectrum exact_spectrum(const PauliSumHamiltonian &h, bool with_vectors, int cap) {
    Eigen::MatrixXcd m = dense_matrix(h, cap);
    Spectrum sp;
    sp.n = h.num_qubits();
    const int options = with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
    if (h.is_real()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real(), options);
        if (es.info() != Eigen::Success) {
            throw NumericalError("eigensolver did not converge");
        }
        sp.eigenvalues = es.eigenvalues();
        if (with_vectors) {
            sp.eigenvectors = es.eigenvectors().cast<Complex>();
        }
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, options);
        if (es.info() != Eigen::Success) {
            throw NumericalError("eigensolver did not converge");
        }
        sp.eigenvalues = es.eigenvalues();
        if (with_vectors) {
            sp.eigenvectors = es.eigenvectors();
        }
    }
    return sp;
}

double exact_partition(const PauliSumHamiltonian &h, double beta, int cap) {
    if (!(beta >= 0)) {
        throw ValidationError("partition function needs beta >= 0");
    }
    return exact_spectrum(h, false, cap).trace_exp(-beta);
}

double exact_log_partition(const PauliSumHamiltonian &h, double beta, int cap) {
    if (!(beta >= 0)) {
        throw ValidationError("partition function needs beta >= 0");
    }
    return exact_spectrum(h, false, cap).log_trace_exp(-beta);
}

double exact_free_energy(const PauliSumHamiltonian &h, double beta, int cap) {
    if (!(beta > 0)) {
        throw ValidationError("free energy needs beta > 0");
    }
    if (h.terms().empty()) {
        check_cap(h, cap);
        return h.identity_coeff() - (h.num_qubits() / beta) * std::log(2.0);
    }
    return -exact_log_partition(h, beta, cap) / beta;
}

double exact_gibbs_mean(const PauliSumHamiltonian &h, const PauliString &p, double beta, int cap) {
    if (p.num_qubits() != h.num_qubits()) {
        throw ValidationError("observable and Hamiltonian disagree on n");
    }
    if (p.is_identity()) {
        return 1.0;
    }
    Spectrum sp = exact_spectrum(h, true, cap);
    return sp.weighted_mean(sp.pauli_diagonal(p), -beta);
}

long count_eigenvalues(const PauliSumHamiltonian &h, double a, double b, int cap) {
    if (a > b) {
        throw ValidationError("interval needs a <= b");
    }
    return exact_spectrum(h, false, cap).count_in(a, b);
}

Eigen::MatrixXcd dense_expm(const PauliSumHamiltonian &h, double s, int cap) {
    Spectrum sp = exact_spectrum(h, true, cap);
    Eigen::VectorXd w = (s * sp.eigenvalues).array().exp();
    return sp.eigenvectors * w.asDiagonal() * sp.eigenvectors.adjoint();
}

Eigen::MatrixXcd gibbs_state(const PauliSumHamiltonian &h, double beta, int cap) {
    Spectrum sp = exact_spectrum(h, true, cap);
    const double shift = max_exponent(sp.eigenvalues, -beta);
    Eigen::VectorXd w = (-beta * sp.eigenvalues.array() - shift).exp();
    w /= w.sum();
    return sp.eigenvectors * w.asDiagonal() * sp.eigenvectors.adjoint();
}

}  // namespace gibbskit
