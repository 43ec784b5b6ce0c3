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

#include "gibbskit/dense.h"

#include <algorithm>
#include <cmath>

#include "gibbskit/errors.h"
#include "gibbskit/rng.h"

namespace gibbskit {

namespace {

// Full-index bits of local index `l` over ascending `qubits`.
uint64_t scatter(uint64_t l, const std::vector<int> &qubits, int n) {
    const int m = static_cast<int>(qubits.size());
    uint64_t y = 0;
    for (int a = 0; a < m; ++a) {
        if ((l >> (m - 1 - a)) & 1) {
            y |= qubit_bit(n, qubits[a]);
        }
    }
    return y;
}

uint64_t gather(uint64_t y, const std::vector<int> &qubits, int n) {
    const int m = static_cast<int>(qubits.size());
    uint64_t l = 0;
    for (int a = 0; a < m; ++a) {
        if (y & qubit_bit(n, qubits[a])) {
            l |= uint64_t{1} << (m - 1 - a);
        }
    }
    return l;
}

uint64_t qubit_mask(const std::vector<int> &qubits, int n) {
    uint64_t mask = 0;
    for (int q : qubits) {
        mask |= qubit_bit(n, q);
    }
    return mask;
}

}  // namespace

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

PauliString restrict_pauli(const PauliString &p, const std::vector<int> &qubits) {
    const int n = p.num_qubits();
    if ((p.support_mask() & ~qubit_mask(qubits, n)) != 0) {
        throw ValidationError("Pauli string acts outside the requested qubits");
    }
    const int m = static_cast<int>(qubits.size());
    return PauliString(m, gather(p.x_mask(), qubits, n), gather(p.z_mask(), qubits, n));
}

Eigen::MatrixXcd embed_operator(const Eigen::MatrixXcd &op, const std::vector<int> &qubits, int n) {
    const uint64_t d = uint64_t{1} << n;
    const uint64_t local = uint64_t{1} << qubits.size();
    if (static_cast<uint64_t>(op.rows()) != local || static_cast<uint64_t>(op.cols()) != local) {
        throw ValidationError("operator size does not match qubit list");
    }
    const uint64_t mask = qubit_mask(qubits, n);
    std::vector<uint64_t> offsets(local);
    for (uint64_t l = 0; l < local; ++l) {
        offsets[l] = scatter(l, qubits, n);
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (uint64_t y = 0; y < d; ++y) {
        const uint64_t rest = y & ~mask;
        const uint64_t col = gather(y, qubits, n);
        for (uint64_t row = 0; row < local; ++row) {
            out(static_cast<Eigen::Index>(rest | offsets[row]), static_cast<Eigen::Index>(y)) =
                op(row, col);
        }
    }
    return out;
}

Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd &rho, int n, const std::vector<int> &keep) {
    const uint64_t d = uint64_t{1} << n;
    if (static_cast<uint64_t>(rho.rows()) != d) {
        throw ValidationError("density matrix size does not match qubit count");
    }
    const uint64_t local = uint64_t{1} << keep.size();
    const uint64_t mask = qubit_mask(keep, n);
    std::vector<uint64_t> offsets(local);
    for (uint64_t l = 0; l < local; ++l) {
        offsets[l] = scatter(l, keep, n);
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(local, local);
    for (uint64_t rest = 0; rest < d; ++rest) {
        if (rest & mask) {
            continue;
        }
        for (uint64_t a = 0; a < local; ++a) {
            for (uint64_t b = 0; b < local; ++b) {
                out(a, b) += rho(static_cast<Eigen::Index>(rest | offsets[a]),
                                 static_cast<Eigen::Index>(rest | offsets[b]));
            }
        }
    }
    return out;
}

Eigen::MatrixXcd hermitian_function(const Eigen::MatrixXcd &a, const std::function<double(double)> &f) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    Eigen::VectorXd fv = es.eigenvalues().unaryExpr(f);
    return es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
}

double von_neumann_entropy(const Eigen::MatrixXcd &rho, double floor) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double s = 0;
    for (double lam : es.eigenvalues()) {
        if (lam > floor) {
            s -= lam * std::log(lam);
        }
    }
    return s;
}

double trace_norm(const Eigen::MatrixXcd &a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

double spectral_norm(const Eigen::MatrixXcd &a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<std::vector<int>> subsets_of_size(int n, int m) {
    std::vector<std::vector<int>> out;
    if (m < 0 || m > n) {
        return out;
    }
    std::vector<int> cur(m);
    for (int i = 0; i < m; ++i) {
        cur[i] = i;
    }
    while (true) {
        out.push_back(cur);
        int i = m - 1;
        while (i >= 0 && cur[i] == n - m + i) {
            --i;
        }
        if (i < 0) {
            break;
        }
        ++cur[i];
        for (int j = i + 1; j < m; ++j) {
            cur[j] = cur[j - 1] + 1;
        }
    }
    return out;
}

Eigen::MatrixXcd random_density_matrix(int n, int rank, uint64_t seed) {
    const Eigen::Index d = Eigen::Index{1} << n;
    Rng rng(seed);
    Eigen::MatrixXcd w(d, rank);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (int j = 0; j < rank; ++j) {
            w(i, j) = Complex(standard_normal(rng), standard_normal(rng));
        }
    }
    Eigen::MatrixXcd rho = w * w.adjoint();
    return rho / rho.trace().real();
}

Eigen::MatrixXcd random_hermitian(int d, uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXcd g(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            g(i, j) = Complex(standard_normal(rng), standard_normal(rng));
        }
    }
    return (g + g.adjoint()) / 2.0;
}

}  // namespace gibbskit
