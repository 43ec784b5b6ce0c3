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

#ifndef GIBBSKIT_CLIFFORD_H
#define GIBBSKIT_CLIFFORD_H

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gibbskit/linear_operator.h"
#include "gibbskit/pauli.h"
#include "gibbskit/rng.h"

namespace gibbskit {

enum class GateKind { kH, kS, kX, kZ, kCX, kCZ };

struct Gate {
    GateKind kind;
    int a;
    int b = -1;

    bool operator==(const Gate &other) const = default;
};

std::string gate_name(const Gate &g);

/// Signed Pauli with letters in qubit order (not index order).
struct TableauRow {
    std::vector<uint8_t> x;
    std::vector<uint8_t> z;
    uint8_t sign = 0;

    bool operator==(const TableauRow &other) const = default;
};

/// An n-qubit Clifford U, stored as its action P -> U P U^dag on generators.
///
/// Row q is the image of X_q and row n + q is the image of Z_q. The gate
/// sequence lists gates in time order, so U = g_m ... g_1.
class CliffordTableau {
   public:
    CliffordTableau() = default;

    static CliffordTableau identity(int n);
    /// Tableau of the circuit `gates` (time order). Keeps `gates` as the
    /// realizing sequence.
    static CliffordTableau from_gates(int n, const std::vector<Gate> &gates);
    /// Tableau from raw rows; synthesizes a gate sequence. Throws if the rows
    /// do not form a symplectic matrix.
    static CliffordTableau from_rows(int n, std::vector<TableauRow> rows);

    int num_qubits() const {
        return n_;
    }
    const std::vector<TableauRow> &rows() const {
        return rows_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }

    /// 2n x 2n binary matrix; row r is [x bits | z bits] of rows()[r].
    std::vector<std::vector<uint8_t>> symplectic() const;
    /// True when the rows satisfy the canonical commutation relations.
    bool is_symplectic() const;
    /// Compact key identifying the element modulo global phase (n <= 5).
    std::string key() const;

    /// Dense 2^n x 2^n unitary from the gate sequence (small n only).
    Eigen::MatrixXcd unitary() const;

    bool operator==(const CliffordTableau &other) const {
        return n_ == other.n_ && rows_ == other.rows_;
    }

   private:
    int n_ = 0;
    std::vector<TableauRow> rows_;
    std::vector<Gate> gates_;
};

/// Uniformly random Clifford element modulo global phase, via the
/// Bravyi-Maslov canonical form with random Pauli signs.
CliffordTableau sample_clifford(int n, Rng &rng);

/// Applies one gate (or its inverse) to a 2^n statevector in place.
void apply_gate(const Gate &g, int n, Eigen::VectorXcd &v, bool inverse = false);

/// U v, or U^dag v when `dagger` is set.
Eigen::VectorXcd apply_clifford(const CliffordTableau &u, const Eigen::VectorXcd &v,
                                bool dagger = false);
void apply_clifford_in_place(const CliffordTableau &u, Eigen::VectorXcd &v, bool dagger = false);

/// Smallest k with 2^k >= 1 / (eta delta^2), capped at `n`.
int compression_width(double delta, double eta, int n = kMaxQubits);

/// Smallest k with 2^k >= constant / delta^2.
int compression_width_constant(double delta, double constant = 800.0, int n = kMaxQubits);

/// The k-qubit compression phi_U(A) = <0^{n-k}| U A U^dag |0^{n-k}>.
///
/// Compressed coordinates occupy the last k qubits, so a k-qubit vector w is
/// embedded as the first 2^k entries of a 2^n vector.
class CompressedOracle : public LinearOperator {
   public:
    CompressedOracle(const LinearOperator &inner, int n, int k, CliffordTableau u);

    Eigen::Index dim() const override {
        return Eigen::Index{1} << k_;
    }
    int k() const {
        return k_;
    }
    int n() const {
        return n_;
    }
    const CliffordTableau &clifford() const {
        return u_;
    }

   protected:
    void apply(const Eigen::VectorXcd &in, Eigen::VectorXcd &out) const override;

   private:
    const LinearOperator &inner_;
    int n_;
    int k_;
    CliffordTableau u_;
};

}  // namespace gibbskit

#endif
