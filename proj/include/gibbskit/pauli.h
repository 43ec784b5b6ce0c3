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

#ifndef GIBBSKIT_PAULI_H
#define GIBBSKIT_PAULI_H

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace gibbskit {

using Complex = std::complex<double>;

/// Largest qubit count representable by the 64-bit masks.
inline constexpr int kMaxQubits = 62;

/// Bit of qubit `q` in a basis-state index. Qubit 0 is the leftmost tensor
/// factor, i.e. the most significant bit.
inline uint64_t qubit_bit(int n, int q) {
    return uint64_t{1} << (n - 1 - q);
}

/// An n-qubit Pauli string without phase.
///
/// Stored as x/z bitmasks in basis-index order (see `qubit_bit`), so that
/// P|y> = i^{#Y} (-1)^{|y & z|} |y ^ x>.
class PauliString {
   public:
    PauliString() = default;
    PauliString(int n, uint64_t x_mask, uint64_t z_mask);

    /// Parses letters from {I,X,Y,Z}; letter k acts on qubit k.
    static PauliString parse(std::string_view letters);
    static PauliString identity(int n);
    /// Single-letter string `letter` on qubit q.
    static PauliString single(int n, int q, char letter);

    int num_qubits() const {
        return n_;
    }
    uint64_t x_mask() const {
        return x_;
    }
    uint64_t z_mask() const {
        return z_;
    }
    uint64_t support_mask() const {
        return x_ | z_;
    }
    char letter(int q) const;
    int weight() const;
    int y_count() const;
    bool is_identity() const {
        return (x_ | z_) == 0;
    }
    /// Qubits acted on non-trivially, ascending.
    std::vector<int> support() const;
    bool commutes_with(const PauliString &other) const;
    std::string str() const;

    /// i^{#Y} as a complex number.
    Complex y_phase() const;

    bool operator==(const PauliString &other) const = default;
    bool operator<(const PauliString &other) const;

   private:
    int n_ = 0;
    uint64_t x_ = 0;
    uint64_t z_ = 0;
};

struct PauliTerm {
    PauliString pauli;
    double coeff = 0;
};

/// Real-weighted sum of Pauli strings.
///
/// Canonical form: duplicate strings merged, |coeff| < 1e-15 dropped, terms
/// sorted, and the identity component kept apart as a scalar shift.
class PauliSumHamiltonian {
   public:
    PauliSumHamiltonian() = default;
    explicit PauliSumHamiltonian(int n);
    PauliSumHamiltonian(int n, std::vector<PauliTerm> terms);

    int num_qubits() const {
        return n_;
    }
    uint64_t dimension() const {
        return uint64_t{1} << n_;
    }
    /// Non-identity terms in canonical order.
    const std::vector<PauliTerm> &terms() const {
        return terms_;
    }
    double identity_coeff() const {
        return identity_;
    }
    /// Max weight over non-identity terms (0 for a scalar Hamiltonian).
    int locality() const;
    /// True when the matrix is real (every term has an even number of Y's).
    bool is_real() const;
    /// Coefficient of `p` (0 when absent).
    double coeff(const PauliString &p) const;

    PauliSumHamiltonian scaled(double factor) const;
    /// Copy with the identity component removed.
    PauliSumHamiltonian traceless_part() const;
    PauliSumHamiltonian operator+(const PauliSumHamiltonian &other) const;

    /// out = H * in. Never forms the 2^n x 2^n matrix; cost O(terms * 2^n).
    void apply(const Eigen::VectorXcd &in, Eigen::VectorXcd &out) const;

    std::string to_json() const;

   private:
    int n_ = 0;
    double identity_ = 0;
    std::vector<PauliTerm> terms_;
};

/// Parses the Hamiltonian JSON document {"n": int, "terms": [{"pauli", "coeff"}]}.
PauliSumHamiltonian parse_hamiltonian(std::string_view json_text);
PauliSumHamiltonian load_hamiltonian(const std::string &path);

/// H v, validating the dimension.
Eigen::VectorXcd matvec(const PauliSumHamiltonian &h, const Eigen::VectorXcd &v);

/// Sum of |coeff| including the identity component; an upper bound on ||H||.
double pauli_norm_bound(const PauliSumHamiltonian &h);

/// Dense matrix of a single Pauli string (used by local, few-qubit code).
Eigen::MatrixXcd pauli_matrix(const PauliString &p);

}  // namespace gibbskit

#endif
