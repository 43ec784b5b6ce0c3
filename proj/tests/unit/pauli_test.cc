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

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "gibbskit/dense.h"
#include "gibbskit/errors.h"
#include "gibbskit/exact.h"
#include "gibbskit/pauli.h"
#include "gibbskit/random_instances.h"
#include "gibbskit/rng.h"
#include "gibbskit/two_local.h"

namespace gibbskit {
namespace {

using C = std::complex<double>;

// Dense matrix by explicit Kronecker products of 2x2 letters.
Eigen::MatrixXcd kron_dense(const PauliSumHamiltonian &h) {
    const int n = h.num_qubits();
    const Eigen::Index d = Eigen::Index{1} << n;
    Eigen::MatrixXcd m = h.identity_coeff() * Eigen::MatrixXcd::Identity(d, d);
    for (const PauliTerm &t : h.terms()) {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
        for (int q = 0; q < n; ++q) {
            Eigen::Matrix2cd l;
            switch (t.pauli.letter(q)) {
                case 'X':
                    l << 0, 1, 1, 0;
                    break;
                case 'Y':
                    l << 0, C(0, -1), C(0, 1), 0;
                    break;
                case 'Z':
                    l << 1, 0, 0, -1;
                    break;
                default:
                    l.setIdentity();
            }
            acc = kron(acc, l);
        }
        m += t.coeff * acc;
    }
    return m;
}

Eigen::VectorXcd random_vector(Eigen::Index d, Rng &rng) {
    Eigen::VectorXcd v(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        v[i] = C(standard_normal(rng), standard_normal(rng));
    }
    return v;
}

TEST(PauliString, ParsesLettersAndWeight) {
    PauliString p = PauliString::parse("XIYZ");
    EXPECT_EQ(p.num_qubits(), 4);
    EXPECT_EQ(p.weight(), 3);
    EXPECT_EQ(p.y_count(), 1);
    EXPECT_EQ(p.str(), "XIYZ");
    EXPECT_EQ(p.support(), (std::vector<int>{0, 2, 3}));
    EXPECT_THROW(PauliString::parse("XQ"), ValidationError);
}

TEST(PauliString, Commutation) {
    EXPECT_TRUE(PauliString::parse("XX").commutes_with(PauliString::parse("ZZ")));
    EXPECT_FALSE(PauliString::parse("XI").commutes_with(PauliString::parse("ZI")));
    EXPECT_TRUE(PauliString::parse("XI").commutes_with(PauliString::parse("IZ")));
}

TEST(ParseHamiltonian, SingleTerm) {
    auto h = parse_hamiltonian(R"({"n":1,"terms":[{"pauli":"Z","coeff":1.0}]})");
    ASSERT_EQ(h.terms().size(), 1u);
    EXPECT_EQ(h.terms()[0].pauli.str(), "Z");
    EXPECT_EQ(h.terms()[0].coeff, 1.0);
    EXPECT_EQ(h.locality(), 1);
}

TEST(ParseHamiltonian, MergesDuplicates) {
    auto h = parse_hamiltonian(
        R"({"n":2,"terms":[{"pauli":"ZZ","coeff":1.0},{"pauli":"ZZ","coeff":0.5}]})");
    ASSERT_EQ(h.terms().size(), 1u);
    EXPECT_DOUBLE_EQ(h.terms()[0].coeff, 1.5);
}

TEST(ParseHamiltonian, RejectsLengthMismatch) {
    EXPECT_THROW(parse_hamiltonian(R"({"n":2,"terms":[{"pauli":"ZZZ","coeff":1.0}]})"),
                 ValidationError);
}

TEST(ParseHamiltonian, RejectsMalformedAndNonReal) {
    EXPECT_THROW(parse_hamiltonian("{not json"), ValidationError);
    EXPECT_THROW(parse_hamiltonian(R"({"n":1,"terms":[{"pauli":"Z","coeff":[1,2]}]})"),
                 ValidationError);
    EXPECT_THROW(parse_hamiltonian(R"({"n":1,"terms":[{"pauli":"Z","coeff":"1j"}]})"),
                 ValidationError);
    EXPECT_THROW(parse_hamiltonian(R"({"n":1,"terms":[{"pauli":"Z","coeff":1e999}]})"),
                 ValidationError);
}

TEST(ParseHamiltonian, IdentityTracksAsShift) {
    auto h = parse_hamiltonian(
        R"({"n":2,"terms":[{"pauli":"II","coeff":0.25},{"pauli":"XI","coeff":1.0}]})");
    EXPECT_DOUBLE_EQ(h.identity_coeff(), 0.25);
    EXPECT_EQ(h.terms().size(), 1u);
    auto round = parse_hamiltonian(h.to_json());
    EXPECT_DOUBLE_EQ(round.identity_coeff(), 0.25);
    EXPECT_DOUBLE_EQ(round.coeff(PauliString::parse("XI")), 1.0);
}

TEST(Matvec, ZEigenvector) {
    auto h = parse_hamiltonian(R"({"n":1,"terms":[{"pauli":"Z","coeff":1.0}]})");
    Eigen::VectorXcd v(2);
    v << 1, 0;
    Eigen::VectorXcd out = matvec(h, v);
    EXPECT_EQ(out[0], C(1, 0));
    EXPECT_EQ(out[1], C(0, 0));
}

TEST(Matvec, XFlips) {
    auto h = parse_hamiltonian(R"({"n":1,"terms":[{"pauli":"X","coeff":1.0}]})");
    Eigen::VectorXcd v(2);
    v << 1, 0;
    Eigen::VectorXcd out = matvec(h, v);
    EXPECT_EQ(out[0], C(0, 0));
    EXPECT_EQ(out[1], C(1, 0));
}

TEST(Matvec, MatchesDenseProduct) {
    auto h = parse_hamiltonian(
        R"({"n":2,"terms":[{"pauli":"ZZ","coeff":1.0},{"pauli":"XI","coeff":0.5}]})");
    Rng rng(11);
    Eigen::VectorXcd v = random_vector(4, rng);
    Eigen::VectorXcd want = dense_matrix(h) * v;
    EXPECT_LE((matvec(h, v) - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Matvec, RejectsDimensionMismatch) {
    auto h = complete_graph_zz(3, 1.0);
    EXPECT_THROW(matvec(h, Eigen::VectorXcd::Zero(4)), ValidationError);
}

TEST(Matvec, AgreesWithKroneckerOracle) {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        int n = 1 + static_cast<int>(seed % 6);
        auto h = random_k_local(n, std::min(n, 3), 8, 1.0, seed);
        Rng rng(seed + 100);
        Eigen::VectorXcd v = random_vector(Eigen::Index{1} << n, rng);
        Eigen::MatrixXcd want = kron_dense(h);
        EXPECT_LE((dense_matrix(h) - want).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_LE((matvec(h, v) - want * v).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(MatvecProperty, Linearity) {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        int n = 1 + static_cast<int>(seed % 10);
        auto h = random_k_local(n, std::min(n, 3), 12, 1.0, seed);
        Rng rng(seed + 7);
        const Eigen::Index d = Eigen::Index{1} << n;
        Eigen::VectorXcd u = random_vector(d, rng);
        Eigen::VectorXcd v = random_vector(d, rng);
        C a(standard_normal(rng), standard_normal(rng));
        C b(standard_normal(rng), standard_normal(rng));
        Eigen::VectorXcd lhs = matvec(h, a * u + b * v);
        Eigen::VectorXcd rhs = a * matvec(h, u) + b * matvec(h, v);
        double scale = 1 + rhs.cwiseAbs().maxCoeff();
        EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff() / scale, 1e-12);
    }
}

TEST(MatvecProperty, Hermiticity) {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        int n = 1 + static_cast<int>(seed % 10);
        auto h = random_k_local(n, std::min(n, 3), 12, 1.0, seed + 50);
        Rng rng(seed + 9);
        const Eigen::Index d = Eigen::Index{1} << n;
        Eigen::VectorXcd u = random_vector(d, rng);
        Eigen::VectorXcd v = random_vector(d, rng);
        C lhs = u.dot(matvec(h, v));
        C rhs = std::conj(v.dot(matvec(h, u)));
        EXPECT_LE(std::abs(lhs - rhs) / (1 + std::abs(lhs)), 1e-12);
    }
}

TEST(NormBound, Examples) {
    EXPECT_EQ(pauli_norm_bound(parse_hamiltonian(R"({"n":1,"terms":[{"pauli":"Z","coeff":1.0}]})")),
              1.0);
    EXPECT_EQ(pauli_norm_bound(parse_hamiltonian(
                  R"({"n":2,"terms":[{"pauli":"ZZ","coeff":1.0},{"pauli":"XI","coeff":0.5}]})")),
              1.5);
    auto cancel = parse_hamiltonian(
        R"({"n":1,"terms":[{"pauli":"Z","coeff":1.0},{"pauli":"Z","coeff":-1.0}]})");
    EXPECT_EQ(cancel.terms().size(), 0u);
    EXPECT_EQ(pauli_norm_bound(cancel), 0.0);
}

TEST(NormBound, DominatesSpectralNorm) {
    for (uint64_t seed = 0; seed < 200; ++seed) {
        int n = 1 + static_cast<int>(seed % 6);
        auto h = random_k_local(n, 1 + static_cast<int>(seed % n), 6, 1.0, seed);
        Spectrum s = exact_spectrum(h);
        double norm = std::max(std::abs(s.eigenvalues[0]), std::abs(s.eigenvalues[s.eigenvalues.size() - 1]));
        EXPECT_GE(pauli_norm_bound(h), norm - 1e-12);
    }
}

TEST(TwoLocalView, CompleteGraphZZ) {
    auto view = two_local_view(complete_graph_zz(4, 1.0));
    EXPECT_EQ(view.blocks.size(), 6u);
    for (const auto &[pair, g] : view.gammas) {
        EXPECT_NEAR(g, 1.0, 1e-12);
    }
    EXPECT_NEAR(view.gamma_total, 6.0, 1e-12);
    EXPECT_NEAR(view.delta, 6.0 / 16.0, 1e-12);
    EXPECT_FALSE(view.degenerate);
}

TEST(TwoLocalView, SingleBlock) {
    auto h = parse_hamiltonian(R"({"n":4,"terms":[{"pauli":"ZZII","coeff":1.0}]})");
    auto view = two_local_view(h);
    EXPECT_NEAR(view.gamma_max, view.gamma_total, 1e-15);
    EXPECT_NEAR(view.delta, 1.0 / 16.0, 1e-12);
}

TEST(TwoLocalView, ZeroHamiltonianIsDegenerate) {
    auto view = two_local_view(PauliSumHamiltonian(3));
    EXPECT_EQ(view.gamma_total, 0.0);
    EXPECT_TRUE(view.degenerate);
}

TEST(TwoLocalView, RejectsThreeLocal) {
    auto h = parse_hamiltonian(R"({"n":3,"terms":[{"pauli":"ZZZ","coeff":1.0}]})");
    EXPECT_THROW(two_local_view(h), ValidationError);
}

TEST(TwoLocalView, ReconstructsDenseMatrix) {
    for (uint64_t seed = 0; seed < 12; ++seed) {
        int n = 2 + static_cast<int>(seed % 5);
        auto h = random_dense_two_local(n, 1.0, seed);
        h = h + PauliSumHamiltonian(n, {{PauliString::identity(n), 0.3}});
        auto view = two_local_view(h);
        const Eigen::Index d = Eigen::Index{1} << n;
        Eigen::MatrixXcd sum = view.identity * Eigen::MatrixXcd::Identity(d, d);
        for (const auto &[pair, block] : view.blocks) {
            sum += embed_operator(block, {pair.first, pair.second}, n);
        }
        EXPECT_LE((sum - kron_dense(h)).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_GT(view.delta, 0.0);
        EXPECT_LE(view.delta, 1.0);
    }
}

}  // namespace
}  // namespace gibbskit
