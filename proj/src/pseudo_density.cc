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

#include "gibbskit/pseudo_density.h"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "gibbskit/dense.h"
#include "gibbskit/errors.h"
#include "gibbskit/rng.h"

namespace gibbskit {

struct PseudoDensityLayout {
    int n = 0;
    int k = 0;
    std::vector<PauliString> basis;
    std::map<PauliString, int> index;
    std::vector<SubsetFrame> frames;
    std::map<std::vector<int>, int> frame_index;
};

namespace {

constexpr int kPseudoQubitCap = 12;
constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

std::shared_ptr<const PseudoDensityLayout> build_layout(int n, int k) {
    auto layout = std::make_shared<PseudoDensityLayout>();
    layout->n = n;
    layout->k = k;
    for (int w = 1; w <= k; ++w) {
        int combos = 1;
        for (int i = 0; i < w; ++i) {
            combos *= 3;
        }
        for (const std::vector<int> &s : subsets_of_size(n, w)) {
            for (int code = 0; code < combos; ++code) {
                std::string letters(n, 'I');
                int rest = code;
                for (int i = w - 1; i >= 0; --i) {
                    letters[s[i]] = kLetters[1 + rest % 3];
                    rest /= 3;
                }
                PauliString p = PauliString::parse(letters);
                layout->index.emplace(p, static_cast<int>(layout->basis.size()));
                layout->basis.push_back(p);
            }
        }
    }
    for (int w = 1; w <= k; ++w) {
        for (const std::vector<int> &s : subsets_of_size(n, w)) {
            SubsetFrame f;
            f.qubits = s;
            int combos = 1 << (2 * w);
            for (int code = 1; code < combos; ++code) {
                std::string global(n, 'I');
                std::string local(w, 'I');
                for (int i = 0; i < w; ++i) {
                    const char c = kLetters[(code >> (2 * (w - 1 - i))) & 3];
                    local[i] = c;
                    global[s[i]] = c;
                }
                f.params.push_back(layout->index.at(PauliString::parse(global)));
                f.paulis.push_back(pauli_matrix(PauliString::parse(local)));
            }
            layout->frame_index.emplace(s, static_cast<int>(layout->frames.size()));
            layout->frames.push_back(std::move(f));
        }
    }
    return layout;
}

std::shared_ptr<const PseudoDensityLayout> shared_layout(int n, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const PseudoDensityLayout>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto &slot = cache[{n, k}];
    if (!slot) {
        slot = build_layout(n, k);
    }
    return slot;
}

double min_eigenvalue_of(const Eigen::MatrixXcd &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()[0];
}

}  // namespace

PseudoDensityMatrix::PseudoDensityMatrix(int n, int k) {
    if (n < 1 || n > kPseudoQubitCap) {
        throw ValidationError("pseudodensity matrices support 1 <= n <= " +
                              std::to_string(kPseudoQubitCap));
    }
    if (k < 1 || k > n) {
        throw ValidationError("locality must satisfy 1 <= k <= n");
    }
    layout_ = shared_layout(n, k);
    c_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(layout_->basis.size()));
}

PseudoDensityMatrix PseudoDensityMatrix::from_state(const Eigen::MatrixXcd &rho, int n, int k) {
    if (rho.rows() != (Eigen::Index{1} << n) || rho.cols() != rho.rows()) {
        throw ValidationError("state dimension does not match 2^n");
    }
    PseudoDensityMatrix sigma(n, k);
    Eigen::VectorXd c(sigma.num_parameters());
    for (const SubsetFrame &f : sigma.frames()) {
        Eigen::MatrixXcd reduced = partial_trace(rho, n, f.qubits);
        const int w = static_cast<int>(f.qubits.size());
        for (size_t l = 0; l < f.params.size(); ++l) {
            if (sigma.basis()[f.params[l]].weight() == w) {
                c[f.params[l]] = (reduced * f.paulis[l]).trace().real();
            }
        }
    }
    sigma.c_ = c;
    return sigma;
}

PseudoDensityMatrix PseudoDensityMatrix::product(const std::vector<Eigen::Matrix2cd> &states, int k) {
    const int n = static_cast<int>(states.size());
    PseudoDensityMatrix sigma(n, k);
    std::vector<std::array<double, 4>> single(n);
    for (int q = 0; q < n; ++q) {
        for (int a = 0; a < 4; ++a) {
            std::string l(1, kLetters[a]);
            single[q][a] = (states[q] * pauli_matrix(PauliString::parse(l))).trace().real();
        }
    }
    for (int i = 0; i < sigma.num_parameters(); ++i) {
        const PauliString &p = sigma.basis()[i];
        double v = 1;
        for (int q : p.support()) {
            const char c = p.letter(q);
            v *= single[q][c == 'X' ? 1 : c == 'Y' ? 2 : 3];
        }
        sigma.c_[i] = v;
    }
    return sigma;
}

int PseudoDensityMatrix::num_qubits() const {
    return layout_->n;
}

int PseudoDensityMatrix::locality() const {
    return layout_->k;
}

const std::vector<PauliString> &PseudoDensityMatrix::basis() const {
    return layout_->basis;
}

int PseudoDensityMatrix::index_of(const PauliString &p) const {
    auto it = layout_->index.find(p);
    return it == layout_->index.end() ? -1 : it->second;
}

void PseudoDensityMatrix::set_coefficients(const Eigen::VectorXd &c) {
    if (c.size() != c_.size()) {
        throw ValidationError("coefficient vector has the wrong length");
    }
    c_ = c;
}

double PseudoDensityMatrix::expectation(const PauliString &p) const {
    if (p.num_qubits() != num_qubits()) {
        throw ValidationError("Pauli string has the wrong qubit count");
    }
    if (p.weight() == 0) {
        return 1;
    }
    const int i = index_of(p);
    if (i < 0) {
        throw ValidationError("Pauli weight exceeds the locality");
    }
    return c_[i];
}

double PseudoDensityMatrix::normalized_coefficient(int index) const {
    return std::ldexp(c_[index], -num_qubits());
}

const SubsetFrame &PseudoDensityMatrix::frame(const std::vector<int> &qubits) const {
    auto it = layout_->frame_index.find(qubits);
    if (it == layout_->frame_index.end()) {
        throw ValidationError("marginal needs an ascending subset of at most k qubits");
    }
    return layout_->frames[it->second];
}

const std::vector<SubsetFrame> &PseudoDensityMatrix::frames() const {
    return layout_->frames;
}

Eigen::MatrixXcd PseudoDensityMatrix::marginal(const std::vector<int> &qubits) const {
    if (qubits.empty()) {
        return Eigen::MatrixXcd::Ones(1, 1);
    }
    const SubsetFrame &f = frame(qubits);
    const Eigen::Index d = Eigen::Index{1} << qubits.size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d);
    for (size_t l = 0; l < f.params.size(); ++l) {
        const double c = c_[f.params[l]];
        if (c != 0) {
            m += c * f.paulis[l];
        }
    }
    return m / static_cast<double>(d);
}

double PseudoDensityMatrix::min_eigenvalue() const {
    double lo = 1;
    for (const SubsetFrame &f : frames()) {
        if (static_cast<int>(f.qubits.size()) == locality()) {
            lo = std::min(lo, min_eigenvalue_of(marginal(f.qubits)));
        }
    }
    return lo;
}

PseudoDensityMatrix PseudoDensityMatrix::mix(double lambda, const PseudoDensityMatrix &other) const {
    if (other.layout_ != layout_) {
        throw ValidationError("cannot mix pseudodensity matrices of different shapes");
    }
    PseudoDensityMatrix out = *this;
    out.c_ = lambda * c_ + (1 - lambda) * other.c_;
    return out;
}

PseudoDensityMatrix random_pseudo_density(int n, int k, uint64_t seed, double fraction) {
    if (!(fraction > 0 && fraction < 1)) {
        throw ValidationError("boundary fraction must lie in (0, 1)");
    }
    PseudoDensityMatrix sigma(n, k);
    Rng rng(seed);
    Eigen::VectorXd dir(sigma.num_parameters());
    for (Eigen::Index i = 0; i < dir.size(); ++i) {
        dir[i] = standard_normal(rng);
    }
    auto feasible_at = [&](double t) {
        sigma.set_coefficients(t * dir);
        return sigma.min_eigenvalue() >= 0;
    };
    double lo = 1 / dir.lpNorm<1>();
    double hi = 2 * lo;
    while (feasible_at(hi)) {
        lo = hi;
        hi *= 2;
    }
    for (int it = 0; it < 60; ++it) {
        const double mid = (lo + hi) / 2;
        (feasible_at(mid) ? lo : hi) = mid;
    }
    sigma.set_coefficients(fraction * lo * dir);
    return sigma;
}

}  // namespace gibbskit
