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

#include "gibbskit/pauli.h"

#include <array>
#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>
#include <utility>

#include <nlohmann/json.hpp>

#include "gibbskit/errors.h"

namespace gibbskit {

namespace {

constexpr double kDropTolerance = 1e-15;

void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw ValidationError("qubit count must lie in [1, " + std::to_string(kMaxQubits) +
                              "], got " + std::to_string(n));
    }
}

}  // namespace

PauliString::PauliString(int n, uint64_t x_mask, uint64_t z_mask) : n_(n), x_(x_mask), z_(z_mask) {
    check_qubit_count(n);
    uint64_t allowed = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
    if (((x_mask | z_mask) & ~allowed) != 0) {
        throw ValidationError("Pauli mask has bits beyond qubit count");
    }
}

PauliString PauliString::parse(std::string_view letters) {
    int n = static_cast<int>(letters.size());
    check_qubit_count(n);
    uint64_t x = 0;
    uint64_t z = 0;
    for (int q = 0; q < n; ++q) {
        uint64_t bit = qubit_bit(n, q);
        switch (letters[q]) {
            case 'I':
                break;
            case 'X':
                x |= bit;
                break;
            case 'Y':
                x |= bit;
                z |= bit;
                break;
            case 'Z':
                z |= bit;
                break;
            default:
                throw ValidationError("invalid Pauli letter '" + std::string(1, letters[q]) + "'");
        }
    }
    return PauliString(n, x, z);
}

PauliString PauliString::identity(int n) {
    return PauliString(n, 0, 0);
}

PauliString PauliString::single(int n, int q, char letter) {
    if (q < 0 || q >= n) {
        throw ValidationError("qubit index out of range");
    }
    std::string s(n, 'I');
    s[q] = letter;
    return parse(s);
}

char PauliString::letter(int q) const {
    uint64_t bit = qubit_bit(n_, q);
    bool x = (x_ & bit) != 0;
    bool z = (z_ & bit) != 0;
    if (x && z) {
        return 'Y';
    }
    if (x) {
        return 'X';
    }
    return z ? 'Z' : 'I';
}

int PauliString::weight() const {
    return std::popcount(x_ | z_);
}

int PauliString::y_count() const {
    return std::popcount(x_ & z_);
}

std::vector<int> PauliString::support() const {
    std::vector<int> out;
    for (int q = 0; q < n_; ++q) {
        if (support_mask() & qubit_bit(n_, q)) {
            out.push_back(q);
        }
    }
    return out;
}

bool PauliString::commutes_with(const PauliString &other) const {
    return ((std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_)) & 1) == 0;
}

std::string PauliString::str() const {
    std::string s(n_, 'I');
    for (int q = 0; q < n_; ++q) {
        s[q] = letter(q);
    }
    return s;
}

Complex PauliString::y_phase() const {
    static const Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kPowers[y_count() & 3];
}

bool PauliString::operator<(const PauliString &other) const {
    return std::tie(n_, x_, z_) < std::tie(other.n_, other.x_, other.z_);
}

PauliSumHamiltonian::PauliSumHamiltonian(int n) : n_(n) {
    check_qubit_count(n);
}

PauliSumHamiltonian::PauliSumHamiltonian(int n, std::vector<PauliTerm> terms) : n_(n) {
    check_qubit_count(n);
    std::map<std::pair<uint64_t, uint64_t>, double> merged;
    for (const PauliTerm &t : terms) {
        if (t.pauli.num_qubits() != n) {
            throw ValidationError("Pauli string '" + t.pauli.str() + "' does not have length " +
                                  std::to_string(n));
        }
        if (!std::isfinite(t.coeff)) {
            throw ValidationError("non-finite coefficient on '" + t.pauli.str() + "'");
        }
        if (t.pauli.is_identity()) {
            identity_ += t.coeff;
        } else {
            merged[{t.pauli.x_mask(), t.pauli.z_mask()}] += t.coeff;
        }
    }
    if (std::abs(identity_) < kDropTolerance) {
        identity_ = 0;
    }
    for (const auto &[key, c] : merged) {
        if (std::abs(c) >= kDropTolerance) {
            terms_.push_back({PauliString(n, key.first, key.second), c});
        }
    }
}

int PauliSumHamiltonian::locality() const {
    int k = 0;
    for (const PauliTerm &t : terms_) {
        k = std::max(k, t.pauli.weight());
    }
    return k;
}

bool PauliSumHamiltonian::is_real() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const PauliTerm &t) { return t.pauli.y_count() % 2 == 0; });
}

double PauliSumHamiltonian::coeff(const PauliString &p) const {
    if (p.is_identity()) {
        return identity_;
    }
    for (const PauliTerm &t : terms_) {
        if (t.pauli == p) {
            return t.coeff;
        }
    }
    return 0;
}

PauliSumHamiltonian PauliSumHamiltonian::scaled(double factor) const {
    std::vector<PauliTerm> terms = terms_;
    for (PauliTerm &t : terms) {
        t.coeff *= factor;
    }
    terms.push_back({PauliString::identity(n_), identity_ * factor});
    return PauliSumHamiltonian(n_, std::move(terms));
}

PauliSumHamiltonian PauliSumHamiltonian::traceless_part() const {
    PauliSumHamiltonian out = *this;
    out.identity_ = 0;
    return out;
}

PauliSumHamiltonian PauliSumHamiltonian::operator+(const PauliSumHamiltonian &other) const {
    if (other.n_ != n_) {
        throw ValidationError("cannot add Hamiltonians on different qubit counts");
    }
    std::vector<PauliTerm> terms = terms_;
    terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
    terms.push_back({PauliString::identity(n_), identity_ + other.identity_});
    return PauliSumHamiltonian(n_, std::move(terms));
}

void PauliSumHamiltonian::apply(const Eigen::VectorXcd &in, Eigen::VectorXcd &out) const {
    const uint64_t d = dimension();
    out = identity_ * in;
    const Complex *src = in.data();
    Complex *dst = out.data();
    // Parity of (y & z) splits into a block-constant high part and a low part
    // read from a 256-entry table of signed coefficients.
    const uint64_t block = uint64_t{1} << std::min(n_, 8);
    const uint64_t low = block - 1;
    std::array<double, 256> plus{};
    std::array<double, 256> minus{};
    for (const PauliTerm &t : terms_) {
        // The phase c * i^{#Y} is purely real or purely imaginary.
        const Complex phase = t.coeff * t.pauli.y_phase();
        const bool imaginary = t.pauli.y_count() % 2 == 1;
        const double c = imaginary ? phase.imag() : phase.real();
        const uint64_t x = t.pauli.x_mask();
        const uint64_t z = t.pauli.z_mask();
        plus[0] = c;
        minus[0] = -c;
        for (uint64_t bit = 1; bit < block; bit <<= 1) {
            const double f = (z & bit) ? -1.0 : 1.0;
            for (uint64_t l = 0; l < bit; ++l) {
                plus[bit + l] = f * plus[l];
                minus[bit + l] = f * minus[l];
            }
        }
        for (uint64_t hi = 0; hi < d; hi += block) {
            const double *sign = (std::popcount(hi & z) & 1) ? minus.data() : plus.data();
            const Complex *in_block = src + hi;
            Complex *out_block = dst + ((hi ^ x) & ~low);
            const uint64_t xl = x & low;
            if (imaginary) {
                for (uint64_t l = 0; l < block; ++l) {
                    const Complex v = in_block[l];
                    Complex &o = out_block[l ^ xl];
                    o = Complex(o.real() - sign[l] * v.imag(), o.imag() + sign[l] * v.real());
                }
            } else {
                for (uint64_t l = 0; l < block; ++l) {
                    const Complex v = in_block[l];
                    Complex &o = out_block[l ^ xl];
                    o = Complex(o.real() + sign[l] * v.real(), o.imag() + sign[l] * v.imag());
                }
            }
        }
    }
}

std::string PauliSumHamiltonian::to_json() const {
    nlohmann::json doc;
    doc["n"] = n_;
    nlohmann::json terms = nlohmann::json::array();
    if (identity_ != 0) {
        terms.push_back({{"pauli", std::string(n_, 'I')}, {"coeff", identity_}});
    }
    for (const PauliTerm &t : terms_) {
        terms.push_back({{"pauli", t.pauli.str()}, {"coeff", t.coeff}});
    }
    doc["terms"] = terms;
    return doc.dump();
}

PauliSumHamiltonian parse_hamiltonian(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed Hamiltonian JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer()) {
        throw ValidationError("Hamiltonian JSON needs an integer field \"n\"");
    }
    if (!doc.contains("terms") || !doc["terms"].is_array()) {
        throw ValidationError("Hamiltonian JSON needs an array field \"terms\"");
    }
    int n = doc["n"].get<int>();
    check_qubit_count(n);
    std::vector<PauliTerm> terms;
    for (const auto &entry : doc["terms"]) {
        if (!entry.is_object() || !entry.contains("pauli") || !entry["pauli"].is_string()) {
            throw ValidationError("each term needs a string field \"pauli\"");
        }
        if (!entry.contains("coeff") || !entry["coeff"].is_number()) {
            throw ValidationError("each term needs a real field \"coeff\"");
        }
        std::string letters = entry["pauli"].get<std::string>();
        if (static_cast<int>(letters.size()) != n) {
            throw ValidationError("Pauli string '" + letters + "' has length " +
                                  std::to_string(letters.size()) + ", expected " +
                                  std::to_string(n));
        }
        double c = entry["coeff"].get<double>();
        if (!std::isfinite(c)) {
            throw ValidationError("non-finite coefficient on '" + letters + "'");
        }
        terms.push_back({PauliString::parse(letters), c});
    }
    return PauliSumHamiltonian(n, std::move(terms));
}

PauliSumHamiltonian load_hamiltonian(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open Hamiltonian file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_hamiltonian(buf.str());
}

Eigen::VectorXcd matvec(const PauliSumHamiltonian &h, const Eigen::VectorXcd &v) {
    if (static_cast<uint64_t>(v.size()) != h.dimension()) {
        throw ValidationError("vector length " + std::to_string(v.size()) +
                              " does not match dimension " + std::to_string(h.dimension()));
    }
    Eigen::VectorXcd out;
    h.apply(v, out);
    return out;
}

double pauli_norm_bound(const PauliSumHamiltonian &h) {
    double s = std::abs(h.identity_coeff());
    for (const PauliTerm &t : h.terms()) {
        s += std::abs(t.coeff);
    }
    return s;
}

Eigen::MatrixXcd pauli_matrix(const PauliString &p) {
    const uint64_t d = uint64_t{1} << p.num_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    const Complex phase = p.y_phase();
    for (uint64_t y = 0; y < d; ++y) {
        double sign = (std::popcount(y & p.z_mask()) & 1) ? -1.0 : 1.0;
        m(static_cast<Eigen::Index>(y ^ p.x_mask()), static_cast<Eigen::Index>(y)) = sign * phase;
    }
    return m;
}

}  // namespace gibbskit
