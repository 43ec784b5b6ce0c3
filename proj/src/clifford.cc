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

#include "gibbskit/clifford.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gibbskit/errors.h"

namespace gibbskit {

namespace {

// Square or rectangular GF(2) matrix, row-major bytes.
class BitMat {
   public:
    BitMat(int rows, int cols) : rows_(rows), cols_(cols), bits_(static_cast<size_t>(rows) * cols, 0) {
    }
    explicit BitMat(int n) : BitMat(n, n) {
    }

    static BitMat identity(int n) {
        BitMat m(n);
        for (int i = 0; i < n; ++i) {
            m.set(i, i, 1);
        }
        return m;
    }

    static BitMat from_quadrants(const BitMat &a, const BitMat &b, const BitMat &c, const BitMat &d) {
        const int n = a.rows_;
        BitMat m(2 * n);
        for (int r = 0; r < n; ++r) {
            for (int col = 0; col < n; ++col) {
                m.set(r, col, a.get(r, col));
                m.set(r, col + n, b.get(r, col));
                m.set(r + n, col, c.get(r, col));
                m.set(r + n, col + n, d.get(r, col));
            }
        }
        return m;
    }

    uint8_t get(int r, int c) const {
        return bits_[static_cast<size_t>(r) * cols_ + c];
    }
    void set(int r, int c, uint8_t v) {
        bits_[static_cast<size_t>(r) * cols_ + c] = v & 1;
    }

    BitMat operator*(const BitMat &other) const {
        BitMat out(rows_, other.cols_);
        for (int r = 0; r < rows_; ++r) {
            for (int k = 0; k < cols_; ++k) {
                if (!get(r, k)) {
                    continue;
                }
                for (int c = 0; c < other.cols_; ++c) {
                    out.bits_[static_cast<size_t>(r) * other.cols_ + c] ^= other.get(k, c);
                }
            }
        }
        return out;
    }

    BitMat transposed() const {
        BitMat out(cols_, rows_);
        for (int r = 0; r < rows_; ++r) {
            for (int c = 0; c < cols_; ++c) {
                out.set(c, r, get(r, c));
            }
        }
        return out;
    }

    // Inverse of a unit lower-triangular matrix by forward elimination.
    BitMat inv_lower_triangular() const {
        const int n = rows_;
        BitMat work = *this;
        BitMat inv = identity(n);
        for (int c = 0; c < n; ++c) {
            for (int r = c + 1; r < n; ++r) {
                if (work.get(r, c)) {
                    for (int k = 0; k < n; ++k) {
                        work.set(r, k, work.get(r, k) ^ work.get(c, k));
                        inv.set(r, k, inv.get(r, k) ^ inv.get(c, k));
                    }
                }
            }
        }
        return inv;
    }

   private:
    int rows_;
    int cols_;
    std::vector<uint8_t> bits_;
};

// Bravyi-Maslov quantum Mallows sample: Hadamard layer and permutation.
void sample_qmallows(int n, Rng &rng, std::vector<uint8_t> &hada, std::vector<int> &perm) {
    hada.clear();
    perm.clear();
    std::vector<int> remaining(n);
    for (int i = 0; i < n; ++i) {
        remaining[i] = i;
    }
    for (int i = 0; i < n; ++i) {
        const int m = static_cast<int>(remaining.size());
        const double u = uniform01(rng);
        const double eps = std::ldexp(1.0, -2 * m);
        int k = static_cast<int>(-std::ceil(std::log2(u + (1 - u) * eps)));
        k = std::clamp(k, 0, 2 * m - 1);
        hada.push_back(k < m ? 1 : 0);
        if (k >= m) {
            k = 2 * m - k - 1;
        }
        perm.push_back(remaining[k]);
        remaining.erase(remaining.begin() + k);
    }
}

BitMat random_symplectic(int n, Rng &rng) {
    std::vector<uint8_t> hada;
    std::vector<int> perm;
    sample_qmallows(n, rng, hada, perm);
    auto bit = [&rng]() -> uint8_t { return random_bit(rng) ? 1 : 0; };

    BitMat symmetric(n);
    for (int col = 0; col < n; ++col) {
        symmetric.set(col, col, bit());
        for (int row = col + 1; row < n; ++row) {
            uint8_t b = bit();
            symmetric.set(row, col, b);
            symmetric.set(col, row, b);
        }
    }

    BitMat symmetric_m(n);
    for (int col = 0; col < n; ++col) {
        symmetric_m.set(col, col, bit() & hada[col]);
        for (int row = col + 1; row < n; ++row) {
            bool b = hada[row] && hada[col];
            b |= hada[row] > hada[col] && perm[row] < perm[col];
            b |= hada[row] < hada[col] && perm[row] > perm[col];
            b &= bit() != 0;
            symmetric_m.set(row, col, b);
            symmetric_m.set(col, row, b);
        }
    }

    BitMat lower = BitMat::identity(n);
    for (int col = 0; col < n; ++col) {
        for (int row = col + 1; row < n; ++row) {
            lower.set(row, col, bit());
        }
    }

    BitMat lower_m = BitMat::identity(n);
    for (int col = 0; col < n; ++col) {
        for (int row = col + 1; row < n; ++row) {
            bool b = hada[row] < hada[col];
            b |= hada[row] && hada[col] && perm[row] > perm[col];
            b |= !hada[row] && !hada[col] && perm[row] < perm[col];
            b &= bit() != 0;
            lower_m.set(row, col, b);
        }
    }

    BitMat prod = symmetric * lower;
    BitMat prod_m = symmetric_m * lower_m;
    BitMat inv = lower.inv_lower_triangular().transposed();
    BitMat inv_m = lower_m.inv_lower_triangular().transposed();
    BitMat fused = BitMat::from_quadrants(lower, BitMat(n), prod, inv);
    BitMat fused_m = BitMat::from_quadrants(lower_m, BitMat(n), prod_m, inv_m);

    BitMat u(2 * n);
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < 2 * n; ++col) {
            u.set(row, col, fused.get(perm[row], col));
            u.set(row + n, col, fused.get(perm[row] + n, col));
        }
    }
    for (int row = 0; row < n; ++row) {
        if (hada[row]) {
            for (int col = 0; col < 2 * n; ++col) {
                uint8_t t = u.get(row, col);
                u.set(row, col, u.get(row + n, col));
                u.set(row + n, col, t);
            }
        }
    }
    return fused_m * u;
}

// Conjugation of one row by a gate: P -> g P g^dag.
void conjugate_row(TableauRow &r, const Gate &g) {
    switch (g.kind) {
        case GateKind::kH:
            r.sign ^= r.x[g.a] & r.z[g.a];
            std::swap(r.x[g.a], r.z[g.a]);
            break;
        case GateKind::kS:
            r.sign ^= r.x[g.a] & r.z[g.a];
            r.z[g.a] ^= r.x[g.a];
            break;
        case GateKind::kX:
            r.sign ^= r.z[g.a];
            break;
        case GateKind::kZ:
            r.sign ^= r.x[g.a];
            break;
        case GateKind::kCX: {
            const int c = g.a;
            const int t = g.b;
            r.sign ^= r.x[c] & r.z[t] & (r.x[t] ^ r.z[c] ^ 1);
            r.x[t] ^= r.x[c];
            r.z[c] ^= r.z[t];
            break;
        }
        case GateKind::kCZ:
            conjugate_row(r, {GateKind::kH, g.b});
            conjugate_row(r, {GateKind::kCX, g.a, g.b});
            conjugate_row(r, {GateKind::kH, g.b});
            break;
    }
}

// Reduces a tableau to the identity by appending gates; returns them in the
// order they were appended.
class Reducer {
   public:
    Reducer(int n, std::vector<TableauRow> rows) : n_(n), rows_(std::move(rows)) {
    }

    std::vector<Gate> run() {
        for (int i = 0; i < n_; ++i) {
            reduce_x_image(i);
            reduce_z_image(i);
        }
        return applied_;
    }

   private:
    void push(Gate g) {
        for (TableauRow &r : rows_) {
            conjugate_row(r, g);
        }
        applied_.push_back(g);
    }

    void swap_qubits(int a, int b) {
        push({GateKind::kCX, a, b});
        push({GateKind::kCX, b, a});
        push({GateKind::kCX, a, b});
    }

    void reduce_x_image(int i) {
        const TableauRow &a = rows_[i];
        int pivot = -1;
        for (int q = i; q < n_ && pivot < 0; ++q) {
            if (a.x[q]) {
                pivot = q;
            }
        }
        if (pivot < 0) {
            for (int q = i; q < n_ && pivot < 0; ++q) {
                if (a.z[q]) {
                    pivot = q;
                }
            }
            if (pivot < 0) {
                throw ValidationError("tableau rows are not independent");
            }
            push({GateKind::kH, pivot});
        }
        if (pivot != i) {
            swap_qubits(i, pivot);
        }
        for (int j = i + 1; j < n_; ++j) {
            if (rows_[i].x[j]) {
                push({GateKind::kCX, i, j});
            }
        }
        if (rows_[i].z[i]) {
            push({GateKind::kS, i});
        }
        for (int j = i + 1; j < n_; ++j) {
            if (rows_[i].z[j]) {
                push({GateKind::kCZ, i, j});
            }
        }
    }

    void reduce_z_image(int i) {
        const int row = n_ + i;
        auto rest_has = [&](const std::vector<uint8_t> &bits) {
            for (int q = i + 1; q < n_; ++q) {
                if (bits[q]) {
                    return q;
                }
            }
            return -1;
        };
        int p = rest_has(rows_[row].x);
        if (p < 0) {
            int q = rest_has(rows_[row].z);
            if (q >= 0) {
                push({GateKind::kH, q});
                p = q;
            }
        }
        if (p >= 0) {
            for (int j = i + 1; j < n_; ++j) {
                if (j != p && rows_[row].x[j]) {
                    push({GateKind::kCX, p, j});
                }
            }
            if (rows_[row].z[p]) {
                push({GateKind::kS, p});
            }
            for (int j = i + 1; j < n_; ++j) {
                if (j != p && rows_[row].z[j]) {
                    push({GateKind::kCZ, p, j});
                }
            }
            push({GateKind::kH, p});
            push({GateKind::kCX, p, i});
        }
        if (!rows_[row].z[i]) {
            throw ValidationError("tableau rows violate the commutation relations");
        }
        if (rows_[row].x[i]) {
            push({GateKind::kH, i});
            push({GateKind::kS, i});
            push({GateKind::kH, i});
        }
        if (rows_[i].sign) {
            push({GateKind::kZ, i});
        }
        if (rows_[row].sign) {
            push({GateKind::kX, i});
        }
    }

    int n_;
    std::vector<TableauRow> rows_;
    std::vector<Gate> applied_;
};

uint8_t symplectic_product(const TableauRow &a, const TableauRow &b) {
    uint8_t s = 0;
    for (size_t q = 0; q < a.x.size(); ++q) {
        s ^= (a.x[q] & b.z[q]) ^ (a.z[q] & b.x[q]);
    }
    return s;
}

}  // namespace

std::string gate_name(const Gate &g) {
    switch (g.kind) {
        case GateKind::kH:
            return "H(" + std::to_string(g.a) + ")";
        case GateKind::kS:
            return "S(" + std::to_string(g.a) + ")";
        case GateKind::kX:
            return "X(" + std::to_string(g.a) + ")";
        case GateKind::kZ:
            return "Z(" + std::to_string(g.a) + ")";
        case GateKind::kCX:
            return "CX(" + std::to_string(g.a) + "," + std::to_string(g.b) + ")";
        case GateKind::kCZ:
            return "CZ(" + std::to_string(g.a) + "," + std::to_string(g.b) + ")";
    }
    return "?";
}

CliffordTableau CliffordTableau::identity(int n) {
    if (n < 0) {
        throw ValidationError("qubit count must be non-negative");
    }
    CliffordTableau t;
    t.n_ = n;
    t.rows_.resize(2 * n);
    for (int r = 0; r < 2 * n; ++r) {
        t.rows_[r].x.assign(n, 0);
        t.rows_[r].z.assign(n, 0);
        if (r < n) {
            t.rows_[r].x[r] = 1;
        } else {
            t.rows_[r].z[r - n] = 1;
        }
    }
    return t;
}

CliffordTableau CliffordTableau::from_gates(int n, const std::vector<Gate> &gates) {
    CliffordTableau t = identity(n);
    for (const Gate &g : gates) {
        if (g.a < 0 || g.a >= n || ((g.kind == GateKind::kCX || g.kind == GateKind::kCZ) &&
                                    (g.b < 0 || g.b >= n || g.b == g.a))) {
            throw ValidationError("gate " + gate_name(g) + " is out of range");
        }
        for (TableauRow &r : t.rows_) {
            conjugate_row(r, g);
        }
    }
    t.gates_ = gates;
    return t;
}

CliffordTableau CliffordTableau::from_rows(int n, std::vector<TableauRow> rows) {
    if (static_cast<int>(rows.size()) != 2 * n) {
        throw ValidationError("tableau needs 2n rows");
    }
    CliffordTableau t;
    t.n_ = n;
    t.rows_ = std::move(rows);
    if (!t.is_symplectic()) {
        throw ValidationError("tableau rows are not symplectic");
    }
    std::vector<Gate> reducing = Reducer(n, t.rows_).run();
    // U = (g_m ... g_1)^dag = g_1^dag ... g_m^dag, so time order is reversed.
    for (auto it = reducing.rbegin(); it != reducing.rend(); ++it) {
        t.gates_.push_back(*it);
        if (it->kind == GateKind::kS) {
            t.gates_.push_back({GateKind::kZ, it->a});
        }
    }
    return t;
}

std::vector<std::vector<uint8_t>> CliffordTableau::symplectic() const {
    std::vector<std::vector<uint8_t>> m(2 * n_, std::vector<uint8_t>(2 * n_, 0));
    for (int r = 0; r < 2 * n_; ++r) {
        for (int q = 0; q < n_; ++q) {
            m[r][q] = rows_[r].x[q];
            m[r][q + n_] = rows_[r].z[q];
        }
    }
    return m;
}

bool CliffordTableau::is_symplectic() const {
    for (int a = 0; a < 2 * n_; ++a) {
        if (rows_[a].x.size() != static_cast<size_t>(n_) || rows_[a].z.size() != static_cast<size_t>(n_)) {
            return false;
        }
    }
    for (int a = 0; a < 2 * n_; ++a) {
        for (int b = a + 1; b < 2 * n_; ++b) {
            uint8_t want = (b == a + n_) ? 1 : 0;
            if (symplectic_product(rows_[a], rows_[b]) != want) {
                return false;
            }
        }
    }
    return true;
}

std::string CliffordTableau::key() const {
    std::string s;
    s.reserve(2 * n_ * (2 * n_ + 1));
    for (const TableauRow &r : rows_) {
        for (int q = 0; q < n_; ++q) {
            s.push_back(static_cast<char>('0' + r.x[q] + 2 * r.z[q]));
        }
        s.push_back(r.sign ? '-' : '+');
    }
    return s;
}

Eigen::MatrixXcd CliffordTableau::unitary() const {
    const Eigen::Index d = Eigen::Index{1} << n_;
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
        e[c] = 1;
        apply_clifford_in_place(*this, e);
        m.col(c) = e;
    }
    return m;
}

CliffordTableau sample_clifford(int n, Rng &rng) {
    if (n < 1) {
        throw ValidationError("sample_clifford needs n >= 1");
    }
    BitMat raw = random_symplectic(n, rng);
    std::vector<TableauRow> rows(2 * n);
    for (int r = 0; r < 2 * n; ++r) {
        rows[r].x.resize(n);
        rows[r].z.resize(n);
        for (int q = 0; q < n; ++q) {
            rows[r].x[q] = raw.get(r, q);
            rows[r].z[q] = raw.get(r, q + n);
        }
        rows[r].sign = random_bit(rng) ? 1 : 0;
    }
    return CliffordTableau::from_rows(n, std::move(rows));
}

void apply_gate(const Gate &g, int n, Eigen::VectorXcd &v, bool inverse) {
    const uint64_t d = uint64_t{1} << n;
    const uint64_t ba = qubit_bit(n, g.a);
    switch (g.kind) {
        case GateKind::kH: {
            const double r = 1.0 / std::sqrt(2.0);
            for (uint64_t y = 0; y < d; ++y) {
                if (y & ba) {
                    continue;
                }
                const Complex p = v[y];
                const Complex q = v[y | ba];
                v[y] = r * (p + q);
                v[y | ba] = r * (p - q);
            }
            break;
        }
        case GateKind::kS: {
            const Complex phase = inverse ? Complex(0, -1) : Complex(0, 1);
            for (uint64_t y = 0; y < d; ++y) {
                if (y & ba) {
                    v[y] *= phase;
                }
            }
            break;
        }
        case GateKind::kX:
            for (uint64_t y = 0; y < d; ++y) {
                if (!(y & ba)) {
                    std::swap(v[y], v[y | ba]);
                }
            }
            break;
        case GateKind::kZ:
            for (uint64_t y = 0; y < d; ++y) {
                if (y & ba) {
                    v[y] = -v[y];
                }
            }
            break;
        case GateKind::kCX: {
            const uint64_t bt = qubit_bit(n, g.b);
            for (uint64_t y = 0; y < d; ++y) {
                if ((y & ba) && !(y & bt)) {
                    std::swap(v[y], v[y | bt]);
                }
            }
            break;
        }
        case GateKind::kCZ: {
            const uint64_t bb = qubit_bit(n, g.b);
            for (uint64_t y = 0; y < d; ++y) {
                if ((y & ba) && (y & bb)) {
                    v[y] = -v[y];
                }
            }
            break;
        }
    }
}

void apply_clifford_in_place(const CliffordTableau &u, Eigen::VectorXcd &v, bool dagger) {
    const int n = u.num_qubits();
    if (v.size() != (Eigen::Index{1} << n)) {
        throw ValidationError("vector length does not match 2^n");
    }
    const std::vector<Gate> &gates = u.gates();
    if (dagger) {
        for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
            apply_gate(*it, n, v, true);
        }
    } else {
        for (const Gate &g : gates) {
            apply_gate(g, n, v, false);
        }
    }
}

Eigen::VectorXcd apply_clifford(const CliffordTableau &u, const Eigen::VectorXcd &v, bool dagger) {
    Eigen::VectorXcd out = v;
    apply_clifford_in_place(u, out, dagger);
    return out;
}

int compression_width(double delta, double eta, int n) {
    if (!(delta > 0 && delta <= 1) || !(eta > 0 && eta <= 1)) {
        throw ValidationError("compression width needs delta, eta in (0, 1]");
    }
    const double target = 1.0 / (eta * delta * delta);
    int k = 0;
    while (std::ldexp(1.0, k) < target * (1 - 1e-12)) {
        ++k;
    }
    return std::min(k, n);
}

int compression_width_constant(double delta, double constant, int n) {
    if (!(delta > 0 && delta <= 1) || !(constant > 0)) {
        throw ValidationError("compression width needs delta in (0, 1] and a positive constant");
    }
    return compression_width(delta, 1.0 / constant, n);
}

CompressedOracle::CompressedOracle(const LinearOperator &inner, int n, int k, CliffordTableau u)
    : inner_(inner), n_(n), k_(k), u_(std::move(u)) {
    if (k < 0 || k > n) {
        throw ValidationError("compression width must satisfy 0 <= k <= n");
    }
    if (u_.num_qubits() != n || inner.dim() != (Eigen::Index{1} << n)) {
        throw ValidationError("Clifford and inner operator must act on n qubits");
    }
}

void CompressedOracle::apply(const Eigen::VectorXcd &in, Eigen::VectorXcd &out) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_);
    v.head(in.size()) = in;
    apply_clifford_in_place(u_, v, true);
    Eigen::VectorXcd w = inner_.matvec(v);
    apply_clifford_in_place(u_, w, false);
    out = w.head(dim());
}

}  // namespace gibbskit
