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

#include "gibbskit/reductions.h"

#include <algorithm>
#include <cmath>

#include "gibbskit/errors.h"

namespace gibbskit {

namespace {

// Eigenvalues from the dense solver carry roundoff; an eigenvalue that sits
// on a bin edge is counted on both sides, which the QDOS contract allows.
constexpr double kCountSlack = 1e-9;

bool same_hamiltonian(const PauliSumHamiltonian &a, const PauliSumHamiltonian &b) {
    if (a.num_qubits() != b.num_qubits() || a.identity_coeff() != b.identity_coeff() ||
        a.terms().size() != b.terms().size()) {
        return false;
    }
    for (size_t i = 0; i < a.terms().size(); ++i) {
        if (!(a.terms()[i].pauli == b.terms()[i].pauli) || a.terms()[i].coeff != b.terms()[i].coeff) {
            return false;
        }
    }
    return true;
}

double sum_abs_terms(const PauliSumHamiltonian &h) {
    double b = 0;
    for (const PauliTerm &t : h.terms()) {
        b += std::abs(t.coeff);
    }
    return b;
}

void check_unit_interval(const PauliSumHamiltonian &h) {
    const double c0 = h.identity_coeff();
    const double b = sum_abs_terms(h);
    if (c0 - b >= 0 && c0 + b < 1) {
        return;
    }
    if (h.num_qubits() > kExactQubitCap) {
        throw ValidationError("cannot certify 0 <= H < I for n above the exact cap");
    }
    Spectrum sp = exact_spectrum(h);
    if (sp.eigenvalues.minCoeff() < -kCountSlack || sp.eigenvalues.maxCoeff() >= 1) {
        throw ValidationError("qpf_from_qdos needs the spectrum of H inside [0, 1)");
    }
}

}  // namespace

std::string jitter_sign_name(JitterSign s) {
    switch (s) {
        case JitterSign::uniform:
            return "uniform";
        case JitterSign::random:
            return "random";
        case JitterSign::plus:
            return "plus";
        case JitterSign::minus:
            return "minus";
        case JitterSign::alternate:
            return "alternate";
        case JitterSign::alternate_minus:
            return "alternate-minus";
    }
    return "uniform";
}

JitterSign parse_jitter_sign(const std::string &name) {
    for (JitterSign s : {JitterSign::uniform, JitterSign::random, JitterSign::plus, JitterSign::minus,
                         JitterSign::alternate, JitterSign::alternate_minus}) {
        if (jitter_sign_name(s) == name) {
            return s;
        }
    }
    throw ValidationError("unknown jitter sign mode '" + name + "'");
}

OracleHandle::OracleHandle(OracleKind kind, const NoiseModel &noise, int cap)
    : kind_(kind), noise_(noise), cap_(cap), rng_(substream(noise.seed, 0)) {
    if (!(noise.r >= 0) || !std::isfinite(noise.r)) {
        throw ValidationError("jitter magnitude must be finite and >= 0");
    }
}

OracleHandle OracleHandle::exact(int cap) {
    return OracleHandle(OracleKind::exact, NoiseModel{}, cap);
}

OracleHandle OracleHandle::noisy(const NoiseModel &noise, int cap) {
    return OracleHandle(OracleKind::noisy, noise, cap);
}

void OracleHandle::reset() {
    rng_ = substream(noise_.seed, 0);
    calls_ = 0;
    trace_.clear();
}

const Spectrum &OracleHandle::spectrum_of(const PauliSumHamiltonian &h, bool with_vectors) {
    const bool hit = cached_h_ && same_hamiltonian(*cached_h_, h) &&
                     (!with_vectors || cached_spec_.has_vectors());
    if (!hit) {
        cached_spec_ = exact_spectrum(h, with_vectors, cap_);
        cached_h_ = h;
        cached_diag_.clear();
    }
    return cached_spec_;
}

// Draws the signed jitter for one call; the call counter is already advanced.
double OracleHandle::jitter(double tolerance) {
    if (kind_ == OracleKind::exact) {
        return 0;
    }
    const double m = noise_.saturate ? tolerance : noise_.r;
    const bool even = (calls_ - 1) % 2 == 0;
    switch (noise_.sign) {
        case JitterSign::uniform:
            return m * (2 * uniform01(rng_) - 1);
        case JitterSign::random:
            return random_bit(rng_) ? m : -m;
        case JitterSign::plus:
            return m;
        case JitterSign::minus:
            return -m;
        case JitterSign::alternate:
            return even ? m : -m;
        case JitterSign::alternate_minus:
            return even ? -m : m;
    }
    return 0;
}

void OracleHandle::record(OracleCall call) {
    if (tracing_) {
        trace_.push_back(std::move(call));
    }
}

double OracleHandle::qdos(const PauliSumHamiltonian &h, double a, double b, double delta, double epsilon) {
    if (!(a < b) || !(delta >= 0 && delta < 1) || !(epsilon >= 0)) {
        throw ValidationError("qdos needs a < b, delta in [0, 1) and epsilon >= 0");
    }
    const Spectrum &sp = spectrum_of(h, false);
    ++calls_;
    const double j = jitter(delta);
    const double inner = static_cast<double>(sp.count_in(a - kCountSlack, b + kCountSlack));
    double base = inner;
    if (j > 0 && noise_.extremal) {
        base = static_cast<double>(sp.count_in(a - epsilon - kCountSlack, b + epsilon + kCountSlack));
    }
    const double out = base * (1 + j);
    record({"qdos", h.num_qubits(), delta, inner, out, {{"a", a}, {"b", b}, {"epsilon", epsilon}}});
    return out;
}

double OracleHandle::qpf(const PauliSumHamiltonian &h, double beta, double delta) {
    if (!std::isfinite(beta) || !(delta >= 0 && delta < 1)) {
        throw ValidationError("qpf needs finite beta and delta in [0, 1)");
    }
    const Spectrum &sp = spectrum_of(h, false);
    ++calls_;
    const double exact = sp.trace_exp(-beta);
    const double out = exact * (1 + jitter(delta));
    record({"qpf", h.num_qubits(), delta, exact, out, {{"beta", beta}}});
    return out;
}

double OracleHandle::qmv(const PauliSumHamiltonian &h, const PauliString &p, double beta, double epsilon) {
    if (p.num_qubits() != h.num_qubits()) {
        throw ValidationError("observable and Hamiltonian disagree on n");
    }
    if (!std::isfinite(beta) || !(epsilon >= 0)) {
        throw ValidationError("qmv needs finite beta and epsilon >= 0");
    }
    const Spectrum &sp = spectrum_of(h, true);
    auto it = cached_diag_.find(p);
    if (it == cached_diag_.end()) {
        it = cached_diag_.emplace(p, sp.pauli_diagonal(p)).first;
    }
    ++calls_;
    const double exact = sp.weighted_mean(it->second, -beta);
    const double out = exact + jitter(epsilon);
    record({"qmv", h.num_qubits(), epsilon, exact, out, {{"beta", beta}, {"pauli", p.str()}}});
    return out;
}

nlohmann::json OracleHandle::trace_json() const {
    nlohmann::json calls = nlohmann::json::array();
    for (const OracleCall &c : trace_) {
        calls.push_back({{"problem", c.problem},
                         {"n", c.n},
                         {"tolerance", c.tolerance},
                         {"exact", c.exact},
                         {"returned", c.returned},
                         {"params", c.params}});
    }
    nlohmann::json out = {{"kind", kind_ == OracleKind::exact ? "exact" : "noisy"}, {"calls", calls_}};
    if (kind_ == OracleKind::noisy) {
        out["noise"] = {{"r", noise_.r},
                        {"saturate", noise_.saturate},
                        {"sign", jitter_sign_name(noise_.sign)},
                        {"extremal", noise_.extremal},
                        {"seed", noise_.seed}};
    }
    out["trace"] = calls;
    return out;
}

ReductionResult qpf_from_qdos(const PauliSumHamiltonian &h, double beta, OracleHandle &qdos) {
    if (!(beta > 0) || !std::isfinite(beta)) {
        throw ValidationError("qpf_from_qdos needs beta > 0");
    }
    check_unit_interval(h);
    const int bins = std::max(4, static_cast<int>(std::ceil(4 * beta)));
    const double width = 1.0 / bins;
    const double delta_prime = 0.01;
    const double eps = width / 2;
    const long before = qdos.calls();
    double z = 0;
    for (int j = 1; j <= bins; ++j) {
        const double m = qdos.qdos(h, (j - 1) * width, j * width, delta_prime, eps);
        z += m * std::exp(-beta * (j - 1) * width);
    }
    return {z / 4, qdos.calls() - before, bins, delta_prime};
}

ReductionResult qmv_from_qpf(const PauliSumHamiltonian &h, const PauliString &p, double epsilon,
                             OracleHandle &qpf) {
    if (!(epsilon > 0 && epsilon < 1)) {
        throw ValidationError("qmv_from_qpf needs epsilon in (0, 1)");
    }
    if (p.num_qubits() != h.num_qubits()) {
        throw ValidationError("observable and Hamiltonian disagree on n");
    }
    if (p.is_identity()) {
        throw ValidationError("qmv_from_qpf needs a non-identity Pauli observable");
    }
    const double delta = epsilon * epsilon / 100;
    const long before = qpf.calls();
    const PauliSumHamiltonian shifted = h + PauliSumHamiltonian(h.num_qubits(), {{p, epsilon}});
    const double z0 = qpf.qpf(h, -1, delta);
    const double z_eps = qpf.qpf(shifted, -1, delta);
    return {(z_eps - z0) / (epsilon * z0), qpf.calls() - before, 2, delta};
}

long qmv_stage_count(double b, double delta) {
    const double by_remainder = std::ceil(100 * b * b / delta);
    const double by_step = std::ceil(3 * b);
    return std::max<long>({static_cast<long>(by_remainder), static_cast<long>(by_step), 1L});
}

ReductionResult qpf_from_qmv(const PauliSumHamiltonian &h, double delta, OracleHandle &qmv) {
    if (!(delta > 0 && delta < 1)) {
        throw ValidationError("qpf_from_qmv needs delta in (0, 1)");
    }
    const int n = h.num_qubits();
    const double b = sum_abs_terms(h);
    const long m = qmv_stage_count(b, delta);
    const double tol = b > 0 ? delta / (100 * b) : delta / 100;
    const long before = qmv.calls();
    const PauliSumHamiltonian traceless = h.traceless_part();
    double log_z = h.identity_coeff();
    if (!traceless.terms().empty()) {
        for (long p = 0; p < m; ++p) {
            const double beta_p = static_cast<double>(p) / m;
            double mu = 0;
            for (const PauliTerm &t : traceless.terms()) {
                mu += t.coeff * qmv.qmv(traceless, t.pauli, -beta_p, tol);
            }
            const double ratio = 1 + mu / m;
            if (!(ratio > 0)) {
                throw NumericalError("non-positive stage ratio in qpf_from_qmv");
            }
            log_z += std::log1p(mu / m);
        }
    }
    return {std::ldexp(std::exp(log_z), n), qmv.calls() - before, static_cast<int>(m), tol};
}

PauliSumHamiltonian disjoint_union(const PauliSumHamiltonian &h, int copies) {
    if (copies < 1) {
        throw ValidationError("disjoint_union needs at least one copy");
    }
    const int n = h.num_qubits();
    const int total = n * copies;
    if (total > kMaxQubits) {
        throw ValidationError("disjoint union exceeds the 62-qubit mask width");
    }
    std::vector<PauliTerm> terms;
    terms.reserve(h.terms().size() * copies + 1);
    for (int l = 0; l < copies; ++l) {
        const int offset = l * n;
        for (const PauliTerm &t : h.terms()) {
            uint64_t x = 0;
            uint64_t z = 0;
            for (int q = 0; q < n; ++q) {
                if (t.pauli.x_mask() & qubit_bit(n, q)) {
                    x |= qubit_bit(total, offset + q);
                }
                if (t.pauli.z_mask() & qubit_bit(n, q)) {
                    z |= qubit_bit(total, offset + q);
                }
            }
            terms.push_back({PauliString(total, x, z), t.coeff});
        }
    }
    if (h.identity_coeff() != 0) {
        terms.push_back({PauliString::identity(total), copies * h.identity_coeff()});
    }
    return PauliSumHamiltonian(total, std::move(terms));
}

double QpfEstimator::operator()(const PauliSumHamiltonian &h, double beta) const {
    if (h.num_qubits() > qubit_cap) {
        throw ValidationError("n = " + std::to_string(h.num_qubits()) + " exceeds estimator cap of " +
                              std::to_string(qubit_cap) + " qubits");
    }
    return estimate(h, beta);
}

QpfEstimator amplify_precision(const QpfEstimator &base, int copies) {
    if (copies < 1) {
        throw ValidationError("amplify_precision needs L >= 1");
    }
    if (copies == 1) {
        return base;
    }
    QpfEstimator out;
    out.qubit_cap = base.qubit_cap / copies;
    out.estimate = [base, copies](const PauliSumHamiltonian &h, double beta) {
        const double z_union = base(disjoint_union(h, copies), beta);
        if (!(z_union > 0)) {
            throw NumericalError("base estimator returned a non-positive partition function");
        }
        return std::exp(std::log(z_union) / copies);
    };
    return out;
}

QpfEstimator oracle_estimator(OracleHandle &oracle, double delta) {
    QpfEstimator out;
    out.qubit_cap = oracle.cap();
    out.estimate = [&oracle, delta](const PauliSumHamiltonian &h, double beta) {
        return oracle.qpf(h, beta, delta);
    };
    return out;
}

}  // namespace gibbskit
