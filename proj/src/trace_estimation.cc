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

#include "gibbskit/trace_estimation.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "gibbskit/clifford.h"
#include "gibbskit/errors.h"
#include "gibbskit/rng.h"
#include "gibbskit/workers.h"

namespace gibbskit {

namespace {

// Substream tags under an estimator seed.
constexpr uint64_t kRangeStream = 1;
constexpr uint64_t kResidualStream = 2;
constexpr uint64_t kCliffordStream = 3;
constexpr uint64_t kCompressedProbeStream = 4;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Eigen::VectorXd rademacher(Eigen::Index d, uint64_t seed, uint64_t stream, uint64_t index) {
    Rng rng(derive_seed(derive_seed(seed, stream), index));
    Eigen::VectorXd v(d);
    uint64_t bits = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        if ((i & 63) == 0) {
            bits = rng();
        }
        v[i] = (bits & 1) ? 1.0 : -1.0;
        bits >>= 1;
    }
    return v;
}

// Re(A v) for real v.
Eigen::VectorXd real_matvec(const LinearOperator &a, const Eigen::VectorXd &v) {
    return a.matvec(v.cast<Complex>()).real();
}

// psi^T Re(A) psi, rejecting a certifiably negative value. `a_scale` is a
// lower estimate of ||A|| so that roundoff on vectors nearly in the kernel
// is not mistaken for indefiniteness.
double checked_quadratic(const Eigen::VectorXd &psi, const Eigen::VectorXd &a_psi, double a_scale = 0) {
    const double q = psi.dot(a_psi);
    const double scale = std::max(psi.norm() * a_psi.norm(), psi.squaredNorm() * a_scale);
    if (q < -1e-10 * scale) {
        throw NumericalError("observed a negative quadratic form; operator is not PSD");
    }
    return q;
}

void check_probes(int m) {
    if (m < 1) {
        throw ValidationError("probe count must be at least 1");
    }
}

}  // namespace

std::string method_name(TraceMethod m) {
    switch (m) {
        case TraceMethod::kHutchinson:
            return "hutchinson";
        case TraceMethod::kHutchpp:
            return "hutchpp";
        case TraceMethod::kCompressedHutchpp:
            return "compressed-hutchpp";
    }
    return "?";
}

TraceMethod parse_method(const std::string &name) {
    if (name == "hutchinson") {
        return TraceMethod::kHutchinson;
    }
    if (name == "hutchpp") {
        return TraceMethod::kHutchpp;
    }
    if (name == "compressed" || name == "compressed-hutchpp") {
        return TraceMethod::kCompressedHutchpp;
    }
    throw ValidationError("unknown method '" + name + "'");
}

int probes_for(double delta, double eta, double c1, double c2) {
    if (!(delta > 0) || !(eta > 0 && eta <= 1)) {
        throw ValidationError("probes_for needs delta > 0 and eta in (0, 1]");
    }
    const double l = std::log(1.0 / eta);
    const double m = std::ceil(c1 * std::sqrt(l) / delta + c2 * l);
    return std::max(2, static_cast<int>(m));
}

TraceEstimate hutchinson(const LinearOperator &a, int m, uint64_t seed, int workers) {
    check_probes(m);
    const auto start = Clock::now();
    const long before = a.matvec_count();
    std::vector<double> values(m);
    parallel_for(m, workers, [&](int i) {
        Eigen::VectorXd psi = rademacher(a.dim(), seed, kRangeStream, i);
        values[i] = psi.dot(real_matvec(a, psi));
    });
    double sum = 0;
    for (double v : values) {
        sum += v;
    }
    TraceEstimate est;
    est.value = sum / m;
    est.method = TraceMethod::kHutchinson;
    est.matvec_count = a.matvec_count() - before;
    est.probes = m;
    est.seed = seed;
    est.wall_ms = elapsed_ms(start);
    return est;
}

TraceEstimate hutchpp(const LinearOperator &a, int m, uint64_t seed, const HutchOptions &opts) {
    check_probes(m);
    if (!opts.psd_attested) {
        throw ValidationError("Hutch++ requires a PSD attestation for its operator");
    }
    const auto start = Clock::now();
    const long before = a.matvec_count();
    const Eigen::Index d = a.dim();

    std::vector<Eigen::VectorXd> range(m);
    parallel_for(m, opts.workers, [&](int i) {
        Eigen::VectorXd psi = rademacher(d, seed, kRangeStream, i);
        range[i] = real_matvec(a, psi);
        checked_quadratic(psi, range[i]);
    });

    // Modified Gram-Schmidt with one re-orthogonalization pass.
    std::vector<Eigen::VectorXd> basis;
    for (const Eigen::VectorXd &y : range) {
        const double norm0 = y.norm();
        if (norm0 == 0 || static_cast<Eigen::Index>(basis.size()) >= d) {
            continue;
        }
        Eigen::VectorXd v = y;
        for (int pass = 0; pass < 2; ++pass) {
            for (const Eigen::VectorXd &q : basis) {
                v -= q.dot(v) * q;
            }
        }
        const double r = v.norm();
        if (r < 1e-10 * norm0) {
            continue;
        }
        basis.push_back(v / r);
    }
    const int rank = static_cast<int>(basis.size());
    double a_scale = 0;
    for (const Eigen::VectorXd &y : range) {
        a_scale = std::max(a_scale, y.norm() / std::sqrt(static_cast<double>(d)));
    }

    std::vector<double> captured(rank);
    parallel_for(rank, opts.workers, [&](int j) {
        captured[j] = checked_quadratic(basis[j], real_matvec(a, basis[j]), a_scale);
    });

    std::vector<double> residual(m, 0.0);
    parallel_for(m, opts.workers, [&](int i) {
        Eigen::VectorXd psi = rademacher(d, seed, kResidualStream, i);
        const double norm0 = psi.norm();
        for (int pass = 0; pass < 2; ++pass) {
            for (const Eigen::VectorXd &q : basis) {
                psi -= q.dot(psi) * q;
            }
        }
        if (psi.norm() <= 1e-12 * norm0) {
            return;
        }
        residual[i] = checked_quadratic(psi, real_matvec(a, psi), a_scale);
    });

    double tr_qa = 0;
    for (double c : captured) {
        tr_qa += c;
    }
    double res = 0;
    for (double r : residual) {
        res += r;
    }
    TraceEstimate est;
    est.value = tr_qa + res / m;
    est.method = TraceMethod::kHutchpp;
    est.matvec_count = a.matvec_count() - before;
    est.probes = m;
    est.rank = rank;
    est.seed = seed;
    est.wall_ms = elapsed_ms(start);
    return est;
}

CompressionPlan plan_compression(int n, double delta_c, double eta_c, double delta_h, double eta_h,
                                 std::optional<int> k_override, double c1, double c2) {
    if (!(delta_c > 0 && delta_c < 1) || !(delta_h > 0 && delta_h < 1)) {
        throw ValidationError("stage errors must lie in (0, 1)");
    }
    if (!(eta_c > 0) || !(eta_h > 0) || !(eta_c + eta_h < 1)) {
        throw ValidationError("failure budgets must be positive and sum below 1");
    }
    CompressionPlan plan;
    plan.n = n;
    plan.delta_compress = delta_c;
    plan.eta_compress = eta_c;
    plan.delta_hutch = delta_h;
    plan.eta_hutch = eta_h;
    if (k_override && *k_override < 0) {
        throw ValidationError("compression width must be non-negative");
    }
    int k = k_override ? *k_override : compression_width(delta_c, eta_c, n);
    if (k >= n) {
        plan.k = n;
        plan.bypass = true;
        plan.delta_hutch = (1 + delta_c) * (1 + delta_h) - 1;
        plan.eta_hutch = eta_c + eta_h;
        plan.delta_compress = 0;
        plan.eta_compress = 0;
    } else {
        plan.k = k;
    }
    plan.probes = probes_for(plan.delta_hutch, plan.eta_hutch, c1, c2);
    return plan;
}

CompressionPlan plan_compression(int n, double delta, double eta, std::optional<int> k_override,
                                 double c1, double c2) {
    if (!(delta > 0 && delta < 1) || !(eta > 0 && eta < 1)) {
        throw ValidationError("delta and eta must lie in (0, 1)");
    }
    const double share = std::sqrt(1 + delta) - 1;
    return plan_compression(n, share, eta / 2, share, eta / 2, k_override, c1, c2);
}

TraceEstimate compressed_hutchpp(const LinearOperator &a, const CompressionPlan &plan, uint64_t seed,
                                 const HutchOptions &opts) {
    if (a.dim() != (Eigen::Index{1} << plan.n)) {
        throw ValidationError("operator dimension does not match 2^n");
    }
    const auto start = Clock::now();
    TraceEstimate est;
    if (plan.bypass) {
        est = hutchpp(a, plan.probes, seed, opts);
    } else {
        Rng rng(derive_seed(seed, kCliffordStream));
        CompressedOracle oracle(a, plan.n, plan.k, sample_clifford(plan.n, rng));
        est = hutchpp(oracle, plan.probes, derive_seed(seed, kCompressedProbeStream), opts);
        est.value *= std::ldexp(1.0, plan.n - plan.k);
    }
    est.method = TraceMethod::kCompressedHutchpp;
    est.k_compress = plan.k;
    est.compression_bypassed = plan.bypass;
    est.seed = seed;
    est.wall_ms = elapsed_ms(start);
    return est;
}

TraceEstimate median_boost(const std::function<TraceEstimate(uint64_t)> &base, int ell, uint64_t seed,
                           int workers) {
    if (ell < 1 || ell % 2 == 0) {
        throw ValidationError("median boost needs an odd repetition count");
    }
    const auto start = Clock::now();
    std::vector<TraceEstimate> runs(ell);
    parallel_for(ell, workers, [&](int r) { runs[r] = base(r == 0 ? seed : derive_seed(seed, r)); });
    std::vector<double> values;
    long matvecs = 0;
    for (const TraceEstimate &e : runs) {
        values.push_back(e.value);
        matvecs += e.matvec_count;
    }
    std::nth_element(values.begin(), values.begin() + ell / 2, values.end());
    TraceEstimate out = runs[0];
    out.value = values[ell / 2];
    out.matvec_count = matvecs;
    out.repetitions = ell;
    out.seed = seed;
    out.wall_ms = elapsed_ms(start);
    return out;
}

}  // namespace gibbskit
