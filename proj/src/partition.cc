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

#include "gibbskit/partition.h"

#include <algorithm>
#include <cmath>

#include "gibbskit/errors.h"
#include "gibbskit/exact.h"

namespace gibbskit {

double TaylorPlan::evaluate(double x) const {
    double acc = 0;
    for (int p = order; p >= 0; --p) {
        acc = coefficients[p] + x * acc;
    }
    return acc;
}

TaylorPlan taylor_order(double b, double delta) {
    if (!std::isfinite(b)) {
        throw ValidationError("norm bound must be finite");
    }
    if (!(delta > 0 && delta < 1)) {
        throw ValidationError("Taylor error needs delta in (0, 1)");
    }
    TaylorPlan plan;
    plan.b = std::max(1.0, b);
    plan.epsilon = delta * std::exp(-plan.b);
    const double bound = 4 * plan.b / std::log(2.0) + std::log(1 / plan.epsilon) / std::log(2.0);
    plan.order = static_cast<int>(std::ceil(bound - 1e-12));
    plan.coefficients.resize(plan.order + 1);
    plan.coefficients[0] = 1;
    for (int p = 1; p <= plan.order; ++p) {
        plan.coefficients[p] = plan.coefficients[p - 1] / p;
    }
    return plan;
}

Eigen::VectorXcd taylor_matvec(const TaylorPlan &plan, const PauliSumHamiltonian &g,
                               const Eigen::VectorXcd &v) {
    if (static_cast<uint64_t>(v.size()) != g.dimension()) {
        throw ValidationError("vector length does not match 2^n");
    }
    Eigen::VectorXcd w = v;
    Eigen::VectorXcd gw;
    for (int p = plan.order; p >= 1; --p) {
        g.apply(w, gw);
        w = v + gw / static_cast<double>(p);
    }
    return w;
}

TaylorOperator::TaylorOperator(TaylorPlan plan, const PauliSumHamiltonian &g)
    : plan_(std::move(plan)), g_(g) {
}

void TaylorOperator::apply(const Eigen::VectorXcd &in, Eigen::VectorXcd &out) const {
    out = taylor_matvec(plan_, g_, in);
    h_calls_.fetch_add(plan_.order, std::memory_order_relaxed);
}

namespace {

double stage_share(double delta, double weight) {
    return std::pow(1 + delta, weight) - 1;
}

}  // namespace

PartitionEstimate estimate_partition(const PauliSumHamiltonian &h, double beta, double delta,
                                     double eta, uint64_t seed, const PartitionOptions &opts) {
    if (!(beta >= 0) || !std::isfinite(beta)) {
        throw ValidationError("partition estimate needs finite beta >= 0");
    }
    if (!(delta > 0 && delta < 1)) {
        throw ValidationError("delta must lie in (0, 1)");
    }
    if (!(eta > 0 && eta < 1)) {
        throw ValidationError("eta must lie in (0, 1)");
    }
    const double wsum = opts.weight_taylor + opts.weight_compress + opts.weight_hutch;
    if (opts.weight_taylor <= 0 || opts.weight_compress < 0 || opts.weight_hutch <= 0 ||
        std::abs(wsum - 1) > 1e-9) {
        throw ValidationError("stage weights must be positive and sum to 1");
    }
    if (!(opts.eta_compress_share > 0 && opts.eta_compress_share < 1)) {
        throw ValidationError("eta share must lie in (0, 1)");
    }

    const int n = h.num_qubits();
    PauliSumHamiltonian g = h.traceless_part().scaled(-beta);
    PartitionEstimate out;
    out.shift = -beta * h.identity_coeff();

    if (g.terms().empty()) {
        out.exact_fast_path = true;
        out.log_value = out.shift + n * std::log(2.0);
        out.value = std::exp(out.shift) * std::ldexp(1.0, n);
        out.trace.value = std::ldexp(1.0, n);
        out.trace.method = opts.method;
        out.trace.seed = seed;
        return out;
    }

    double b = pauli_norm_bound(g);
    if (opts.b_override) {
        if (!std::isfinite(*opts.b_override) || *opts.b_override <= 0) {
            throw ValidationError("norm bound override must be positive and finite");
        }
        b = *opts.b_override;
    } else if (opts.exact_norm) {
        Spectrum s = exact_spectrum(g);
        b = std::max(std::abs(s.eigenvalues[0]), std::abs(s.eigenvalues[s.eigenvalues.size() - 1]));
    }
    out.delta_taylor = stage_share(delta, opts.weight_taylor);
    TaylorPlan plan = taylor_order(b, out.delta_taylor);
    out.b = plan.b;
    out.taylor_order = plan.order;
    TaylorOperator a(plan, g);

    HutchOptions hopts;
    hopts.psd_attested = true;  // T_k(x) >= e^x - eps > 0 on [-b, b].
    hopts.workers = opts.workers;
    hopts.c1 = opts.c1;
    hopts.c2 = opts.c2;

    std::function<TraceEstimate(uint64_t)> run;
    if (opts.method == TraceMethod::kCompressedHutchpp) {
        out.delta_compress = stage_share(delta, opts.weight_compress);
        out.delta_hutch = stage_share(delta, opts.weight_hutch);
        CompressionPlan cplan =
            plan_compression(n, out.delta_compress, eta * opts.eta_compress_share, out.delta_hutch,
                             eta * (1 - opts.eta_compress_share), opts.k_override, opts.c1, opts.c2);
        if (cplan.bypass) {
            out.delta_compress = 0;
            out.delta_hutch = cplan.delta_hutch;
        }
        run = [&, cplan](uint64_t s) {
            TraceEstimate e = compressed_hutchpp(a, cplan, s, hopts);
            e.delta = delta;
            e.eta = eta;
            return e;
        };
    } else {
        out.delta_hutch = stage_share(delta, opts.weight_compress + opts.weight_hutch);
        const int m = probes_for(out.delta_hutch, eta, opts.c1, opts.c2);
        if (opts.method == TraceMethod::kHutchpp) {
            run = [&, m](uint64_t s) {
                TraceEstimate e = hutchpp(a, m, s, hopts);
                e.k_compress = n;
                e.delta = delta;
                e.eta = eta;
                return e;
            };
        } else {
            // Same matvec budget as Hutch++ at this delta.
            run = [&, m](uint64_t s) {
                TraceEstimate e = hutchinson(a, 3 * m, s, opts.workers);
                e.k_compress = n;
                e.delta = delta;
                e.eta = eta;
                return e;
            };
        }
    }

    out.trace = opts.boost == 1 ? run(seed) : median_boost(run, opts.boost, seed, 1);
    out.hamiltonian_matvecs = a.hamiltonian_matvecs();
    if (!(out.trace.value > 0)) {
        throw NumericalError("trace estimate of a positive operator came out non-positive");
    }
    out.log_value = out.shift + std::log(out.trace.value);
    out.value = std::exp(out.shift) * out.trace.value;
    return out;
}

double estimate_free_energy(const PauliSumHamiltonian &h, double beta, double delta, double eta,
                            uint64_t seed, const PartitionOptions &opts) {
    if (!(beta > 0)) {
        throw ValidationError("free energy needs beta > 0");
    }
    return -estimate_partition(h, beta, delta, eta, seed, opts).log_value / beta;
}

}  // namespace gibbskit
