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

#ifndef GIBBSKIT_TRACE_ESTIMATION_H
#define GIBBSKIT_TRACE_ESTIMATION_H

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "gibbskit/linear_operator.h"

namespace gibbskit {

enum class TraceMethod { kHutchinson, kHutchpp, kCompressedHutchpp };

std::string method_name(TraceMethod m);
/// Accepts "hutchinson", "hutchpp", "compressed" (or "compressed-hutchpp").
TraceMethod parse_method(const std::string &name);

struct TraceEstimate {
    double value = 0;
    TraceMethod method = TraceMethod::kHutchpp;
    /// Calls to the operator whose trace is estimated.
    long matvec_count = 0;
    double wall_ms = 0;
    /// Probe parameter m (Hutch++ draws 2m probes).
    int probes = 0;
    /// Dimension of the captured range subspace (Hutch++ only).
    int rank = 0;
    /// Compression width; equals n when compression is bypassed.
    int k_compress = 0;
    bool compression_bypassed = false;
    double delta = 0;
    double eta = 0;
    uint64_t seed = 0;
    int repetitions = 1;
};

struct HutchOptions {
    /// Caller asserts the operator is positive semidefinite. Hutch++ refuses
    /// to run without it.
    bool psd_attested = false;
    int workers = 1;
    /// Constants in probes_for.
    double c1 = 4.0;
    double c2 = 4.0;
};

/// m = ceil(c1 sqrt(ln(1/eta)) / delta + c2 ln(1/eta)), at least 2.
int probes_for(double delta, double eta, double c1 = 4.0, double c2 = 4.0);

/// Hutchinson: mean of <psi|A|psi> over m Rademacher probes.
TraceEstimate hutchinson(const LinearOperator &a, int m, uint64_t seed, int workers = 1);

/// Hutch++ on the real symmetrization Re(A) with 2m Rademacher probes.
///
/// Matvec ledger: m range-finding products, one per retained basis vector
/// for Tr(QA), and one per residual probe whose projection is nonzero; at
/// most 3m in total. Throws NumericalError if a quadratic form comes out
/// negative, which certifies that A is not PSD.
TraceEstimate hutchpp(const LinearOperator &a, int m, uint64_t seed, const HutchOptions &opts);

/// Budget for compressed Hutch++ on an n-qubit operator.
struct CompressionPlan {
    int n = 0;
    int k = 0;
    bool bypass = false;
    int probes = 0;
    double delta_compress = 0;
    double eta_compress = 0;
    double delta_hutch = 0;
    double eta_hutch = 0;
};

/// Plans compression with error delta_c / failure eta_c and Hutch++ with
/// delta_h / eta_h. When the width reaches n, compression is bypassed and
/// Hutch++ inherits the whole budget: (1+delta_c)(1+delta_h) - 1 and
/// eta_c + eta_h.
CompressionPlan plan_compression(int n, double delta_c, double eta_c, double delta_h, double eta_h,
                                 std::optional<int> k_override = std::nullopt, double c1 = 4.0,
                                 double c2 = 4.0);

/// Default plan for overall (delta, eta): the two stages get equal
/// multiplicative shares sqrt(1+delta) - 1 and equal failure shares eta / 2.
CompressionPlan plan_compression(int n, double delta, double eta,
                                 std::optional<int> k_override = std::nullopt, double c1 = 4.0,
                                 double c2 = 4.0);

/// Samples one Clifford, runs Hutch++ on phi_U(A) and rescales by 2^{n-k}.
TraceEstimate compressed_hutchpp(const LinearOperator &a, const CompressionPlan &plan, uint64_t seed,
                                 const HutchOptions &opts);

/// Median of `ell` (odd) repetitions. Repetition 0 runs with `seed`, later
/// ones with derive_seed(seed, r).
TraceEstimate median_boost(const std::function<TraceEstimate(uint64_t)> &base, int ell, uint64_t seed,
                           int workers = 1);

}  // namespace gibbskit

#endif
