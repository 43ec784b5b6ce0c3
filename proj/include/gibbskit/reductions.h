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

#ifndef GIBBSKIT_REDUCTIONS_H
#define GIBBSKIT_REDUCTIONS_H

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gibbskit/exact.h"
#include "gibbskit/pauli.h"
#include "gibbskit/rng.h"

namespace gibbskit {

enum class OracleKind { exact, noisy };

/// How the sign (and, for `uniform`, the size) of each jitter draw is chosen.
///   uniform          value uniform in [-m, m]
///   random           +m or -m with equal probability
///   plus / minus     always +m / -m
///   alternate        +m, -m, +m, ... by call index
///   alternate_minus  -m, +m, -m, ...
enum class JitterSign { uniform, random, plus, minus, alternate, alternate_minus };

std::string jitter_sign_name(JitterSign s);
JitterSign parse_jitter_sign(const std::string &name);

/// Noise applied on top of the exact answer. QPF and QDOS answers are scaled
/// by (1 + j); QMV answers are shifted by j. The magnitude m is `r`, or the
/// tolerance demanded by the caller when `saturate` is set.
struct NoiseModel {
    double r = 0;
    bool saturate = false;
    JitterSign sign = JitterSign::uniform;
    /// QDOS only: positive draws scale the count of the widened interval
    /// [a - eps, b + eps], the largest answer the QDOS contract permits.
    bool extremal = false;
    uint64_t seed = 0;
};

/// One oracle query, kept for the JSON trace.
struct OracleCall {
    std::string problem;  // "qdos", "qpf" or "qmv"
    int n = 0;
    double tolerance = 0;
    double exact = 0;
    double returned = 0;
    /// Problem parameters: a, b, epsilon for qdos; beta for qpf; beta, pauli for qmv.
    nlohmann::json params;
};

/// An oracle for the QDOS, QPF and QMV problems backed by exact
/// diagonalization, optionally perturbed by seeded jitter.
///
/// Conventions: qpf(h, beta) estimates Tr(e^{-beta h}) and qmv(h, p, beta)
/// estimates Tr(p e^{-beta h}) / Tr(e^{-beta h}); beta may be negative.
/// A noisy handle with r = 0 returns exactly what the exact handle returns.
class OracleHandle {
   public:
    static OracleHandle exact(int cap = kExactQubitCap);
    static OracleHandle noisy(const NoiseModel &noise, int cap = kExactQubitCap);

    /// Estimate m with (1 - delta) m_[a,b] <= m <= (1 + delta) m_[a-eps,b+eps].
    double qdos(const PauliSumHamiltonian &h, double a, double b, double delta, double epsilon);
    /// Estimate of Tr(e^{-beta h}) within relative error delta.
    double qpf(const PauliSumHamiltonian &h, double beta, double delta);
    /// Estimate of the Gibbs mean of p within additive error epsilon.
    double qmv(const PauliSumHamiltonian &h, const PauliString &p, double beta, double epsilon);

    OracleKind kind() const {
        return kind_;
    }
    const NoiseModel &noise() const {
        return noise_;
    }
    int cap() const {
        return cap_;
    }
    long calls() const {
        return calls_;
    }
    /// Calls are always counted; per-call records are kept only when enabled.
    void set_trace(bool on) {
        tracing_ = on;
    }
    const std::vector<OracleCall> &trace() const {
        return trace_;
    }
    nlohmann::json trace_json() const;
    void reset();

   private:
    OracleHandle(OracleKind kind, const NoiseModel &noise, int cap);
    const Spectrum &spectrum_of(const PauliSumHamiltonian &h, bool with_vectors);
    double jitter(double tolerance);
    void record(OracleCall call);

    OracleKind kind_;
    NoiseModel noise_;
    int cap_;
    Rng rng_;
    long calls_ = 0;
    bool tracing_ = false;
    std::vector<OracleCall> trace_;

    std::optional<PauliSumHamiltonian> cached_h_;
    Spectrum cached_spec_;
    std::map<PauliString, Eigen::VectorXd> cached_diag_;
};

struct ReductionResult {
    double value = 0;
    long oracle_calls = 0;
    /// Bins T for qpf_from_qdos, 2 for qmv_from_qpf, stages m for qpf_from_qmv.
    int stages = 0;
    /// Precision demanded from the oracle on each call.
    double oracle_tolerance = 0;
};

/// Z(beta) = Tr(e^{-beta H}) for 0 <= H < I from eigenvalue counts.
///
/// The unit interval is cut into T = max(4, ceil(4 beta)) bins
/// I_j = [(j-1)/T, j/T). Bin j is queried as QDOS(a = (j-1)/T, b = j/T,
/// delta' = 0.01, eps = 1/(2T)), and Z = sum_j m_j e^{-beta (j-1)/T}.
/// Returns Z/4, which lies in [0.99/4, 1] Z(beta) whenever every answer meets
/// the QDOS contract. Throws ValidationError for beta <= 0 or when the
/// spectrum cannot be certified to lie in [0, 1).
ReductionResult qpf_from_qdos(const PauliSumHamiltonian &h, double beta, OracleHandle &qdos);

/// Lower window factor of qpf_from_qdos: 0.99 / 4.
inline constexpr double kQdosWindowLow = 0.99 / 4.0;

/// mu = Tr(P e^H) / Tr(e^H) by a forward difference of Z(s) = Tr(e^{H + sP}):
/// two QPF calls at relative precision eps^2/100 give
/// (Z(eps) - Z(0)) / (eps Z(0)), within eps of mu. Requires eps in (0, 1)
/// and a non-identity P.
ReductionResult qmv_from_qpf(const PauliSumHamiltonian &h, const PauliString &p, double epsilon,
                             OracleHandle &qpf);

/// Z(1) = Tr(e^H) as 2^n prod_p Z(beta_{p+1}) / Z(beta_p) with beta_p = p/m.
///
/// Each ratio is estimated as 1 + mu_p / m, where mu_p = <H> in e^{beta_p H}
/// is assembled from one QMV call per Pauli term at additive precision
/// delta / (100 sum|c|). The stage count m = max(ceil(100 b^2 / delta),
/// ceil(3 b), 1) with b = sum|c| keeps the second-order remainder below
/// delta / (100 m). The identity component is factored out exactly.
/// Result within relative error delta under the oracle contract.
ReductionResult qpf_from_qmv(const PauliSumHamiltonian &h, double delta, OracleHandle &qmv);

/// Stage count used by qpf_from_qmv for norm bound b.
long qmv_stage_count(double b, double delta);

/// L copies of h on disjoint registers: copy l acts on qubits [l n, (l+1) n).
PauliSumHamiltonian disjoint_union(const PauliSumHamiltonian &h, int copies);

/// A QPF-type estimator (h, beta) -> Tr(e^{-beta h}) with its own qubit cap.
struct QpfEstimator {
    std::function<double(const PauliSumHamiltonian &, double)> estimate;
    int qubit_cap = kExactQubitCap;

    double operator()(const PauliSumHamiltonian &h, double beta) const;
};

/// Evaluates `base` on the L-fold disjoint union and takes the L-th root:
/// a relative error delta' on Z^L becomes (1 + delta')^{1/L} - 1 on Z.
/// The returned estimator throws ValidationError when L n exceeds the base cap.
QpfEstimator amplify_precision(const QpfEstimator &base, int copies);

/// QPF estimator backed by an oracle handle.
QpfEstimator oracle_estimator(OracleHandle &oracle, double delta);

}  // namespace gibbskit

#endif
