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

#ifndef GIBBSKIT_PARTITION_H
#define GIBBSKIT_PARTITION_H

#include <atomic>
#include <cstdint>
#include <optional>
#include <vector>

#include "gibbskit/linear_operator.h"
#include "gibbskit/pauli.h"
#include "gibbskit/trace_estimation.h"

namespace gibbskit {

/// Truncated Taylor series T_k(x) = sum_{p<=k} x^p / p! accurate to
/// `epsilon` on [-b, b].
struct TaylorPlan {
    int order = 0;
    double b = 1;
    double epsilon = 0;
    /// 1/p! for p = 0..order.
    std::vector<double> coefficients;

    /// T_k(x) for scalar x.
    double evaluate(double x) const;
};

/// Smallest k >= 4b/ln2 + ln(1/eps)/ln2 with eps = delta e^{-b}. b below 1
/// is clamped to 1.
TaylorPlan taylor_order(double b, double delta);

/// T_k(G) v by Horner's rule: exactly `plan.order` products with G.
Eigen::VectorXcd taylor_matvec(const TaylorPlan &plan, const PauliSumHamiltonian &g,
                               const Eigen::VectorXcd &v);

/// T_k(G) as an operator; counts the underlying Hamiltonian products.
class TaylorOperator : public LinearOperator {
   public:
    TaylorOperator(TaylorPlan plan, const PauliSumHamiltonian &g);

    Eigen::Index dim() const override {
        return static_cast<Eigen::Index>(g_.dimension());
    }
    long hamiltonian_matvecs() const {
        return h_calls_.load(std::memory_order_relaxed);
    }
    const TaylorPlan &plan() const {
        return plan_;
    }

   protected:
    void apply(const Eigen::VectorXcd &in, Eigen::VectorXcd &out) const override;

   private:
    TaylorPlan plan_;
    const PauliSumHamiltonian &g_;
    mutable std::atomic<long> h_calls_{0};
};

struct PartitionOptions {
    TraceMethod method = TraceMethod::kCompressedHutchpp;
    /// Multiplicative shares of (1 + delta) for the Taylor, compression and
    /// Hutch++ stages; stage i gets (1 + delta)^{w_i} - 1. Must sum to 1.
    double weight_taylor = 1.0 / 3;
    double weight_compress = 1.0 / 3;
    double weight_hutch = 1.0 / 3;
    /// Fraction of eta given to the compression stage.
    double eta_compress_share = 0.5;
    /// User-supplied bound b >= ||beta H - shift||.
    std::optional<double> b_override;
    /// Use the exact operator norm (n <= exact cap) instead of sum |coeff|.
    bool exact_norm = false;
    std::optional<int> k_override;
    /// Odd number of median-boost repetitions.
    int boost = 1;
    int workers = 1;
    double c1 = 4.0;
    double c2 = 4.0;
};

struct PartitionEstimate {
    double value = 0;
    double log_value = 0;
    /// Identity component of -beta H, added back as e^{shift}.
    double shift = 0;
    double b = 0;
    int taylor_order = 0;
    double delta_taylor = 0;
    double delta_compress = 0;
    double delta_hutch = 0;
    long hamiltonian_matvecs = 0;
    /// Set when -beta H is a multiple of the identity and Z is returned exactly.
    bool exact_fast_path = false;
    TraceEstimate trace;
};

/// Relative-error estimate of Tr(e^{-beta H}) from a truncated Taylor
/// surrogate and a stochastic trace estimator.
PartitionEstimate estimate_partition(const PauliSumHamiltonian &h, double beta, double delta,
                                     double eta, uint64_t seed,
                                     const PartitionOptions &opts = PartitionOptions{});

/// -(1/beta) ln of `estimate_partition`. A relative error delta on Z maps to
/// an additive error at most |ln(1 - delta)| / beta.
double estimate_free_energy(const PauliSumHamiltonian &h, double beta, double delta, double eta,
                            uint64_t seed, const PartitionOptions &opts = PartitionOptions{});

}  // namespace gibbskit

#endif
