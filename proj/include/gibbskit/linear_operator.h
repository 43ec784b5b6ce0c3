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

#ifndef GIBBSKIT_LINEAR_OPERATOR_H
#define GIBBSKIT_LINEAR_OPERATOR_H

#include <atomic>
#include <functional>
#include <utility>

#include <Eigen/Dense>

#include "gibbskit/pauli.h"

namespace gibbskit {

/// Square operator known only through its action on vectors.
///
/// Every call to `matvec` is counted; the count is the cost unit for all
/// estimator ledgers. Implementations must be safe to call concurrently.
class LinearOperator {
   public:
    virtual ~LinearOperator() = default;

    virtual Eigen::Index dim() const = 0;

    Eigen::VectorXcd matvec(const Eigen::VectorXcd &in) const {
        if (in.size() != dim()) {
            throw_dimension_mismatch(in.size());
        }
        calls_.fetch_add(1, std::memory_order_relaxed);
        Eigen::VectorXcd out;
        apply(in, out);
        return out;
    }

    long matvec_count() const {
        return calls_.load(std::memory_order_relaxed);
    }
    void reset_count() const {
        calls_.store(0, std::memory_order_relaxed);
    }

   protected:
    virtual void apply(const Eigen::VectorXcd &in, Eigen::VectorXcd &out) const = 0;

   private:
    [[noreturn]] void throw_dimension_mismatch(Eigen::Index got) const;

    mutable std::atomic<long> calls_{0};
};

class DenseOperator : public LinearOperator {
   public:
    explicit DenseOperator(Eigen::MatrixXcd m);

    Eigen::Index dim() const override {
        return m_.rows();
    }
    const Eigen::MatrixXcd &matrix() const {
        return m_;
    }

   protected:
    void apply(const Eigen::VectorXcd &in, Eigen::VectorXcd &out) const override {
        out.noalias() = m_ * in;
    }

   private:
    Eigen::MatrixXcd m_;
};

/// Matrix-free H v through Pauli bitmask updates.
class HamiltonianOperator : public LinearOperator {
   public:
    explicit HamiltonianOperator(const PauliSumHamiltonian &h) : h_(h) {
    }

    Eigen::Index dim() const override {
        return static_cast<Eigen::Index>(h_.dimension());
    }

   protected:
    void apply(const Eigen::VectorXcd &in, Eigen::VectorXcd &out) const override {
        h_.apply(in, out);
    }

   private:
    const PauliSumHamiltonian &h_;
};

class FunctionOperator : public LinearOperator {
   public:
    using Fn = std::function<void(const Eigen::VectorXcd &, Eigen::VectorXcd &)>;

    FunctionOperator(Eigen::Index dim, Fn fn) : dim_(dim), fn_(std::move(fn)) {
    }

    Eigen::Index dim() const override {
        return dim_;
    }

   protected:
    void apply(const Eigen::VectorXcd &in, Eigen::VectorXcd &out) const override {
        fn_(in, out);
    }

   private:
    Eigen::Index dim_;
    Fn fn_;
};

}  // namespace gibbskit

#endif
