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

#include "gibbskit/linear_operator.h"

#include <string>

#include "gibbskit/errors.h"

namespace gibbskit {

void LinearOperator::throw_dimension_mismatch(Eigen::Index got) const {
    throw ValidationError("vector length " + std::to_string(got) + " does not match operator dimension " +
                          std::to_string(dim()));
}

DenseOperator::DenseOperator(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw ValidationError("dense operator must be square");
    }
}

}  // namespace gibbskit
