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

#ifndef GIBBSKIT_ERRORS_H
#define GIBBSKIT_ERRORS_H

#include <stdexcept>
#include <string>

namespace gibbskit {

/// Raised when inputs violate an operation's preconditions (bad files, bad
/// flags, out-of-range parameters). The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
   public:
    explicit ValidationError(const std::string &what) : std::invalid_argument(what) {
    }
};

/// Raised when a numerical procedure fails: non-convergence, an infeasible
/// pseudodensity matrix, an operator that is observed to be indefinite.
/// The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
   public:
    explicit NumericalError(const std::string &what) : std::runtime_error(what) {
    }
};

}  // namespace gibbskit

#endif
