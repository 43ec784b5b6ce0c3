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

#ifndef GIBBSKIT_RNG_H
#define GIBBSKIT_RNG_H

#include <cmath>
#include <cstdint>
#include <random>

namespace gibbskit {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
inline uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of substream `counter` under `master`. Substreams are addressed by
/// counter only, so adding new consumers never shifts existing streams.
inline uint64_t derive_seed(uint64_t master, uint64_t counter) {
    return mix64(mix64(master) ^ mix64(counter + 0x632BE59BD9B4E019ULL));
}

inline Rng substream(uint64_t master, uint64_t counter) {
    return Rng(derive_seed(master, counter));
}

/// Uniform double in [0, 1) built from the top 53 bits. Avoids the
/// implementation-defined std::uniform_real_distribution so draws are
/// reproducible across standard libraries.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool random_bit(Rng &rng) {
    return (rng() >> 63) != 0;
}

/// Standard normal via Box-Muller on uniform01.
inline double standard_normal(Rng &rng) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    if (u1 < 1e-300) {
        u1 = 1e-300;
    }
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

/// Uniform integer in [0, bound) by rejection.
inline uint64_t uniform_below(Rng &rng, uint64_t bound) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

}  // namespace gibbskit

#endif
