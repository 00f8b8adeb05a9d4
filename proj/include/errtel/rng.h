// Copyright 2026 The errtel Authors
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

#pragma once

#include <cstdint>
#include <limits>

namespace errtel {

/// SplitMix64 finalizer. Used both to seed generators and to derive substreams.
constexpr uint64_t splitmix64(uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Substream derivation: the seed of stream `index` under master seed `seed`.
///
/// This function is part of the reproducibility contract. Every Monte Carlo
/// trial i of a run with seed s draws from Rng(derive_seed(s, i)), so results
/// depend only on (s, i) and never on scheduling or thread count.
constexpr uint64_t derive_seed(uint64_t seed, uint64_t index) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// xoshiro256** generator. Satisfies UniformRandomBitGenerator, but the
/// helpers below are preferred because std distributions are not portable
/// bit-for-bit across standard libraries.
class Rng {
   public:
    using result_type = uint64_t;

    explicit Rng(uint64_t seed) noexcept;

    static constexpr result_type min() noexcept {
        return 0;
    }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }
    bool bernoulli(double p) noexcept {
        return uniform() < p;
    }
    bool coin() noexcept {
        return ((*this)() >> 63) != 0;
    }
    /// Uniform integer in [0, n). n must be positive.
    uint64_t below(uint64_t n) noexcept;

   private:
    uint64_t s_[4];
};

}  // namespace errtel
