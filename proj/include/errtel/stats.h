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

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

#include "errtel/rng.h"

namespace errtel {

/// z for a two-sided 95% interval.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
    double low = 0;
    double high = 1;
    bool contains(double x) const {
        return low <= x && x <= high;
    }
};

/// Wilson score interval for `hits` successes out of `n` Bernoulli trials.
/// n == 0 gives the uninformative [0, 1].
Interval wilson_interval(uint64_t hits, uint64_t n, double z = kZ95);

/// Counters accumulated by Monte Carlo trials. `denominator` counts the trials
/// that enter the estimate (conditioned protocols discard some); `hits` counts
/// the events being estimated among them.
struct Tally {
    uint64_t trials = 0;
    uint64_t denominator = 0;
    uint64_t hits = 0;
    /// Protocol-specific extra counter (e.g. summed attempts or voters).
    uint64_t aux = 0;

    void merge(const Tally &other) {
        trials += other.trials;
        denominator += other.denominator;
        hits += other.hits;
        aux += other.aux;
    }
    bool operator==(const Tally &) const = default;
};

struct Estimate {
    double value = 0;
    Interval ci;
    Tally tally;
};

/// Point estimate hits/denominator with its Wilson interval.
Estimate estimate_from(const Tally &tally, double z = kZ95);

/// Runs trials [begin, end) of a seeded experiment. Trial i gets its own
/// Rng(derive_seed(seed, i)) and adds its result into a Tally through
/// `trial(Rng &, Tally &)`. The blocks handed to each thread are contiguous
/// and the reduction is a sum, so the result does not depend on `threads`.
/// `trial` must be safe to call concurrently (capture shared state by const).
template <class TrialFn>
Tally run_trials(uint64_t seed, uint64_t begin, uint64_t end, unsigned threads, const TrialFn &trial) {
    auto run_block = [&](uint64_t lo, uint64_t hi, Tally &out) {
        for (uint64_t i = lo; i < hi; i++) {
            Rng rng(derive_seed(seed, i));
            trial(rng, out);
            out.trials++;
        }
    };
    if (end <= begin) {
        return {};
    }
    uint64_t count = end - begin;
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<uint64_t>(threads, count));
    if (threads <= 1) {
        Tally total;
        run_block(begin, end, total);
        return total;
    }
    std::vector<Tally> partial(threads);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; t++) {
        uint64_t lo = begin + count * t / threads;
        uint64_t hi = begin + count * (t + 1) / threads;
        workers.emplace_back(run_block, lo, hi, std::ref(partial[t]));
    }
    for (auto &w : workers) {
        w.join();
    }
    Tally total;
    for (const auto &p : partial) {
        total.merge(p);
    }
    return total;
}

}  // namespace errtel
