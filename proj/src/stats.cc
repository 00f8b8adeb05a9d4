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

#include "errtel/stats.h"

#include <cmath>

namespace errtel {

Interval wilson_interval(uint64_t hits, uint64_t n, double z) {
    if (n == 0) {
        return {0, 1};
    }
    double nn = static_cast<double>(n);
    double phat = static_cast<double>(hits) / nn;
    double z2 = z * z;
    double denom = 1 + z2 / nn;
    double center = (phat + z2 / (2 * nn)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / nn + z2 / (4 * nn * nn)) / denom;
    Interval out{std::max(0.0, center - half), std::min(1.0, center + half)};
    // Pin the closed ends so a degenerate estimate sits inside its interval.
    if (hits == 0) {
        out.low = 0;
    }
    if (hits == n) {
        out.high = 1;
    }
    return out;
}

Estimate estimate_from(const Tally &tally, double z) {
    Estimate e;
    e.tally = tally;
    e.value = tally.denominator == 0 ? 0.0 : static_cast<double>(tally.hits) / static_cast<double>(tally.denominator);
    e.ci = wilson_interval(tally.hits, tally.denominator, z);
    return e;
}

}  // namespace errtel
