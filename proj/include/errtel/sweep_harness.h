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
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "errtel/stats.h"

namespace errtel {

enum class Protocol : uint8_t {
    PlusClusterError,
    TreeLoss,
    TreeError,
    BreakEven,
    StrategyCompare,
    GhzTeleport,
};

std::string_view protocol_name(Protocol protocol);
/// Throws std::invalid_argument on an unknown name.
Protocol parse_protocol(std::string_view text);

/// Parameter values: numbers are doubles, flags bools, and names or
/// branching vectors ("3,3") strings.
using ParamValue = std::variant<bool, double, std::string>;

/// Renders a value the way CSV cells and config lines show it (%.6g for numbers).
std::string format_param(const ParamValue &value);

class ParamMap {
   public:
    void set(const std::string &name, ParamValue value) {
        values_[name] = std::move(value);
    }
    bool has(const std::string &name) const {
        return values_.count(name) != 0;
    }
    const std::map<std::string, ParamValue> &values() const {
        return values_;
    }
    /// Typed lookups. Throw std::invalid_argument when the parameter is missing
    /// (and no fallback is given) or has the wrong type.
    double number(const std::string &name) const;
    double number(const std::string &name, double fallback) const;
    uint32_t count(const std::string &name) const;
    bool flag(const std::string &name, bool fallback) const;
    std::string text(const std::string &name) const;
    std::string text(const std::string &name, const std::string &fallback) const;

    bool operator==(const ParamMap &) const = default;

   private:
    std::map<std::string, ParamValue> values_;
};

/// One experiment: a protocol, its parameters, and how many seeded trials to run.
///
/// Parameters per protocol (defaults in brackets):
///   GhzTeleport       n, p_error
///   PlusClusterError  n_l, p_error
///   StrategyCompare   n_l, p_gate, shape [PlusA]
///   TreeLoss          branching, eps_loss
///   TreeError         branching, eps_loss, p_error, vote [false],
///                     tie_rule [optimistic], flip [outcome]
///   BreakEven         as TreeError with vote forced on
struct ExperimentSpec {
    Protocol protocol = Protocol::GhzTeleport;
    ParamMap params;
    uint64_t trials = 10000;
    uint64_t seed = 0;
    /// Worker threads for the trials; 0 means one per hardware thread.
    unsigned threads = 1;
};

/// Throws std::invalid_argument if a required parameter is missing or out of range.
void validate(const ExperimentSpec &spec);

struct SweepRecord {
    ParamMap params;
    /// Swept axes as (name, rendered value) pairs; empty for a single run.
    std::vector<std::pair<std::string, std::string>> labels;
    double estimate = 0;
    double ci_low = 0;
    double ci_high = 1;
    uint64_t trials = 0;
    uint64_t seed = 0;
    double wall_ms = 0;
};

/// The estimator behind each protocol, as counts: trials [begin, end) of
/// seed `seed`. Used by run() and by the escalating threshold search.
Tally sample_protocol(const ExperimentSpec &spec, uint64_t seed, uint64_t begin, uint64_t end);

/// Point estimate and interval for a tally of `protocol`. GhzTeleport counts
/// parity failures, which happen at half the teleported error rate, so its
/// estimate and interval are scaled by two.
Estimate protocol_estimate(Protocol protocol, const Tally &tally);

SweepRecord run(const ExperimentSpec &spec);

/// One record per value, in the given order. Value i runs with seed
/// derive_seed(spec.seed, i). Throws on an unknown axis.
std::vector<SweepRecord> sweep(const ExperimentSpec &spec, const std::string &axis,
                               const std::vector<ParamValue> &values);

/// Parameters that may be swept or bisected over.
bool is_known_axis(const std::string &axis);

/// Outcome of testing one bisection point.
struct ThresholdPoint {
    double x = 0;
    /// estimate <= boundary
    bool below = false;
    /// The interval still straddled the boundary when the trial cap was hit.
    bool ambiguous = false;
    Estimate estimate;
    double boundary = 0;
};

struct ThresholdResult {
    double value = 0;
    /// Final bracket.
    double lo = 0;
    double hi = 0;
    bool ambiguous = false;
    uint64_t total_trials = 0;
    std::vector<ThresholdPoint> points;
};

struct ThresholdOptions {
    double tol = 1e-3;
    uint64_t initial_trials = 10000;
    uint64_t max_trials = 1000000;
    unsigned threads = 1;
};

/// Bisection on [lo, hi] for the point where `below(x)` changes value.
/// `test(x, index)` decides one point; index counts the points tested so far
/// (0 and 1 are the ends). Throws std::invalid_argument if tol <= 0 or lo >= hi,
/// and std::runtime_error if the ends are not bracketed.
ThresholdResult bisect(const std::function<ThresholdPoint(double x, uint64_t index)> &test, double lo, double hi,
                       double tol);

/// Noise-free bisection of the predicate f(x) <= boundary(x).
ThresholdResult bisect_function(const std::function<double(double)> &f,
                                const std::function<double(double)> &boundary, double lo, double hi, double tol);

/// Monte Carlo bisection of estimate(x) <= boundary(x). At each point, trials
/// double from options.initial_trials (reusing the trials already run) until
/// the Wilson interval excludes the boundary or options.max_trials is reached,
/// in which case the point is flagged ambiguous and decided by its estimate.
/// `sampler(x, seed, begin, end)` runs trials [begin, end) of point x; point
/// i uses seed derive_seed(seed, i).
using ThresholdSampler = std::function<Tally(double x, uint64_t seed, uint64_t begin, uint64_t end)>;
ThresholdResult bisect_monte_carlo(const ThresholdSampler &sampler, const std::function<double(double)> &boundary,
                                   const std::function<Estimate(const Tally &)> &estimate, double lo, double hi,
                                   uint64_t seed, const ThresholdOptions &options);

/// Threshold along `axis` for the protocol's natural predicate: TreeLoss
/// bisects eps_eff <= eps_loss, BreakEven and TreeError bisect
/// p_eff <= p_error, and the other protocols estimate <= params "boundary".
ThresholdResult find_threshold(const ExperimentSpec &spec, const std::string &axis, double lo, double hi,
                               const ThresholdOptions &options);

}  // namespace errtel
