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

#include "errtel/sweep_harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "errtel/loss_tree.h"
#include "errtel/noise.h"
#include "errtel/plus_cluster.h"

namespace errtel {

namespace {

constexpr Protocol kProtocols[] = {Protocol::PlusClusterError, Protocol::TreeLoss,        Protocol::TreeError,
                                   Protocol::BreakEven,        Protocol::StrategyCompare, Protocol::GhzTeleport};

const std::set<std::string> &known_axes() {
    static const std::set<std::string> axes{"n",        "n_l",  "p_gate",   "p_error", "eps_loss",
                                            "branching", "vote", "tie_rule", "flip",    "shape"};
    return axes;
}

void require_unit(double x, const char *name) {
    if (!(x >= 0 && x <= 1)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

noise::TieRule tie_rule_of(const ParamMap &p) {
    std::string text = p.text("tie_rule", "optimistic");
    auto rule = noise::parse_tie_rule(text);
    if (!rule) {
        throw std::invalid_argument("unknown tie_rule '" + text + "'");
    }
    return *rule;
}

tree::FlipConvention flip_of(const ParamMap &p) {
    std::string text = p.text("flip", "outcome");
    auto flip = tree::parse_flip_convention(text);
    if (!flip) {
        throw std::invalid_argument("unknown flip convention '" + text + "'");
    }
    return *flip;
}

plus::Shape shape_of(const ParamMap &p) {
    std::string text = p.text("shape", "PlusA");
    auto shape = plus::parse_shape(text);
    if (!shape) {
        throw std::invalid_argument("unknown shape '" + text + "'");
    }
    return *shape;
}

tree::ErrorOptions error_options_of(const ExperimentSpec &spec) {
    tree::ErrorOptions options;
    options.tie_rule = tie_rule_of(spec.params);
    options.convention = flip_of(spec.params);
    options.threads = spec.threads;
    return options;
}

/// Star graph with the survivor in the middle: depolarize everything,
/// Z-measure the leaves, X-measure the survivor. Its X value is fixed by the
/// leaf outcomes, so a mismatch means an odd number of flipped outcomes.
struct GhzExperiment {
    StabilizerTableau base{0};
    size_t n = 0;

    explicit GhzExperiment(size_t n_) : base(StabilizerTableau::graph_state(GraphTopology::star(n_))), n(n_) {}

    void trial(double p_error, Rng &rng, Tally &tally) const {
        StabilizerTableau state = base;
        for (QubitId q = 0; q < n; q++) {
            Pauli e = noise::sample_depolarizing(p_error, rng);
            if (e != Pauli::I) {
                state.apply_pauli(q, e);
            }
        }
        int parity = +1;
        for (QubitId q = 1; q < n; q++) {
            parity *= state.measure(q, Basis::Z, rng).value;
        }
        int survivor = state.measure(0, Basis::X, rng).value;
        tally.denominator++;
        tally.hits += survivor != parity;
    }
};

}  // namespace

std::string_view protocol_name(Protocol protocol) {
    switch (protocol) {
        case Protocol::PlusClusterError:
            return "PlusClusterError";
        case Protocol::TreeLoss:
            return "TreeLoss";
        case Protocol::TreeError:
            return "TreeError";
        case Protocol::BreakEven:
            return "BreakEven";
        case Protocol::StrategyCompare:
            return "StrategyCompare";
        case Protocol::GhzTeleport:
            return "GhzTeleport";
    }
    return "?";
}

Protocol parse_protocol(std::string_view text) {
    for (Protocol p : kProtocols) {
        if (text == protocol_name(p)) {
            return p;
        }
    }
    throw std::invalid_argument("unknown protocol '" + std::string(text) + "'");
}

std::string format_param(const ParamValue &value) {
    if (const bool *b = std::get_if<bool>(&value)) {
        return *b ? "true" : "false";
    }
    if (const double *d = std::get_if<double>(&value)) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", *d);
        return buf;
    }
    return std::get<std::string>(value);
}

double ParamMap::number(const std::string &name) const {
    auto it = values_.find(name);
    if (it == values_.end()) {
        throw std::invalid_argument("missing parameter '" + name + "'");
    }
    if (const double *d = std::get_if<double>(&it->second)) {
        return *d;
    }
    throw std::invalid_argument("parameter '" + name + "' is not a number");
}

double ParamMap::number(const std::string &name, double fallback) const {
    return has(name) ? number(name) : fallback;
}

uint32_t ParamMap::count(const std::string &name) const {
    double x = number(name);
    if (!(x >= 0 && x <= 4294967295.0) || x != std::floor(x)) {
        throw std::invalid_argument("parameter '" + name + "' must be a non-negative integer");
    }
    return static_cast<uint32_t>(x);
}

bool ParamMap::flag(const std::string &name, bool fallback) const {
    auto it = values_.find(name);
    if (it == values_.end()) {
        return fallback;
    }
    if (const bool *b = std::get_if<bool>(&it->second)) {
        return *b;
    }
    throw std::invalid_argument("parameter '" + name + "' is not a flag");
}

std::string ParamMap::text(const std::string &name) const {
    auto it = values_.find(name);
    if (it == values_.end()) {
        throw std::invalid_argument("missing parameter '" + name + "'");
    }
    if (const std::string *s = std::get_if<std::string>(&it->second)) {
        return *s;
    }
    throw std::invalid_argument("parameter '" + name + "' is not text");
}

std::string ParamMap::text(const std::string &name, const std::string &fallback) const {
    return has(name) ? text(name) : fallback;
}

void validate(const ExperimentSpec &spec) {
    const ParamMap &p = spec.params;
    if (spec.trials == 0) {
        throw std::invalid_argument("trials must be >= 1");
    }
    switch (spec.protocol) {
        case Protocol::GhzTeleport:
            if (p.count("n") < 1) {
                throw std::invalid_argument("n must be >= 1");
            }
            require_unit(p.number("p_error"), "p_error");
            break;
        case Protocol::PlusClusterError:
            if (p.count("n_l") < 1) {
                throw std::invalid_argument("n_l must be >= 1");
            }
            require_unit(p.number("p_error"), "p_error");
            break;
        case Protocol::StrategyCompare: {
            p.count("n_l");
            double g = p.number("p_gate");
            if (!(g > 0 && g <= 1)) {
                throw std::invalid_argument("p_gate must lie in (0, 1]");
            }
            shape_of(p);
            break;
        }
        case Protocol::TreeLoss:
            tree::TreeSpec::parse(p.text("branching"));
            require_unit(p.number("eps_loss"), "eps_loss");
            break;
        case Protocol::TreeError:
        case Protocol::BreakEven:
            tree::TreeSpec::parse(p.text("branching"));
            require_unit(p.number("eps_loss"), "eps_loss");
            require_unit(p.number("p_error"), "p_error");
            p.flag("vote", false);
            tie_rule_of(p);
            flip_of(p);
            break;
    }
}

Tally sample_protocol(const ExperimentSpec &spec, uint64_t seed, uint64_t begin, uint64_t end) {
    validate(spec);
    const ParamMap &p = spec.params;
    switch (spec.protocol) {
        case Protocol::GhzTeleport: {
            GhzExperiment experiment(p.count("n"));
            double pe = p.number("p_error");
            return run_trials(seed, begin, end, spec.threads,
                              [&](Rng &rng, Tally &t) { experiment.trial(pe, rng, t); });
        }
        case Protocol::PlusClusterError: {
            plus::NodeErrorExperiment experiment(p.count("n_l"));
            double pe = p.number("p_error");
            return run_trials(seed, begin, end, spec.threads,
                              [&](Rng &rng, Tally &t) { experiment.trial(pe, rng, t); });
        }
        case Protocol::StrategyCompare: {
            uint64_t bonds = plus::bond_count({p.count("n_l"), shape_of(p)});
            double g = p.number("p_gate");
            return run_trials(seed, begin, end, spec.threads,
                              [&](Rng &rng, Tally &t) { plus::single_shot_trial(bonds, g, rng, t); });
        }
        case Protocol::TreeLoss: {
            tree::TreeCluster tree = tree::build_tree(tree::TreeSpec::parse(p.text("branching")));
            double eps = p.number("eps_loss");
            return run_trials(seed, begin, end, spec.threads, [&](Rng &rng, Tally &t) {
                tree::TrialSample sample = tree::sample_losses(tree, eps, rng);
                tree::IndirectResult r = tree::parity_trial(tree, sample, tree::Mode::FirstSuccess,
                                                            noise::TieRule::Optimistic);
                t.denominator++;
                t.hits += !r.succeeded;
            });
        }
        case Protocol::TreeError:
        case Protocol::BreakEven: {
            tree::TreeCluster tree = tree::build_tree(tree::TreeSpec::parse(p.text("branching")));
            double eps = p.number("eps_loss");
            double pe = p.number("p_error");
            bool vote = spec.protocol == Protocol::BreakEven || p.flag("vote", false);
            tree::ErrorOptions options = error_options_of(spec);
            return run_trials(seed, begin, end, spec.threads, [&](Rng &rng, Tally &t) {
                tree::error_trial(tree, eps, pe, vote, options, rng, t);
            });
        }
    }
    throw std::invalid_argument("unknown protocol");
}

Estimate protocol_estimate(Protocol protocol, const Tally &tally) {
    Estimate e = estimate_from(tally);
    if (protocol == Protocol::GhzTeleport) {
        e.value = std::min(1.0, 2 * e.value);
        e.ci.low = std::min(1.0, 2 * e.ci.low);
        e.ci.high = std::min(1.0, 2 * e.ci.high);
    }
    return e;
}

SweepRecord run(const ExperimentSpec &spec) {
    auto start = std::chrono::steady_clock::now();
    Tally tally = sample_protocol(spec, spec.seed, 0, spec.trials);
    Estimate e = protocol_estimate(spec.protocol, tally);
    SweepRecord record;
    record.params = spec.params;
    record.estimate = e.value;
    record.ci_low = e.ci.low;
    record.ci_high = e.ci.high;
    record.trials = tally.trials;
    record.seed = spec.seed;
    record.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return record;
}

bool is_known_axis(const std::string &axis) {
    return known_axes().count(axis) != 0;
}

std::vector<SweepRecord> sweep(const ExperimentSpec &spec, const std::string &axis,
                               const std::vector<ParamValue> &values) {
    if (!is_known_axis(axis)) {
        throw std::invalid_argument("unknown sweep axis '" + axis + "'");
    }
    std::vector<SweepRecord> records;
    for (size_t i = 0; i < values.size(); i++) {
        ExperimentSpec point = spec;
        point.params.set(axis, values[i]);
        point.seed = derive_seed(spec.seed, i);
        SweepRecord record = run(point);
        record.labels = {{axis, format_param(values[i])}};
        records.push_back(std::move(record));
    }
    return records;
}

ThresholdResult bisect(const std::function<ThresholdPoint(double x, uint64_t index)> &test, double lo, double hi,
                       double tol) {
    if (!(tol > 0)) {
        throw std::invalid_argument("bisection tolerance must be > 0");
    }
    if (!(lo < hi)) {
        throw std::invalid_argument("bisection needs lo < hi");
    }
    ThresholdResult result;
    auto record = [&](ThresholdPoint point) {
        result.ambiguous |= point.ambiguous;
        result.total_trials += point.estimate.tally.trials;
        result.points.push_back(point);
        return point;
    };
    ThresholdPoint at_lo = record(test(lo, 0));
    ThresholdPoint at_hi = record(test(hi, 1));
    if (at_lo.below == at_hi.below) {
        throw std::runtime_error("threshold not bracketed: predicate is " + std::string(at_lo.below ? "true" : "false") +
                                 " at both ends");
    }
    uint64_t index = 2;
    while (hi - lo >= tol) {
        double mid = lo + (hi - lo) / 2;
        ThresholdPoint point = record(test(mid, index++));
        if (point.below == at_lo.below) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    result.lo = lo;
    result.hi = hi;
    result.value = lo + (hi - lo) / 2;
    return result;
}

ThresholdResult bisect_function(const std::function<double(double)> &f,
                                const std::function<double(double)> &boundary, double lo, double hi, double tol) {
    return bisect(
        [&](double x, uint64_t) {
            ThresholdPoint point;
            point.x = x;
            point.estimate.value = f(x);
            point.estimate.ci = {point.estimate.value, point.estimate.value};
            point.boundary = boundary(x);
            point.below = point.estimate.value <= point.boundary;
            return point;
        },
        lo, hi, tol);
}

ThresholdResult bisect_monte_carlo(const ThresholdSampler &sampler, const std::function<double(double)> &boundary,
                                   const std::function<Estimate(const Tally &)> &estimate, double lo, double hi,
                                   uint64_t seed, const ThresholdOptions &options) {
    if (options.initial_trials == 0 || options.max_trials == 0) {
        throw std::invalid_argument("threshold trial counts must be >= 1");
    }
    return bisect(
        [&](double x, uint64_t index) {
            uint64_t point_seed = derive_seed(seed, index);
            uint64_t n = std::min(options.initial_trials, options.max_trials);
            Tally tally = sampler(x, point_seed, 0, n);
            ThresholdPoint point;
            point.x = x;
            point.boundary = boundary(x);
            while (true) {
                point.estimate = estimate(tally);
                if (!point.estimate.ci.contains(point.boundary)) {
                    break;
                }
                if (n >= options.max_trials) {
                    point.ambiguous = true;
                    break;
                }
                uint64_t next = std::min(2 * n, options.max_trials);
                tally.merge(sampler(x, point_seed, n, next));
                n = next;
            }
            point.below = point.estimate.value <= point.boundary;
            return point;
        },
        lo, hi, options.tol);
}

ThresholdResult find_threshold(const ExperimentSpec &spec, const std::string &axis, double lo, double hi,
                               const ThresholdOptions &options) {
    if (!is_known_axis(axis)) {
        throw std::invalid_argument("unknown threshold axis '" + axis + "'");
    }
    ExperimentSpec base = spec;
    base.threads = options.threads;
    // Trial counts come from the options, not the spec.
    base.trials = std::max<uint64_t>(1, options.initial_trials);
    auto at = [&](double x) {
        ExperimentSpec point = base;
        point.params.set(axis, x);
        return point;
    };
    validate(at(lo));
    std::function<double(double)> boundary;
    switch (spec.protocol) {
        case Protocol::TreeLoss:
            boundary = [&](double x) { return at(x).params.number("eps_loss"); };
            break;
        case Protocol::TreeError:
        case Protocol::BreakEven:
            boundary = [&](double x) { return at(x).params.number("p_error"); };
            break;
        default:
            boundary = [&](double x) { return at(x).params.number("boundary"); };
            break;
    }
    return bisect_monte_carlo(
        [&](double x, uint64_t seed, uint64_t begin, uint64_t end) { return sample_protocol(at(x), seed, begin, end); },
        boundary, [&](const Tally &t) { return protocol_estimate(spec.protocol, t); }, lo, hi, spec.seed, options);
}

}  // namespace errtel
