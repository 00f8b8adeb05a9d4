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

#include "errtel/loss_tree.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace errtel::tree {

uint64_t TreeSpec::qubit_count() const {
    uint64_t total = 1;
    uint64_t layer = 1;
    for (uint32_t b : branching) {
        layer *= b;
        total += layer;
    }
    return total;
}

void TreeSpec::validate() const {
    if (branching.empty()) {
        throw std::invalid_argument("tree needs at least one level");
    }
    for (uint32_t b : branching) {
        if (b == 0) {
            throw std::invalid_argument("branching parameters must be >= 1");
        }
    }
}

std::string TreeSpec::str() const {
    std::string out;
    for (size_t k = 0; k < branching.size(); k++) {
        if (k) {
            out += ',';
        }
        out += std::to_string(branching[k]);
    }
    return out;
}

TreeSpec TreeSpec::parse(std::string_view text) {
    TreeSpec spec;
    size_t start = 0;
    while (true) {
        size_t end = text.find(',', start);
        std::string_view piece = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        uint32_t value = 0;
        auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
        if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size()) {
            throw std::invalid_argument("bad branching vector '" + std::string(text) + "'");
        }
        spec.branching.push_back(value);
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }
    spec.validate();
    return spec;
}

TreeCluster build_tree(const TreeSpec &spec) {
    spec.validate();
    TreeCluster tree;
    tree.spec = spec;
    GraphTopology &g = tree.topology;
    g.add_node("root");
    tree.level.push_back(0);
    tree.children.emplace_back();
    std::vector<QubitId> layer{0};
    for (size_t k = 0; k < spec.depth(); k++) {
        std::vector<QubitId> next;
        for (QubitId parent : layer) {
            for (uint32_t c = 0; c < spec.branching[k]; c++) {
                QubitId q = g.add_node("level-" + std::to_string(k + 1));
                g.add_edge(parent, q);
                tree.level.push_back(static_cast<uint32_t>(k + 1));
                tree.children.emplace_back();
                tree.children[parent].push_back(q);
                next.push_back(q);
            }
        }
        layer = std::move(next);
    }
    tree.state = StabilizerTableau::graph_state(g);
    return tree;
}

Basis planned_basis(uint32_t level) {
    return level % 2 == 1 ? Basis::X : Basis::Z;
}

std::string_view flip_convention_name(FlipConvention convention) {
    return convention == FlipConvention::OutcomeFlip ? "outcome" : "channel";
}

std::optional<FlipConvention> parse_flip_convention(std::string_view text) {
    if (text == "outcome") {
        return FlipConvention::OutcomeFlip;
    }
    if (text == "channel") {
        return FlipConvention::Channel;
    }
    return std::nullopt;
}

TrialSample sample_trial(const TreeCluster &tree, double eps_loss, double p_error, FlipConvention convention,
                         Rng &rng) {
    size_t n = tree.level.size();
    TrialSample sample;
    sample.lost.assign(n, 0);
    sample.error.assign(n, Pauli::I);
    sample.lost[0] = 1;
    for (size_t q = 1; q < n; q++) {
        sample.lost[q] = rng.bernoulli(eps_loss);
        if (convention == FlipConvention::OutcomeFlip) {
            if (rng.bernoulli(p_error)) {
                sample.error[q] = planned_basis(tree.level[q]) == Basis::X ? Pauli::Z : Pauli::X;
            }
        } else {
            sample.error[q] = noise::sample_depolarizing(p_error, rng);
        }
    }
    sample.tie_coin = rng.coin();
    return sample;
}

TrialSample sample_losses(const TreeCluster &tree, double eps_loss, Rng &rng) {
    size_t n = tree.level.size();
    TrialSample sample;
    sample.lost.assign(n, 0);
    sample.error.assign(n, Pauli::I);
    sample.lost[0] = 1;
    for (size_t q = 1; q < n; q++) {
        sample.lost[q] = rng.bernoulli(eps_loss);
    }
    sample.tie_coin = rng.coin();
    return sample;
}

namespace {

/// Walks the recovery rules over a loss pattern. `Measure(q)` returns the
/// (+1/-1) outcome of qubit q in its planned basis.
template <class Measure>
struct Walker {
    const TreeCluster &tree;
    const std::vector<uint8_t> &lost;
    Measure measure_fn;
    uint32_t measured = 0;

    bool workable(QubitId c) const {
        if (lost[c]) {
            return false;
        }
        for (QubitId g : tree.children[c]) {
            if (lost[g] && !recoverable(g)) {
                return false;
            }
        }
        return true;
    }
    bool recoverable(QubitId g) const {
        for (QubitId c : tree.children[g]) {
            if (workable(c)) {
                return true;
            }
        }
        return false;
    }
    int measure(QubitId q) {
        measured++;
        return measure_fn(q);
    }
    int branch_value(QubitId c) {
        int v = measure(c);
        for (QubitId g : tree.children[c]) {
            v *= lost[g] ? recover(g) : measure(g);
        }
        return v;
    }
    int recover(QubitId g) {
        for (QubitId c : tree.children[g]) {
            if (workable(c)) {
                return branch_value(c);
            }
        }
        throw std::logic_error("recover called on an unrecoverable qubit");
    }
};

template <class Measure>
Walker<Measure> make_walker(const TreeCluster &tree, const std::vector<uint8_t> &lost, Measure m) {
    return Walker<Measure>{tree, lost, std::move(m)};
}

/// Runs the protocol given a walker. `truth()` supplies the reference value
/// once the branches are measured (only consulted to score votes).
template <class W, class Truth>
IndirectResult run_protocol(W &walker, Mode mode, noise::TieRule tie_rule, bool tie_coin, Truth truth) {
    IndirectResult result;
    for (QubitId c : walker.tree.children[0]) {
        if (!walker.workable(c)) {
            continue;
        }
        int v = walker.branch_value(c);
        result.branches_used++;
        if (mode == Mode::FirstSuccess) {
            result.succeeded = true;
            result.inferred_value = v;
            break;
        }
        result.votes.push_back(v);
    }
    if (mode == Mode::Majority && !result.votes.empty()) {
        result.succeeded = true;
        int t = truth();
        int correct = 0;
        for (int v : result.votes) {
            correct += v == t;
        }
        int wrong = static_cast<int>(result.votes.size()) - correct;
        if (correct != wrong) {
            result.inferred_value = correct > wrong ? t : -t;
        } else {
            bool keep = tie_rule == noise::TieRule::Optimistic ||
                        (tie_rule == noise::TieRule::Random && tie_coin);
            result.inferred_value = keep ? t : -t;
        }
    }
    result.qubits_measured = walker.measured;
    return result;
}

IndirectResult indirect_on_state(const TreeCluster &tree, StabilizerTableau &state, const std::vector<uint8_t> &lost,
                                 Mode mode, noise::TieRule tie_rule, bool tie_coin, Rng &rng) {
    if (lost.size() != tree.level.size()) {
        throw std::invalid_argument("loss pattern size does not match the tree");
    }
    if (!lost[0]) {
        throw std::invalid_argument("indirect measurement needs the root marked lost");
    }
    auto walker = make_walker(tree, lost, [&](QubitId q) { return state.measure(q, planned_basis(tree.level[q]), rng).value; });
    return run_protocol(walker, mode, tie_rule, tie_coin, [&] {
        PauliString z_root(state.num_qubits());
        z_root.set(0, Pauli::Z);
        std::optional<int> t = state.expectation(z_root);
        if (!t.has_value()) {
            throw std::logic_error("root value not fixed by the measured branches");
        }
        return *t;
    });
}

bool flips_outcome(Pauli error, Basis basis) {
    return basis == Basis::X ? has_z(error) : has_x(error);
}

}  // namespace

IndirectResult indirect_measure_z(TreeCluster &tree, const std::vector<uint8_t> &lost, Mode mode,
                                  noise::TieRule tie_rule, bool tie_coin, Rng &rng) {
    return indirect_on_state(tree, tree.state, lost, mode, tie_rule, tie_coin, rng);
}

TrialOutcome tableau_trial(const TreeCluster &tree, const TrialSample &sample, Mode mode, noise::TieRule tie_rule,
                           Rng &rng) {
    StabilizerTableau state = tree.state;
    size_t n = tree.level.size();
    for (QubitId q = 1; q < n; q++) {
        if (sample.error[q] != Pauli::I) {
            state.apply_pauli(q, sample.error[q]);
        }
    }
    for (QubitId q = 1; q < n; q++) {
        if (sample.lost[q]) {
            state.mark_lost(q, rng);
        }
    }
    TrialOutcome outcome;
    outcome.result = indirect_on_state(tree, state, sample.lost, mode, tie_rule, sample.tie_coin, rng);
    outcome.truth = state.measure(0, Basis::Z, rng).value;
    return outcome;
}

IndirectResult parity_trial(const TreeCluster &tree, const TrialSample &sample, Mode mode, noise::TieRule tie_rule) {
    auto walker = make_walker(tree, sample.lost, [&](QubitId q) {
        return flips_outcome(sample.error[q], planned_basis(tree.level[q])) ? -1 : +1;
    });
    return run_protocol(walker, mode, tie_rule, sample.tie_coin, [] { return +1; });
}

namespace {

/// Level-indexed recursion tables; index j runs over 0..d.
struct Recursion {
    std::vector<double> recover;   // R(j): a lost level-j qubit can be recovered
    std::vector<double> workable;  // B(j): a branch headed at level j is workable
    std::vector<double> bias;      // E[value] of a workable branch headed at level j
};

Recursion recursion(const TreeSpec &spec, double eps, double flip) {
    spec.validate();
    if (!(eps >= 0 && eps <= 1)) {
        throw std::invalid_argument("eps_loss must lie in [0, 1]");
    }
    if (!(flip >= 0 && flip <= 1)) {
        throw std::invalid_argument("p_error must lie in [0, 1]");
    }
    size_t d = spec.depth();
    auto b = [&](size_t j) { return static_cast<double>(spec.branching[j - 1]); };
    double beta = 1 - 2 * flip;
    Recursion r;
    r.recover.assign(d + 1, 0.0);
    r.workable.assign(d + 1, 0.0);
    r.bias.assign(d + 1, 1.0);
    for (size_t j = d; j >= 1; j--) {
        if (j == d) {
            r.workable[j] = 1 - eps;
            r.bias[j] = beta;
        } else {
            double usable = (1 - eps) + eps * r.recover[j + 1];
            double child_bias = 1;
            if (usable > 0) {
                double recovered_bias = j + 2 <= d ? r.bias[j + 2] : 0.0;
                child_bias = ((1 - eps) * beta + eps * r.recover[j + 1] * recovered_bias) / usable;
            }
            r.workable[j] = (1 - eps) * std::pow(usable, b(j + 1));
            r.bias[j] = beta * std::pow(child_bias, b(j + 1));
        }
        r.recover[j - 1] = 1 - std::pow(1 - r.workable[j], b(j));
    }
    return r;
}

}  // namespace

double effective_loss_rate(const TreeSpec &spec, double eps_loss) {
    return 1 - recursion(spec, eps_loss, 0).recover[0];
}

Estimate effective_loss_rate_mc(const TreeSpec &spec, double eps_loss, uint64_t trials, uint64_t seed,
                                unsigned threads) {
    TreeCluster tree = build_tree(spec);
    Tally tally = run_trials(seed, 0, trials, threads, [&](Rng &rng, Tally &t) {
        TrialSample sample = sample_losses(tree, eps_loss, rng);
        auto walker = make_walker(tree, sample.lost, [](QubitId) { return +1; });
        t.denominator++;
        t.hits += !walker.recoverable(0);
    });
    return estimate_from(tally);
}

BranchStats branch_stats(const TreeSpec &spec, double eps_loss, double flip_probability) {
    Recursion r = recursion(spec, eps_loss, flip_probability);
    return {r.workable[1], (1 - r.bias[1]) / 2};
}

double effective_error_rate_analytic(const TreeSpec &spec, double eps_loss, double p_error, bool vote,
                                     const ErrorOptions &options) {
    double flip = options.convention == FlipConvention::OutcomeFlip ? p_error : p_error / 2;
    BranchStats s = branch_stats(spec, eps_loss, flip);
    uint32_t b1 = spec.branching[0];
    double success = 1 - std::pow(1 - s.workable, b1);
    if (success <= 0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (!vote) {
        return s.p_single;
    }
    double total = 0;
    double choose = 1;
    for (uint32_t k = 1; k <= b1; k++) {
        choose = choose * static_cast<double>(b1 - k + 1) / static_cast<double>(k);
        double pk = choose * std::pow(s.workable, k) * std::pow(1 - s.workable, b1 - k);
        total += pk * noise::majority_vote_error(s.p_single, k, options.tie_rule);
    }
    return total / success;
}

void error_trial(const TreeCluster &tree, double eps_loss, double p_error, bool vote, const ErrorOptions &options,
                 Rng &rng, Tally &tally) {
    TrialSample sample = sample_trial(tree, eps_loss, p_error, options.convention, rng);
    Mode mode = vote ? Mode::Majority : Mode::FirstSuccess;
    bool succeeded;
    bool wrong;
    uint32_t used;
    if (options.use_tableau) {
        TrialOutcome outcome = tableau_trial(tree, sample, mode, options.tie_rule, rng);
        succeeded = outcome.result.succeeded;
        wrong = outcome.wrong();
        used = outcome.result.branches_used;
    } else {
        IndirectResult result = parity_trial(tree, sample, mode, options.tie_rule);
        succeeded = result.succeeded;
        wrong = result.succeeded && result.inferred_value != +1;
        used = result.branches_used;
    }
    if (succeeded) {
        tally.denominator++;
        tally.hits += wrong;
        tally.aux += used;
    }
}

Estimate effective_error_rate(const TreeSpec &spec, double eps_loss, double p_error, bool vote, uint64_t trials,
                              uint64_t seed, const ErrorOptions &options) {
    TreeCluster tree = build_tree(spec);
    Tally tally = run_trials(seed, 0, trials, options.threads,
                             [&](Rng &rng, Tally &t) { error_trial(tree, eps_loss, p_error, vote, options, rng, t); });
    return estimate_from(tally);
}

ThresholdResult break_even_loss(const TreeSpec &spec, double p_error, uint64_t seed,
                                const ThresholdOptions &threshold_options, const ErrorOptions &options, double lo,
                                double hi) {
    TreeCluster tree = build_tree(spec);
    ErrorOptions inner = options;
    inner.threads = threshold_options.threads;
    auto sampler = [&](double eps, uint64_t point_seed, uint64_t begin, uint64_t end) {
        return run_trials(point_seed, begin, end, inner.threads,
                          [&](Rng &rng, Tally &t) { error_trial(tree, eps, p_error, true, inner, rng, t); });
    };
    return bisect_monte_carlo(
        sampler, [&](double) { return p_error; }, [](const Tally &t) { return estimate_from(t); }, lo, hi, seed,
        threshold_options);
}

ThresholdResult break_even_loss_analytic(const TreeSpec &spec, double p_error, const ErrorOptions &options, double lo,
                                         double hi, double tol) {
    return bisect_function([&](double eps) { return effective_error_rate_analytic(spec, eps, p_error, true, options); },
                           [&](double) { return p_error; }, lo, hi, tol);
}

double half_tree_error_estimate(uint64_t q, double p_error) {
    if (q < 2) {
        throw std::invalid_argument("half-tree estimate needs Q >= 2");
    }
    return noise::odd_parity_rate(p_error, q / 2);
}

namespace {

void enumerate(std::vector<uint32_t> &prefix, uint64_t layer, uint64_t total, const SearchOptions &options,
               std::vector<TreeSpec> &out) {
    if (prefix.size() >= options.max_depth) {
        return;
    }
    for (uint32_t b = 1;; b++) {
        uint64_t next_layer = layer * b;
        uint64_t next_total = total + next_layer;
        if (next_total > options.max_qubits) {
            break;
        }
        prefix.push_back(b);
        out.push_back(TreeSpec{prefix});
        enumerate(prefix, next_layer, next_total, options, out);
        prefix.pop_back();
    }
}

double nan_last(double x) {
    return std::isnan(x) ? std::numeric_limits<double>::infinity() : x;
}

}  // namespace

std::vector<SearchEntry> search_branching(const SearchOptions &options) {
    if (options.weights.has_value() && options.weights->size() != 3) {
        throw std::invalid_argument("search weights need three entries (eps_eff, p_eff, Q)");
    }
    std::vector<TreeSpec> specs;
    std::vector<uint32_t> prefix;
    enumerate(prefix, 1, 1, options, specs);
    if (specs.empty()) {
        throw std::invalid_argument("empty search space: need max_depth >= 1 and max_qubits >= 2");
    }
    ErrorOptions error_options;
    error_options.tie_rule = options.tie_rule;
    error_options.convention = options.convention;
    std::vector<SearchEntry> entries;
    for (const TreeSpec &spec : specs) {
        SearchEntry e;
        e.spec = spec;
        e.qubits = spec.qubit_count();
        e.eps_eff = effective_loss_rate(spec, options.eps_loss);
        e.p_eff_vote = effective_error_rate_analytic(spec, options.eps_loss, options.p_error, true, error_options);
        if (options.weights.has_value()) {
            const auto &w = *options.weights;
            e.score = w[0] * e.eps_eff + w[1] * nan_last(e.p_eff_vote) + w[2] * static_cast<double>(e.qubits);
        }
        entries.push_back(std::move(e));
    }
    bool weighted = options.weights.has_value();
    std::stable_sort(entries.begin(), entries.end(), [&](const SearchEntry &a, const SearchEntry &b) {
        if (weighted) {
            return a.score < b.score;
        }
        if (a.eps_eff != b.eps_eff) {
            return a.eps_eff < b.eps_eff;
        }
        double pa = nan_last(a.p_eff_vote);
        double pb = nan_last(b.p_eff_vote);
        if (pa != pb) {
            return pa < pb;
        }
        return a.qubits < b.qubits;
    });
    return entries;
}

}  // namespace errtel::tree
