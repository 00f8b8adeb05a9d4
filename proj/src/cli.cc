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

#include "errtel/cli.h"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "errtel/loss_tree.h"
#include "errtel/plus_cluster.h"
#include "errtel/records_io.h"
#include "errtel/sweep_harness.h"
#include "json.hpp"

namespace errtel {

namespace {

struct Common {
    uint64_t seed = 0;
    uint64_t trials = 100000;
    unsigned threads = 1;
    std::string format = "csv";
    std::string output;
};

/// A numeric flag that accepts a comma-separated list; a list of more than
/// one value makes it the swept axis.
struct Axis {
    std::string name;
    std::vector<double> values;
};

/// What a command produced, plus the fixed parameters for the config line.
struct Output {
    std::vector<SweepRecord> records;
    nlohmann::json config;
};

void add_common(CLI::App *sub, Common &c) {
    sub->add_option("--seed", c.seed, "Master seed; every random draw derives from it")->required();
    sub->add_option("--trials", c.trials, "Monte Carlo trials per point")
        ->check(CLI::Range(uint64_t{1}, uint64_t{1} << 40));
    sub->add_option("--threads", c.threads, "Worker threads (0 = one per core); results do not depend on it");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", c.output, "Write to this file instead of standard output");
}

CLI::Option *add_axis(CLI::App *sub, const std::string &flag, Axis &axis, const std::string &help) {
    return sub->add_option(flag, axis.values, help + " (comma list to sweep)")->delimiter(',');
}

nlohmann::json params_json(const ParamMap &params, const std::string &skip) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto &[name, value] : params.values()) {
        if (name == skip) {
            continue;
        }
        std::visit([&](const auto &v) { out[name] = v; }, value);
    }
    return out;
}

/// Fixes single-valued axes in `spec` and returns the swept one, if any.
/// Every point is validated before anything runs.
std::optional<Axis> plan_axes(ExperimentSpec &spec, const std::vector<Axis> &axes) {
    std::optional<Axis> swept;
    for (const Axis &axis : axes) {
        if (axis.values.empty()) {
            throw std::invalid_argument("--" + axis.name + " needs a value");
        }
        if (axis.values.size() == 1) {
            spec.params.set(axis.name, axis.values[0]);
            continue;
        }
        if (swept) {
            throw std::invalid_argument("only one parameter can be swept per run (got " + swept->name + " and " +
                                        axis.name + ")");
        }
        swept = axis;
        std::sort(swept->values.begin(), swept->values.end());
    }
    if (swept) {
        for (double v : swept->values) {
            ExperimentSpec point = spec;
            point.params.set(swept->name, v);
            validate(point);
        }
    } else {
        validate(spec);
    }
    return swept;
}

using Job = std::function<Output()>;

Job sweep_job(const std::string &command, ExperimentSpec spec, const std::vector<Axis> &axes) {
    std::optional<Axis> swept = plan_axes(spec, axes);
    return [=]() {
        Output out;
        std::string skip = swept ? swept->name : std::string();
        out.config = {{"command", command},
                      {"protocol", protocol_name(spec.protocol)},
                      {"params", params_json(spec.params, skip)},
                      {"trials", spec.trials}};
        if (swept) {
            std::vector<ParamValue> values(swept->values.begin(), swept->values.end());
            out.records = sweep(spec, swept->name, values);
        } else {
            out.records = {run(spec)};
        }
        return out;
    };
}

SweepRecord exact_row(std::vector<std::pair<std::string, std::string>> labels, double value, uint64_t seed) {
    SweepRecord r;
    r.labels = std::move(labels);
    r.estimate = value;
    r.ci_low = value;
    r.ci_high = value;
    r.trials = 0;
    r.seed = seed;
    return r;
}

SweepRecord estimate_row(std::vector<std::pair<std::string, std::string>> labels, const Estimate &e,
                         uint64_t seed) {
    SweepRecord r;
    r.labels = std::move(labels);
    r.estimate = e.value;
    r.ci_low = e.ci.low;
    r.ci_high = e.ci.high;
    r.trials = e.tally.trials;
    r.seed = seed;
    return r;
}

noise::TieRule tie_rule_from(const std::string &text) {
    auto rule = noise::parse_tie_rule(text);
    if (!rule) {
        throw std::invalid_argument("unknown tie rule '" + text + "'");
    }
    return *rule;
}

tree::FlipConvention flip_from(const std::string &text) {
    auto flip = tree::parse_flip_convention(text);
    if (!flip) {
        throw std::invalid_argument("unknown flip convention '" + text + "'");
    }
    return *flip;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Error and loss propagation in cluster-state resources", "errtel"};
    app.require_subcommand(1);
    Common common;

    // ghz
    Axis ghz_n{"n", {}};
    Axis ghz_p{"p_error", {}};
    CLI::App *ghz = app.add_subcommand("ghz", "Error teleported onto the survivor of an n-qubit entangled state");
    add_axis(ghz, "--n", ghz_n, "Number of qubits")->required();
    add_axis(ghz, "--p-error", ghz_p, "Depolarizing rate per qubit")->required();
    add_common(ghz, common);

    // plus-cluster
    Axis pc_nl{"n_l", {}};
    Axis pc_p{"p_error", {}};
    CLI::App *pc = app.add_subcommand("plus-cluster", "Node error after fusing two +-clusters");
    add_axis(pc, "--n-l", pc_nl, "Arm length")->required();
    add_axis(pc, "--p-error", pc_p, "Depolarizing rate per qubit")->required();
    add_common(pc, common);

    // tree
    Axis tr_eps{"eps_loss", {}};
    Axis tr_p{"p_error", {0.001}};
    std::string tr_branching;
    bool tr_vote = false;
    std::string tr_tie = "optimistic";
    std::string tr_flip = "outcome";
    std::string tr_metric = "error";
    CLI::App *tr = app.add_subcommand("tree", "Indirect measurement through a loss-tolerant tree");
    tr->add_option("--branching", tr_branching, "Branching vector, e.g. 3,3")->required();
    add_axis(tr, "--eps-loss", tr_eps, "Loss probability per qubit")->required();
    add_axis(tr, "--p-error", tr_p, "Error rate per qubit");
    tr->add_flag("--vote", tr_vote, "Majority vote over all workable branches");
    tr->add_option("--tie-rule", tr_tie, "optimistic, pessimistic or random");
    tr->add_option("--flip", tr_flip, "outcome (flip each outcome with p) or channel (depolarize with p)");
    tr->add_option("--metric", tr_metric, "error or loss")->check(CLI::IsMember({"error", "loss"}));
    add_common(tr, common);

    // break-even
    std::string be_branching;
    double be_p = 0.001;
    std::string be_tie = "optimistic";
    std::string be_flip = "outcome";
    std::string be_metric = "error";
    std::optional<double> be_lo;
    double be_hi = 0.3;
    double be_tol = 0.002;
    uint64_t be_initial = 10000;
    uint64_t be_max = 1000000;
    CLI::App *be = app.add_subcommand("break-even", "Bisect the loss rate where a tree stops helping");
    be->add_option("--branching", be_branching, "Branching vector, e.g. 3,3")->required();
    be->add_option("--p-error", be_p, "Error rate per qubit");
    be->add_option("--tie-rule", be_tie, "optimistic, pessimistic or random");
    be->add_option("--flip", be_flip, "outcome or channel");
    be->add_option("--metric", be_metric, "error (voted p_eff <= p_error) or loss (eps_eff <= eps_loss)")
        ->check(CLI::IsMember({"error", "loss"}));
    be->add_option("--lo", be_lo, "Lower end of the bracket (default 0 for error, 0.05 for loss)");
    be->add_option("--hi", be_hi, "Upper end of the bracket");
    be->add_option("--tol", be_tol, "Stop when the bracket is narrower than this");
    be->add_option("--initial-trials", be_initial, "Trials at each point before escalating")
        ->check(CLI::PositiveNumber);
    be->add_option("--max-trials", be_max, "Escalation cap per point")->check(CLI::PositiveNumber);
    add_common(be, common);

    // compare
    uint32_t cmp_nl = 11;
    double cmp_gate = 0.99;
    double cmp_p = 0.001;
    CLI::App *cmp = app.add_subcommand("compare", "Single-shot versus divide-and-conquer resources");
    cmp->add_option("--n-l", cmp_nl, "Arm length");
    cmp->add_option("--p-gate", cmp_gate, "Entangling gate success probability");
    cmp->add_option("--p-error", cmp_p, "Depolarizing rate per qubit");
    add_common(cmp, common);

    // search
    uint32_t s_depth = 2;
    uint64_t s_q = 13;
    double s_eps = 0.1;
    double s_p = 0.001;
    std::string s_tie = "optimistic";
    std::string s_flip = "outcome";
    size_t s_top = 10;
    size_t s_check = 1;
    std::vector<double> s_weights;
    CLI::App *srch = app.add_subcommand("search", "Rank tree branching vectors");
    srch->add_option("--max-depth", s_depth, "Deepest tree considered");
    srch->add_option("--max-q", s_q, "Largest qubit count considered");
    srch->add_option("--eps-loss", s_eps, "Loss probability per qubit");
    srch->add_option("--p-error", s_p, "Error rate per qubit");
    srch->add_option("--tie-rule", s_tie, "optimistic, pessimistic or random");
    srch->add_option("--flip", s_flip, "outcome or channel");
    srch->add_option("--top", s_top, "Rows to keep (0 = all)");
    srch->add_option("--spot-check", s_check, "Monte Carlo check of the best this many entries");
    srch->add_option("--weights", s_weights, "w_eps,w_p,w_q: rank by weighted sum")->delimiter(',');
    add_common(srch, common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "errtel: error: " << e.what() << '\n';
        return kExitUsage;
    }

    // Turn flags into a job; anything rejected here exits 2 before work starts.
    Job job;
    io::Format format = *io::parse_format(common.format);
    try {
        auto base = [&](Protocol protocol) {
            ExperimentSpec spec;
            spec.protocol = protocol;
            spec.trials = common.trials;
            spec.seed = common.seed;
            spec.threads = common.threads;
            return spec;
        };
        if (ghz->parsed()) {
            job = sweep_job("ghz", base(Protocol::GhzTeleport), {ghz_n, ghz_p});
        } else if (pc->parsed()) {
            job = sweep_job("plus-cluster", base(Protocol::PlusClusterError), {pc_nl, pc_p});
        } else if (tr->parsed()) {
            if (tr_metric == "loss") {
                ExperimentSpec spec = base(Protocol::TreeLoss);
                spec.params.set("branching", tr_branching);
                job = sweep_job("tree", spec, {tr_eps});
            } else {
                ExperimentSpec spec = base(Protocol::TreeError);
                spec.params.set("branching", tr_branching);
                spec.params.set("vote", tr_vote);
                spec.params.set("tie_rule", tr_tie);
                spec.params.set("flip", tr_flip);
                job = sweep_job("tree", spec, {tr_eps, tr_p});
            }
        } else if (be->parsed()) {
            bool loss = be_metric == "loss";
            ExperimentSpec spec = base(loss ? Protocol::TreeLoss : Protocol::BreakEven);
            spec.params.set("branching", be_branching);
            if (!loss) {
                spec.params.set("p_error", be_p);
                spec.params.set("tie_rule", be_tie);
                spec.params.set("flip", be_flip);
            }
            double lo = be_lo.value_or(loss ? 0.05 : 0.0);
            double hi = be_hi;
            if (!(lo < hi) || lo < 0 || hi > 1) {
                throw std::invalid_argument("need 0 <= lo < hi <= 1");
            }
            if (!(be_tol > 0)) {
                throw std::invalid_argument("--tol must be > 0");
            }
            for (double x : {lo, hi}) {
                ExperimentSpec point = spec;
                point.params.set("eps_loss", x);
                validate(point);
            }
            ThresholdOptions options;
            options.tol = be_tol;
            options.initial_trials = be_initial;
            options.max_trials = be_max;
            options.threads = common.threads;
            job = [spec, lo, hi, options, &err]() {
                Output o;
                o.config = {{"command", "break-even"},
                            {"protocol", protocol_name(spec.protocol)},
                            {"params", params_json(spec.params, "")},
                            {"lo", lo},
                            {"hi", hi},
                            {"tol", options.tol},
                            {"initial_trials", options.initial_trials},
                            {"max_trials", options.max_trials}};
                ThresholdResult t = find_threshold(spec, "eps_loss", lo, hi, options);
                if (t.ambiguous) {
                    err << "errtel: warning: some bisection points stayed within the confidence interval at the "
                           "trial cap\n";
                }
                SweepRecord r;
                r.estimate = t.value;
                r.ci_low = t.lo;
                r.ci_high = t.hi;
                r.trials = t.total_trials;
                r.seed = spec.seed;
                o.records = {r};
                return o;
            };
        } else if (cmp->parsed()) {
            if (!(cmp_gate > 0 && cmp_gate <= 1) || !(cmp_p >= 0 && cmp_p <= 1)) {
                throw std::invalid_argument("--p-gate must lie in (0, 1] and --p-error in [0, 1]");
            }
            ExperimentSpec spec = base(Protocol::StrategyCompare);
            spec.params.set("n_l", static_cast<double>(cmp_nl));
            spec.params.set("p_gate", cmp_gate);
            job = [spec, cmp_nl, cmp_gate, cmp_p]() {
                Output o;
                o.config = {{"command", "compare"},
                            {"params", {{"n_l", cmp_nl}, {"p_gate", cmp_gate}, {"p_error", cmp_p}}},
                            {"trials", spec.trials}};
                std::vector<plus::StrategyRow> rows = plus::compare_strategies(cmp_nl, cmp_gate, cmp_p);
                for (size_t i = 0; i < rows.size(); i++) {
                    const plus::StrategyRow &row = rows[i];
                    std::string shape(plus::shape_name(row.shape));
                    auto labels = [&](const char *metric) {
                        return std::vector<std::pair<std::string, std::string>>{{"shape", shape}, {"metric", metric}};
                    };
                    o.records.push_back(exact_row(labels("bonds"), static_cast<double>(row.bonds), spec.seed));
                    o.records.push_back(exact_row(labels("single_shot_success"), row.single_shot_success, spec.seed));
                    ExperimentSpec mc = spec;
                    mc.params.set("shape", shape);
                    mc.seed = derive_seed(spec.seed, i);
                    SweepRecord sampled = run(mc);
                    sampled.labels = labels("single_shot_success_mc");
                    o.records.push_back(sampled);
                    o.records.push_back(
                        exact_row(labels("expected_clusters_per_node"), row.expected_clusters_per_node, spec.seed));
                    o.records.push_back(exact_row(labels("p_eff"), row.p_eff, spec.seed));
                }
                return o;
            };
        } else if (srch->parsed()) {
            tree::SearchOptions options;
            options.max_depth = s_depth;
            options.max_qubits = s_q;
            options.eps_loss = s_eps;
            options.p_error = s_p;
            options.tie_rule = tie_rule_from(s_tie);
            options.convention = flip_from(s_flip);
            if (!s_weights.empty()) {
                if (s_weights.size() != 3) {
                    throw std::invalid_argument("--weights needs three values");
                }
                options.weights = s_weights;
            }
            if (!(s_eps >= 0 && s_eps <= 1) || !(s_p >= 0 && s_p <= 1)) {
                throw std::invalid_argument("--eps-loss and --p-error must lie in [0, 1]");
            }
            // Fails fast on an empty search space.
            std::vector<tree::SearchEntry> entries = tree::search_branching(options);
            uint64_t seed = common.seed;
            uint64_t trials = common.trials;
            unsigned threads = common.threads;
            job = [=]() {
                Output o;
                nlohmann::json params = {{"max_depth", s_depth},     {"max_q", s_q},
                                         {"eps_loss", s_eps},        {"p_error", s_p},
                                         {"tie_rule", s_tie},        {"flip", s_flip}};
                if (!s_weights.empty()) {
                    params["weights"] = s_weights;
                }
                o.config = {{"command", "search"}, {"params", params}, {"trials", trials}};
                size_t keep = s_top == 0 ? entries.size() : std::min(s_top, entries.size());
                tree::ErrorOptions error_options;
                error_options.tie_rule = options.tie_rule;
                error_options.convention = options.convention;
                error_options.threads = threads;
                for (size_t i = 0; i < keep; i++) {
                    const tree::SearchEntry &e = entries[i];
                    std::string rank = std::to_string(i + 1);
                    std::string branching = e.spec.str();
                    auto labels = [&](const char *metric) {
                        return std::vector<std::pair<std::string, std::string>>{
                            {"rank", rank}, {"branching", branching}, {"metric", metric}};
                    };
                    o.records.push_back(exact_row(labels("qubits"), static_cast<double>(e.qubits), seed));
                    o.records.push_back(exact_row(labels("eps_eff"), e.eps_eff, seed));
                    o.records.push_back(exact_row(labels("p_eff_vote"), e.p_eff_vote, seed));
                    if (options.weights) {
                        o.records.push_back(exact_row(labels("score"), e.score, seed));
                    }
                    if (i < s_check) {
                        uint64_t s1 = derive_seed(seed, 2 * i);
                        uint64_t s2 = derive_seed(seed, 2 * i + 1);
                        o.records.push_back(estimate_row(
                            labels("eps_eff_mc"), tree::effective_loss_rate_mc(e.spec, s_eps, trials, s1, threads), s1));
                        o.records.push_back(estimate_row(
                            labels("p_eff_vote_mc"),
                            tree::effective_error_rate(e.spec, s_eps, s_p, true, trials, s2, error_options), s2));
                    }
                }
                return o;
            };
        }
    } catch (const std::invalid_argument &e) {
        err << "errtel: error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        Output o = job();
        std::string config = format == io::Format::Csv ? o.config.dump() : std::string();
        io::emit(o.records, format, common.output, out, config);
    } catch (const std::exception &e) {
        err << "errtel: error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace errtel
