// chipfire: labeled chip-firing on star graphs from the command line.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "chipfire/engine.hpp"
#include "chipfire/enumeration.hpp"
#include "chipfire/errors.hpp"
#include "chipfire/montecarlo.hpp"
#include "chipfire/report.hpp"
#include "chipfire/tableaux.hpp"
#include "chipfire/verifiers.hpp"

using namespace chipfire;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Shape {
    int k = 1;
    int m = 1;

    StarParams params() const { return StarParams(k, m); }
};

void add_shape(CLI::App* cmd, Shape& shape) {
    cmd->add_option("--k", shape.k, "number of branches")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--m", shape.m, "chips per branch")->required()->check(CLI::PositiveNumber);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_atomically(out_path, text);
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json moves_json(const SequenceLog& log) {
    json moves = json::array();
    for (const auto& move : log.moves()) moves.push_back(to_string(move));
    return moves;
}

// Runs every verifier over one log and its outcome.
VerifierReport verify_all(const SequenceLog& log, const StableOutcome& outcome, MixingMode mixing) {
    VerifierReport report;
    auto take = [&](const VerifierReport& part) {
        report.violations.insert(report.violations.end(), part.violations.begin(), part.violations.end());
    };
    try {
        take(verify_poset(log));
        take(verify_mixing(log, mixing));
    } catch (const InconsistentLogError& e) {
        report.violations.push_back({"fire-counts", e.what()});
    }
    if (!verify_branch_sorted(outcome)) report.violations.push_back({"branch-sorted", to_string(outcome)});
    if (!verify_rim_sorted(outcome)) report.violations.push_back({"rim-sorted", to_string(outcome)});
    return report;
}

StrategyKind parse_strategy(const std::string& name) {
    if (name == "det") return StrategyKind::Deterministic;
    if (name == "random") return StrategyKind::RandomUniform;
    return StrategyKind::VolatilityMinimizing;
}

struct StabilizeArgs {
    Shape shape;
    std::string strategy = "det";
    std::uint64_t seed = 0;
    bool as_json = false;
    bool verify = false;
    bool non_strict_mixing = false;
    bool show_log = false;
};

int run_stabilize(const StabilizeArgs& a) {
    const auto params = a.shape.params();
    const auto kind = parse_strategy(a.strategy);
    const auto result = stabilize_labeled(initial_labeled(params), Strategy{kind, a.seed});
    std::optional<VerifierReport> verdict;
    if (a.verify) {
        verdict = verify_all(result.log, result.outcome, a.non_strict_mixing ? MixingMode::NonStrict : MixingMode::Strict);
    }

    if (a.as_json) {
        json doc = {{"k", params.k},
                    {"m", params.m},
                    {"strategy", to_string(kind)},
                    {"seed", a.seed},
                    {"outcome", to_json(result.outcome)},
                    {"totally_sorted", result.outcome.is_totally_sorted()},
                    {"fires", result.log.size()},
                    {"moves", moves_json(result.log)}};
        if (verdict) doc["verification"] = to_json(*verdict);
        std::cout << dump(doc);
    } else {
        if (a.show_log) std::cout << serialize_log(result.log);
        std::cout << "outcome " << to_string(result.outcome) << (result.outcome.is_totally_sorted() ? " (totally sorted)" : "")
                  << "\nfires " << result.log.size() << '\n';
        if (verdict) {
            for (const auto& v : verdict->violations) std::cout << "violation [" << v.rule << "] " << v.detail << '\n';
            std::cout << "verification " << (verdict->passed() ? "passed" : "FAILED") << '\n';
        }
    }
    return verdict && !verdict->passed() ? kExitFailed : kExitOk;
}

struct ReplayArgs {
    Shape shape;
    std::string script;
    bool as_json = false;
};

int run_replay(const ReplayArgs& a) {
    std::ifstream in(a.script);
    if (!in) throw PreconditionError("cannot read " + a.script);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto result = replay(a.shape.params(), parse_moves(buffer.str()));
    if (a.as_json) {
        json doc = {{"k", a.shape.k}, {"m", a.shape.m}, {"fires", result.log.size()}, {"stable", result.outcome.has_value()}};
        if (result.outcome) {
            doc["outcome"] = to_json(*result.outcome);
            doc["standard"] = from_outcome(*result.outcome).is_standard();
        }
        std::cout << dump(doc);
        return kExitOk;
    }
    std::cout << "fires " << result.log.size() << '\n';
    if (!result.outcome) {
        std::cout << "not stable: " << to_string(result.final_config) << '\n';
        return kExitOk;
    }
    const auto t = from_outcome(*result.outcome);
    std::cout << "outcome " << to_string(*result.outcome) << '\n';
    if (t.is_standard()) {
        std::cout << "standard tableau\n";
    } else {
        std::cout << "not a standard tableau; first unsorted column " << t.first_unsorted_column() << '\n';
    }
    return kExitOk;
}

struct EnumerateArgs {
    Shape shape;
    bool as_json = false;
    bool serial = false;
    std::string out;
    std::size_t max_states = EnumerationBudget{}.max_states;
    int max_chips = EnumerationBudget{}.max_chips;
    int threads = 0;
};

EnumerationOptions options_of(const EnumerateArgs& a) { return {{a.max_chips, a.max_states}, a.threads}; }

int run_enumerate(const EnumerateArgs& a) {
    const auto params = a.shape.params();
    const auto result =
        a.serial ? enumerate_all_serial(params, options_of(a).budget) : enumerate_all(params, options_of(a));
    emit(a.as_json ? dump(to_json(result)) : text_table(result), a.out);
    return kExitOk;
}

std::set<StableOutcome> syt_image(int k, int m) {
    std::set<StableOutcome> image;
    for (const auto& t : generate_syts(k, m)) image.insert(to_outcome(t));
    return image;
}

int run_volmin(const EnumerateArgs& a) {
    const auto params = a.shape.params();
    const auto outcomes = enumerate_volmin(params, options_of(a));
    const auto image = syt_image(params.k, params.m);
    const bool equal = outcomes == image;

    if (a.as_json) {
        json list = json::array();
        for (const auto& o : outcomes) list.push_back(to_json(o));
        emit(dump({{"k", params.k},
                   {"m", params.m},
                   {"outcomes", std::move(list)},
                   {"syt_count", count_rect_syt(params.k, params.m).str()},
                   {"equals_syt_image", equal}}),
             a.out);
        return kExitOk;
    }
    std::ostringstream text;
    text << "(k,m) = (" << params.k << "," << params.m << ")\n";
    for (const auto& o : outcomes) text << to_string(o) << (image.contains(o) ? "" : "  (not standard)") << '\n';
    text << outcomes.size() << " outcomes, " << image.size() << " standard tableaux; "
         << (equal ? "sets are equal" : "sets differ") << '\n';
    for (const auto& o : image) {
        if (!outcomes.contains(o)) text << "standard tableau not reached: " << to_string(o) << '\n';
    }
    emit(text.str(), a.out);
    return kExitOk;
}

struct SytArgs {
    Shape shape;
    bool list = false;
    bool witness = false;
    bool as_json = false;
};

int run_syt(const SytArgs& a) {
    const int k = a.shape.k;
    const int m = a.shape.m;
    const BigCount count = count_rect_syt(k, m);
    std::vector<Tableau> all;
    if (a.list || a.witness) all = generate_syts(k, m);

    int failures = 0;
    json rows = json::array();
    std::ostringstream text;
    text << "standard tableaux of " << k << " x " << m << ": " << count.str() << '\n';
    for (const auto& t : all) {
        json entry = {{"tableau", to_json(t)}};
        std::string line = to_string(t);
        if (a.witness) {
            bool ok = false;
            std::size_t fires = 0;
            try {
                const auto moves = witness_sequence(t);
                const auto result = replay(StarParams(k, m), moves);
                fires = moves.size();
                ok = result.outcome && *result.outcome == to_outcome(t);
            } catch (const std::exception& e) {
                line += "  error: " + std::string(e.what());
            }
            if (!ok) ++failures;
            entry["witness_fires"] = fires;
            entry["witness_ok"] = ok;
            line += ok ? "  witness ok (" + std::to_string(fires) + " fires)" : "  witness FAILED";
        }
        rows.push_back(std::move(entry));
        text << line << '\n';
    }

    if (a.as_json) {
        json doc = {{"k", k}, {"m", m}, {"count", count.str()}};
        if (!all.empty()) doc["tableaux"] = std::move(rows);
        if (a.witness) doc["witness_failures"] = failures;
        std::cout << dump(doc);
    } else {
        std::cout << text.str();
    }
    return failures == 0 ? kExitOk : kExitFailed;
}

struct MontecarloArgs {
    Shape shape;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    int threads = 0;
    bool as_json = false;
    bool with_sequences = false;
    std::string out;
};

int run_montecarlo_cmd(const MontecarloArgs& a) {
    const auto params = a.shape.params();
    const auto report = run_montecarlo(params, a.trials, a.seed, a.threads);
    if (a.as_json) {
        emit(dump(to_json(report)), a.out);
        return kExitOk;
    }
    std::string text = text_table(report);
    if (a.with_sequences) text += "\n" + comparison_table(report, enumerate_all(params));
    emit(text, a.out);
    return kExitOk;
}

struct VerifyArgs {
    Shape shape;
    std::uint64_t samples = 100;
    std::uint64_t seed = 0;
    bool non_strict_mixing = false;
    bool as_json = false;
};

int run_verify(const VerifyArgs& a) {
    const auto params = a.shape.params();
    const auto start = initial_labeled(params);
    const auto mode = a.non_strict_mixing ? MixingMode::NonStrict : MixingMode::Strict;
    std::uint64_t failed_logs = 0;
    std::map<std::string, std::uint64_t> by_rule;
    std::optional<std::map<Vertex, long long>> counts;
    std::uint64_t count_mismatches = 0;
    std::vector<std::string> first_details;

    for (std::uint64_t t = 0; t < a.samples; ++t) {
        Rng rng = Rng::for_trial(a.seed, t);
        const auto run = stabilize_labeled(start, StrategyKind::RandomUniform, rng);
        const auto report = verify_all(run.log, run.outcome, mode);
        if (!counts) counts = run.log.fire_counts();
        if (run.log.fire_counts() != *counts) ++count_mismatches;
        if (report.passed()) continue;
        ++failed_logs;
        for (const auto& v : report.violations) {
            ++by_rule[v.rule];
            if (first_details.size() < 5) first_details.push_back("sample " + std::to_string(t) + " [" + v.rule + "] " + v.detail);
        }
    }

    const bool ok = failed_logs == 0 && count_mismatches == 0;
    if (a.as_json) {
        json rules = json::object();
        for (const auto& [rule, n] : by_rule) rules[rule] = n;
        std::cout << dump({{"k", params.k},
                           {"m", params.m},
                           {"samples", a.samples},
                           {"seed", a.seed},
                           {"mixing", a.non_strict_mixing ? "non-strict" : "strict"},
                           {"failed_logs", failed_logs},
                           {"fire_count_mismatches", count_mismatches},
                           {"violations_by_rule", std::move(rules)},
                           {"passed", ok}});
    } else {
        std::cout << a.samples << " random logs on (k,m) = (" << params.k << "," << params.m << "), seed " << a.seed << '\n';
        std::cout << "logs with violations: " << failed_logs << '\n';
        for (const auto& [rule, n] : by_rule) std::cout << "  rule " << rule << ": " << n << '\n';
        for (const auto& d : first_details) std::cout << "  " << d << '\n';
        std::cout << "logs with differing fire counts: " << count_mismatches << '\n';
        std::cout << (ok ? "all verifiers passed" : "verification FAILED") << '\n';
    }
    return ok ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Labeled chip-firing on star graphs"};
    app.require_subcommand(1);

    StabilizeArgs stab;
    auto* stabilize = app.add_subcommand("stabilize", "stabilize the starting pile with one strategy");
    add_shape(stabilize, stab.shape);
    stabilize->add_option("--strategy", stab.strategy, "det, random or volmin")
        ->check(CLI::IsMember({"det", "random", "volmin"}));
    stabilize->add_option("--seed", stab.seed, "seed for random and volmin");
    stabilize->add_flag("--json", stab.as_json);
    stabilize->add_flag("--verify", stab.verify, "run every verifier on the produced log");
    stabilize->add_flag("--non-strict-mixing", stab.non_strict_mixing, "allow repeated center deliveries to a branch");
    stabilize->add_flag("--log", stab.show_log, "print the move log");

    ReplayArgs rep;
    auto* replay_cmd = app.add_subcommand("replay", "replay a move script from the starting pile");
    add_shape(replay_cmd, rep.shape);
    replay_cmd->add_option("script", rep.script, "one move per line, e.g. C:{1,2,3} or B(1,1):{1,7}")
        ->required()
        ->check(CLI::ExistingFile);
    replay_cmd->add_flag("--json", rep.as_json);

    auto add_enumeration_flags = [](CLI::App* cmd, EnumerateArgs& a) {
        add_shape(cmd, a.shape);
        cmd->add_flag("--json", a.as_json);
        cmd->add_option("--out", a.out, "write to FILE instead of stdout");
        cmd->add_option("--max-states", a.max_states, "distinct configurations to visit before giving up");
        cmd->add_option("--max-chips", a.max_chips, "largest k*m accepted")->check(CLI::PositiveNumber);
        cmd->add_option("--threads", a.threads, "OpenMP threads, 0 for the default")->check(CLI::NonNegativeNumber);
    };
    EnumerateArgs en;
    auto* enumerate = app.add_subcommand("enumerate", "count stabilization sequences per outcome");
    add_enumeration_flags(enumerate, en);
    enumerate->add_flag("--serial", en.serial, "use the single-threaded reference");

    EnumerateArgs vm;
    vm.max_chips = 9;
    auto* volmin = app.add_subcommand("volmin", "outcomes of volatility-minimizing play against standard tableaux");
    add_enumeration_flags(volmin, vm);

    SytArgs sy;
    auto* syt = app.add_subcommand("syt", "count or list standard tableaux of the k x m rectangle");
    add_shape(syt, sy.shape);
    syt->add_flag("--list", sy.list);
    syt->add_flag("--witness", sy.witness, "replay each tableau's witness sequence");
    syt->add_flag("--json", sy.as_json);

    MontecarloArgs mc;
    auto* montecarlo = app.add_subcommand("montecarlo", "outcome frequencies under uniformly random play");
    add_shape(montecarlo, mc.shape);
    montecarlo->add_option("--trials", mc.trials)->required()->check(CLI::PositiveNumber);
    montecarlo->add_option("--seed", mc.seed)->required();
    montecarlo->add_option("--threads", mc.threads)->check(CLI::NonNegativeNumber);
    montecarlo->add_flag("--json", mc.as_json);
    montecarlo->add_option("--out", mc.out, "write to FILE instead of stdout");
    montecarlo->add_flag("--with-sequences", mc.with_sequences, "also compare with exact sequence counts");

    VerifyArgs ve;
    auto* verify = app.add_subcommand("verify", "run random logs through every verifier");
    add_shape(verify, ve.shape);
    verify->add_option("--samples", ve.samples)->required()->check(CLI::PositiveNumber);
    verify->add_option("--seed", ve.seed)->required();
    verify->add_flag("--non-strict-mixing", ve.non_strict_mixing, "allow repeated center deliveries to a branch");
    verify->add_flag("--json", ve.as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*stabilize) return run_stabilize(stab);
        if (*replay_cmd) return run_replay(rep);
        if (*enumerate) return run_enumerate(en);
        if (*volmin) return run_volmin(vm);
        if (*syt) return run_syt(sy);
        if (*montecarlo) return run_montecarlo_cmd(mc);
        if (*verify) return run_verify(ve);
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ReplayError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitUsage;
}
