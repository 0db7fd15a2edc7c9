#include "chipfire/verifiers.hpp"

#include "chipfire/errors.hpp"

namespace chipfire {

namespace {

Vertex level_vertex(int branch, int level) {
    return level == 0 ? Vertex::center() : Vertex::branch(branch, level);
}

}  // namespace

std::string to_string(const FireRef& ref) {
    if (ref.vertex.is_center()) return "v_{i,0}^" + std::to_string(ref.f);
    return "v_{" + std::to_string(ref.vertex.branch_index()) + "," + std::to_string(ref.vertex.level()) + "}^" +
           std::to_string(ref.f);
}

bool is_endgame(const StarParams& params, const FireRef& ref) {
    return ref.f >= 0 && ref.f <= params.m - ref.vertex.level() - 1;
}

std::map<FireRef, std::size_t> endgame_positions(const SequenceLog& log) {
    const StarParams& params = log.params();
    for (const auto& [v, count] : log.fire_counts()) {
        if (count != expected_fire_count(params, v)) {
            throw InconsistentLogError(to_string(v) + " fired " + std::to_string(count) + " times, expected " +
                                       std::to_string(expected_fire_count(params, v)));
        }
    }
    for (int i = 1; i <= params.k; ++i) {
        for (int j = 0; j < params.m; ++j) {
            const Vertex v = level_vertex(i, j);
            if (log.fire_count(v) != expected_fire_count(params, v)) {
                throw InconsistentLogError(to_string(v) + " fired " + std::to_string(log.fire_count(v)) +
                                           " times, expected " + std::to_string(expected_fire_count(params, v)));
            }
        }
    }

    std::map<FireRef, std::size_t> positions;
    std::map<Vertex, long long> remaining = log.fire_counts();
    const auto& moves = log.moves();
    for (std::size_t t = 0; t < moves.size(); ++t) {
        const Vertex& v = moves[t].vertex;
        const FireRef ref{v, static_cast<int>(--remaining[v])};
        if (is_endgame(params, ref)) positions.emplace(ref, t);
    }
    return positions;
}

VerifierReport verify_poset(const SequenceLog& log) {
    const StarParams& params = log.params();
    const auto positions = endgame_positions(log);
    VerifierReport report;

    // `before` must occur earlier than `after` whenever both are endgame fires.
    auto require_before = [&](const std::string& rule, const FireRef& before, const FireRef& after) {
        if (!is_endgame(params, before)) return;
        const auto b = positions.at(before);
        const auto a = positions.at(after);
        if (b >= a) {
            report.violations.push_back({rule, to_string(before) + " at position " + std::to_string(b) +
                                                   " must precede " + to_string(after) + " at position " +
                                                   std::to_string(a)});
        }
    };

    for (const auto& [ref, pos] : positions) {
        const int j = ref.vertex.level();
        if (j == 0) {
            if (ref.f < params.m - 1) {
                for (int i = 1; i <= params.k; ++i) require_before("1b", {Vertex::branch(i, 1), ref.f}, ref);
            }
        } else {
            const int i = ref.vertex.branch_index();
            require_before("1a", {level_vertex(i, j - 1), ref.f + 1}, ref);
            require_before("1a", {Vertex::branch(i, j + 1), ref.f}, ref);
        }
    }

    // Condition (2): replay the unlabeled counts and inspect each endgame fire.
    UnlabeledConfig counts = initial_unlabeled(params, params.chips());
    std::map<Vertex, long long> remaining = log.fire_counts();
    for (std::size_t t = 0; t < log.moves().size(); ++t) {
        const Vertex& v = log.moves()[t].vertex;
        const FireRef ref{v, static_cast<int>(--remaining[v])};
        const long long present = counts.at(v);
        const int deg = degree(params, v);
        if (is_endgame(params, ref) && present != deg) {
            report.violations.push_back({"2", to_string(ref) + " at position " + std::to_string(t) + " fired with " +
                                                  std::to_string(present) + " chips present, degree is " +
                                                  std::to_string(deg)});
        }
        if (present < deg) {
            // An illegal step; keep counting as if the chips had been there.
            counts.add(v, deg - present);
        }
        counts = fire(counts, v);
    }
    return report;
}

std::vector<std::vector<Label>> endgame_center_deliveries(const SequenceLog& log) {
    const StarParams& params = log.params();
    std::vector<std::vector<Label>> deliveries(params.k);
    long long remaining = log.fire_count(Vertex::center());
    for (const auto& move : log.moves()) {
        if (!move.vertex.is_center()) continue;
        const FireRef ref{move.vertex, static_cast<int>(--remaining)};
        if (!is_endgame(params, ref)) continue;
        for (int i = 0; i < params.k; ++i) deliveries[i].push_back(move.fired.at(i));
    }
    return deliveries;
}

VerifierReport verify_mixing(const SequenceLog& log, MixingMode mode) {
    VerifierReport report;
    const auto deliveries = endgame_center_deliveries(log);
    for (std::size_t i = 0; i < deliveries.size(); ++i) {
        const auto& sent = deliveries[i];
        for (std::size_t t = 1; t < sent.size(); ++t) {
            const bool ok = mode == MixingMode::Strict ? sent[t] < sent[t - 1] : sent[t] <= sent[t - 1];
            if (!ok) {
                report.violations.push_back(
                    {mode == MixingMode::Strict ? "mixing-strict" : "mixing",
                     "branch " + std::to_string(i + 1) + " received chip " + std::to_string(sent[t]) +
                         " from endgame center fire #" + std::to_string(t + 1) + " after chip " +
                         std::to_string(sent[t - 1])});
            }
        }
    }
    return report;
}

bool verify_branch_sorted(const StableOutcome& outcome) {
    for (int i = 1; i <= outcome.k(); ++i) {
        for (int j = 1; j < outcome.m(); ++j) {
            if (outcome.at(i, j) >= outcome.at(i, j + 1)) return false;
        }
    }
    return true;
}

bool verify_rim_sorted(const StableOutcome& outcome) {
    for (int i = 1; i < outcome.k(); ++i) {
        if (outcome.at(i, 1) >= outcome.at(i + 1, 1)) return false;
        if (outcome.at(i, outcome.m()) >= outcome.at(i + 1, outcome.m())) return false;
    }
    return true;
}

}  // namespace chipfire
