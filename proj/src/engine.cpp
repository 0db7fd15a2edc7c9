#include "chipfire/engine.hpp"

#include <algorithm>
#include <sstream>

#include "chipfire/enumeration.hpp"
#include "chipfire/errors.hpp"
#include "chipfire/random.hpp"

namespace chipfire {

void SequenceLog::append(Move move) {
    ++fire_counts_[move.vertex];
    moves_.push_back(std::move(move));
}

long long SequenceLog::fire_count(const Vertex& v) const {
    auto it = fire_counts_.find(v);
    return it == fire_counts_.end() ? 0 : it->second;
}

std::string serialize_log(const SequenceLog& log) {
    std::string out;
    for (const auto& move : log.moves()) {
        out += to_string(move);
        out += '\n';
    }
    return out;
}

std::vector<Move> parse_moves(std::string_view text) {
    std::vector<Move> moves;
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        try {
            moves.push_back(parse_move(line));
        } catch (const PreconditionError& e) {
            throw PreconditionError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return moves;
}

std::string to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Deterministic: return "det";
        case StrategyKind::RandomUniform: return "random";
        case StrategyKind::VolatilityMinimizing: return "volmin";
    }
    return "?";
}

UnlabeledStabilization stabilize_unlabeled(const StarParams& params, long long n) {
    UnlabeledStabilization result{initial_unlabeled(params, n), {}, 0};
    while (true) {
        // One wave: every ready vertex fires once, level by level.
        auto ready = ready_vertices(result.config);
        if (ready.empty()) break;
        std::stable_sort(ready.begin(), ready.end(),
                         [](const Vertex& a, const Vertex& b) { return a.level() < b.level(); });
        for (const Vertex& v : ready) {
            if (result.config.at(v) < degree(params, v)) continue;
            result.config = fire(result.config, v);
            ++result.fire_counts[v];
            ++result.total_fires;
        }
    }
    return result;
}

long long expected_fire_count(const StarParams& params, const Vertex& v) {
    const long long j = v.level();
    const long long m = params.m;
    if (j > m - 1) return 0;
    return (m - j) * (m - j + 1) / 2;
}

long long expected_total_fires(const StarParams& params) {
    const long long m = params.m;
    const long long k = params.k;
    return m * (m + 1) / 2 + k * ((m - 1) * m * (m + 1) / 6);
}

namespace {

Move random_subset_move(const LabeledConfig& config, const Vertex& v, Rng& rng) {
    std::vector<Label> pool = config.at(v);
    const int deg = degree(config.params(), v);
    // Partial Fisher-Yates: every deg-subset is equally likely.
    for (int t = 0; t < deg; ++t) {
        const auto pick = t + static_cast<std::size_t>(rng.below(pool.size() - t));
        std::swap(pool[t], pool[pick]);
    }
    std::vector<Label> fired(pool.begin(), pool.begin() + deg);
    std::sort(fired.begin(), fired.end());
    return Move{v, std::move(fired)};
}

}  // namespace

Move choose_move(const LabeledConfig& config, StrategyKind kind, Rng& rng) {
    switch (kind) {
        case StrategyKind::Deterministic: {
            auto moves = legal_moves(config);
            if (moves.empty()) throw PreconditionError("no legal move: configuration is stable");
            return moves.front();
        }
        case StrategyKind::RandomUniform: {
            auto ready = ready_vertices(config);
            if (ready.empty()) throw PreconditionError("no legal move: configuration is stable");
            return random_subset_move(config, ready[rng.below(ready.size())], rng);
        }
        case StrategyKind::VolatilityMinimizing: {
            auto moves = volmin_allowed_moves(config);
            if (moves.empty()) throw PreconditionError("no legal move: configuration is stable");
            return moves[rng.below(moves.size())];
        }
    }
    throw PreconditionError("unknown strategy");
}

LabeledStabilization stabilize_labeled(const LabeledConfig& config, const Strategy& strategy) {
    Rng rng(strategy.seed);
    return stabilize_labeled(config, strategy.kind, rng);
}

LabeledStabilization stabilize_labeled(const LabeledConfig& config, StrategyKind kind, Rng& rng) {
    const long long ceiling = 10 * expected_total_fires(config.params());
    LabeledConfig current = config;
    SequenceLog log(config.params());
    while (!is_stable(current)) {
        if (static_cast<long long>(log.size()) >= ceiling) {
            throw ResourceError("stabilization exceeded " + std::to_string(ceiling) +
                                " moves (10x the closed-form total); last configuration " + to_string(current));
        }
        Move move = choose_move(current, kind, rng);
        current = apply_move(current, move);
        log.append(std::move(move));
    }
    return {canonical_outcome(current), std::move(log)};
}

ReplayError::ReplayError(std::size_t step, Move move, const std::string& config)
    : std::runtime_error("illegal move at step " + std::to_string(step) + ": " + to_string(move) + " on " + config),
      step_(step),
      move_(std::move(move)) {}

ReplayResult replay(const StarParams& params, const std::vector<Move>& moves) {
    LabeledConfig current = initial_labeled(params);
    SequenceLog log(params);
    for (std::size_t t = 0; t < moves.size(); ++t) {
        try {
            current = apply_move(current, moves[t]);
        } catch (const PreconditionError&) {
            throw ReplayError(t + 1, moves[t], to_string(current));
        }
        log.append(moves[t]);
    }
    std::optional<StableOutcome> outcome;
    if (is_stable(current)) outcome = canonical_outcome(current);
    return {std::move(current), std::move(outcome), std::move(log)};
}

}  // namespace chipfire
