#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chipfire/random.hpp"
#include "chipfire/star.hpp"

namespace chipfire {

/// Ordered record of a firing sequence.
class SequenceLog {
public:
    explicit SequenceLog(StarParams params) : params_(params) {}

    void append(Move move);

    const StarParams& params() const { return params_; }
    const std::vector<Move>& moves() const { return moves_; }
    const std::map<Vertex, long long>& fire_counts() const { return fire_counts_; }
    long long fire_count(const Vertex& v) const;
    std::size_t size() const { return moves_.size(); }

    friend bool operator==(const SequenceLog&, const SequenceLog&) = default;

private:
    StarParams params_;
    std::vector<Move> moves_;
    std::map<Vertex, long long> fire_counts_;
};

/// One move per line; '#' starts a comment.
std::string serialize_log(const SequenceLog& log);
std::vector<Move> parse_moves(std::string_view text);

enum class StrategyKind { Deterministic, RandomUniform, VolatilityMinimizing };

struct Strategy {
    StrategyKind kind = StrategyKind::Deterministic;
    std::uint64_t seed = 0;

    static Strategy deterministic() { return {StrategyKind::Deterministic, 0}; }
    static Strategy random_uniform(std::uint64_t seed) { return {StrategyKind::RandomUniform, seed}; }
    static Strategy volatility_minimizing(std::uint64_t seed) { return {StrategyKind::VolatilityMinimizing, seed}; }
};

std::string to_string(StrategyKind kind);

struct UnlabeledStabilization {
    UnlabeledConfig config;
    std::map<Vertex, long long> fire_counts;
    long long total_fires = 0;
};

/// Stabilizes n chips on the center of instar(k) using center-outward waves:
/// each pass fires every ready vertex once, ordered by level.
UnlabeledStabilization stabilize_unlabeled(const StarParams& params, long long n);

/// (m-j)(m-j+1)/2 for levels j in [0, m-1], zero beyond.
long long expected_fire_count(const StarParams& params, const Vertex& v);
long long expected_total_fires(const StarParams& params);

struct LabeledStabilization {
    StableOutcome outcome;
    SequenceLog log;
};

/// Drives `config` to stability. Throws ResourceError if the move count
/// passes 10x the closed-form total (a would-be infinite loop).
LabeledStabilization stabilize_labeled(const LabeledConfig& config, const Strategy& strategy);
LabeledStabilization stabilize_labeled(const LabeledConfig& config, StrategyKind kind, Rng& rng);

/// A legal move of `config` chosen by the strategy's rule; used by
/// stabilize_labeled. Requires config not stable.
Move choose_move(const LabeledConfig& config, StrategyKind kind, Rng& rng);

class ReplayError : public std::runtime_error {
public:
    ReplayError(std::size_t step, Move move, const std::string& config);

    std::size_t step() const { return step_; }  // 1-based
    const Move& move() const { return move_; }

private:
    std::size_t step_;
    Move move_;
};

struct ReplayResult {
    LabeledConfig final_config;
    std::optional<StableOutcome> outcome;  // set when final_config is stable
    SequenceLog log;
};

/// Applies `moves` from the starting pile of `params`.
ReplayResult replay(const StarParams& params, const std::vector<Move>& moves);

}  // namespace chipfire
