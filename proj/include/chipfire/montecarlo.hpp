#pragma once

#include <cstdint>
#include <map>

#include "chipfire/star.hpp"

namespace chipfire {

struct OutcomeFrequency {
    std::uint64_t hits = 0;
    bool is_syt = false;
    bool is_totally_sorted = false;

    friend bool operator==(const OutcomeFrequency&, const OutcomeFrequency&) = default;
};

/// Tally of random-play outcomes. Outcomes never reached are absent.
struct FrequencyReport {
    StarParams params;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::map<StableOutcome, OutcomeFrequency> per_outcome;

    /// The totally sorted outcome was hit at least as often as any other.
    bool mode_is_totally_sorted() const;
    /// Every observed standard outcome was hit more often than every observed
    /// non-standard one.
    bool syt_outnumber_non_syt() const;

    friend bool operator==(const FrequencyReport&, const FrequencyReport&) = default;
};

/// `trials` independent uniformly random stabilizations; trial t draws from
/// Rng::for_trial(seed, t), so the report does not depend on thread count.
FrequencyReport run_montecarlo(const StarParams& params, std::uint64_t trials, std::uint64_t seed, int threads = 0);

/// Single-threaded reference for run_montecarlo.
FrequencyReport run_montecarlo_serial(const StarParams& params, std::uint64_t trials, std::uint64_t seed);

}  // namespace chipfire
