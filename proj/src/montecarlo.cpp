#include "chipfire/montecarlo.hpp"

#include <algorithm>
#include <exception>

#include <omp.h>

#include "chipfire/engine.hpp"
#include "chipfire/errors.hpp"
#include "chipfire/random.hpp"
#include "chipfire/tableaux.hpp"

namespace chipfire {

namespace {

StableOutcome run_trial(const LabeledConfig& start, std::uint64_t seed, std::uint64_t trial) {
    Rng rng = Rng::for_trial(seed, trial);
    return stabilize_labeled(start, StrategyKind::RandomUniform, rng).outcome;
}

FrequencyReport assemble(const StarParams& params, std::uint64_t trials, std::uint64_t seed,
                         const std::map<StableOutcome, std::uint64_t>& hits) {
    FrequencyReport report{params, trials, seed, {}};
    for (const auto& [outcome, n] : hits) {
        report.per_outcome.emplace(outcome,
                                   OutcomeFrequency{n, from_outcome(outcome).is_standard(), outcome.is_totally_sorted()});
    }
    return report;
}

void check_trials(std::uint64_t trials) {
    if (trials < 1) throw PreconditionError("montecarlo needs at least one trial");
}

}  // namespace

bool FrequencyReport::mode_is_totally_sorted() const {
    std::uint64_t best = 0;
    std::uint64_t sorted = 0;
    for (const auto& [outcome, f] : per_outcome) {
        best = std::max(best, f.hits);
        if (f.is_totally_sorted) sorted = f.hits;
    }
    return sorted > 0 && sorted == best;
}

bool FrequencyReport::syt_outnumber_non_syt() const {
    std::uint64_t min_syt = UINT64_MAX;
    std::uint64_t max_other = 0;
    for (const auto& [outcome, f] : per_outcome) {
        if (f.is_syt) {
            min_syt = std::min(min_syt, f.hits);
        } else {
            max_other = std::max(max_other, f.hits);
        }
    }
    return max_other == 0 || (min_syt != UINT64_MAX && min_syt > max_other);
}

FrequencyReport run_montecarlo_serial(const StarParams& params, std::uint64_t trials, std::uint64_t seed) {
    check_trials(trials);
    const LabeledConfig start = initial_labeled(params);
    std::map<StableOutcome, std::uint64_t> hits;
    for (std::uint64_t t = 0; t < trials; ++t) ++hits[run_trial(start, seed, t)];
    return assemble(params, trials, seed, hits);
}

FrequencyReport run_montecarlo(const StarParams& params, std::uint64_t trials, std::uint64_t seed, int threads) {
    check_trials(trials);
    const int n_threads = threads > 0 ? threads : omp_get_max_threads();
    const LabeledConfig start = initial_labeled(params);
    std::vector<std::map<StableOutcome, std::uint64_t>> local(n_threads);
    std::exception_ptr failure;

#pragma omp parallel num_threads(n_threads)
    {
        auto& mine = local[omp_get_thread_num()];
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
            try {
                ++mine[run_trial(start, seed, static_cast<std::uint64_t>(t))];
            } catch (...) {
#pragma omp critical(chipfire_montecarlo_failure)
                if (!failure) failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::map<StableOutcome, std::uint64_t> hits;
    for (const auto& part : local) {
        for (const auto& [outcome, n] : part) hits[outcome] += n;
    }
    return assemble(params, trials, seed, hits);
}

}  // namespace chipfire
