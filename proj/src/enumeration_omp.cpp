#include <algorithm>
#include <exception>
#include <unordered_map>

#include <omp.h>

#include "chipfire/enumeration.hpp"
#include "packed_space.hpp"

namespace chipfire {

namespace {

using detail::Key;
using detail::PackedSpace;

constexpr int kShards = 64;

int shard_of(Key key) { return static_cast<int>((key * 0x9E3779B97F4A7C15ull) >> 58); }

using Layer = std::vector<std::pair<Key, BigCount>>;
using ShardMap = std::unordered_map<Key, BigCount>;

}  // namespace

EnumerationResult enumerate_all(const StarParams& params, const EnumerationOptions& options, MoveFilter filter) {
    detail::check_chip_budget(params, options.budget);
    const PackedSpace space(params);
    const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();

    Layer layer;
    layer.emplace_back(space.initial(), BigCount(1));
    std::map<Key, BigCount> stable;
    std::size_t visited = 0;

    while (!layer.empty()) {
        visited += layer.size();
        if (visited > options.budget.max_states) {
            throw ResourceError("enumeration exceeded the state budget of " +
                                std::to_string(options.budget.max_states) + " configurations");
        }

        // local[t][s]: contributions from thread t to successors in shard s.
        std::vector<std::vector<ShardMap>> local(threads, std::vector<ShardMap>(kShards));
        std::vector<Layer> stable_local(threads);
        std::exception_ptr failure;

#pragma omp parallel num_threads(threads)
        {
            const int t = omp_get_thread_num();
            detail::Decoded d;
#pragma omp for schedule(dynamic, 64)
            for (std::size_t i = 0; i < layer.size(); ++i) {
                try {
                    const auto& [key, paths] = layer[i];
                    space.decode(key, d);
                    const int produced = space.for_each_successor(
                        key, d, filter, [&](Key next) { local[t][shard_of(next)][next] += paths; });
                    if (produced == 0) stable_local[t].emplace_back(key, paths);
                } catch (...) {
#pragma omp critical(chipfire_enumeration_failure)
                    if (!failure) failure = std::current_exception();
                }
            }
        }
        if (failure) std::rethrow_exception(failure);

        for (auto& part : stable_local) {
            for (auto& [key, paths] : part) stable[key] += paths;
        }

        std::vector<Layer> shard_out(kShards);
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
        for (int s = 0; s < kShards; ++s) {
            ShardMap merged = std::move(local[0][s]);
            for (int t = 1; t < threads; ++t) {
                for (auto& [key, paths] : local[t][s]) merged[key] += paths;
                ShardMap().swap(local[t][s]);
            }
            auto& out = shard_out[s];
            out.reserve(merged.size());
            for (auto& [key, paths] : merged) out.emplace_back(key, std::move(paths));
            std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        }

        Layer next;
        std::size_t total = 0;
        for (const auto& part : shard_out) total += part.size();
        next.reserve(total);
        for (auto& part : shard_out) std::move(part.begin(), part.end(), std::back_inserter(next));
        layer = std::move(next);
    }

    EnumerationResult result{params, {}, 0};
    for (const auto& [key, paths] : stable) {
        result.per_outcome[space.outcome(key)] += paths;
        result.total_sequences += paths;
    }
    return result;
}

}  // namespace chipfire
