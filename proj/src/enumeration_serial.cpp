#include <algorithm>
#include <unordered_map>

#include "chipfire/enumeration.hpp"
#include "packed_space.hpp"

namespace chipfire {

namespace {

using detail::Key;
using detail::PackedSpace;

// Sparse per-outcome counts, sorted by outcome id.
using Tally = std::vector<std::pair<std::uint32_t, BigCount>>;

void add_into(Tally& into, const Tally& from) {
    Tally merged;
    merged.reserve(into.size() + from.size());
    auto a = into.begin();
    auto b = from.begin();
    while (a != into.end() || b != from.end()) {
        if (b == from.end() || (a != into.end() && a->first < b->first)) {
            merged.push_back(std::move(*a++));
        } else if (a == into.end() || b->first < a->first) {
            merged.push_back(*b++);
        } else {
            merged.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    into = std::move(merged);
}

class MemoCounter {
public:
    MemoCounter(const StarParams& params, const EnumerationBudget& budget, MoveFilter filter)
        : space_(params), budget_(budget), filter_(filter) {}

    const Tally& count(Key key) {
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (memo_.size() >= budget_.max_states) {
            throw ResourceError("enumeration exceeded the state budget of " + std::to_string(budget_.max_states) +
                                " configurations");
        }
        detail::Decoded d;
        space_.decode(key, d);
        std::vector<Key> successors;
        space_.for_each_successor(key, d, filter_, [&](Key next) { successors.push_back(next); });

        Tally tally;
        if (successors.empty()) {
            tally.emplace_back(outcome_id(key), BigCount(1));
        } else {
            for (Key next : successors) add_into(tally, count(next));
        }
        return memo_.emplace(key, std::move(tally)).first->second;
    }

    EnumerationResult result(Key root) {
        const Tally& tally = count(root);
        EnumerationResult out{space_.params(), {}, 0};
        for (const auto& [id, n] : tally) {
            out.per_outcome.emplace(space_.outcome(stable_keys_[id]), n);
            out.total_sequences += n;
        }
        return out;
    }

private:
    std::uint32_t outcome_id(Key key) {
        auto [it, inserted] = outcome_ids_.emplace(key, static_cast<std::uint32_t>(stable_keys_.size()));
        if (inserted) stable_keys_.push_back(key);
        return it->second;
    }

    PackedSpace space_;
    EnumerationBudget budget_;
    MoveFilter filter_;
    std::unordered_map<Key, Tally> memo_;
    std::unordered_map<Key, std::uint32_t> outcome_ids_;
    std::vector<Key> stable_keys_;
};

}  // namespace

std::set<StableOutcome> EnumerationResult::outcomes() const {
    std::set<StableOutcome> out;
    for (const auto& [o, n] : per_outcome) out.insert(o);
    return out;
}

void detail::check_chip_budget(const StarParams& params, const EnumerationBudget& budget) {
    if (params.chips() > budget.max_chips) {
        throw ResourceError("k*m = " + std::to_string(params.chips()) + " exceeds the chip budget of " +
                            std::to_string(budget.max_chips));
    }
}

EnumerationResult enumerate_all_serial(const StarParams& params, const EnumerationBudget& budget, MoveFilter filter) {
    detail::check_chip_budget(params, budget);
    MemoCounter counter(params, budget, filter);
    return counter.result(PackedSpace(params).initial());
}

std::set<StableOutcome> reachable_set(const StarParams& params, const EnumerationOptions& options) {
    return enumerate_all(params, options).outcomes();
}

std::set<StableOutcome> enumerate_volmin(const StarParams& params, const EnumerationOptions& options) {
    return enumerate_all(params, options, MoveFilter::VolatilityMinimizing).outcomes();
}

std::vector<Vertex> volmin_vertices(const UnlabeledConfig& config) {
    const auto ready = ready_vertices(config);
    std::vector<std::size_t> after(ready.size());
    std::size_t best = SIZE_MAX;
    for (std::size_t t = 0; t < ready.size(); ++t) {
        after[t] = ready_vertices(fire(config, ready[t])).size();
        best = std::min(best, after[t]);
    }
    int far = -1;
    for (std::size_t t = 0; t < ready.size(); ++t) {
        if (after[t] == best) far = std::max(far, ready[t].level());
    }
    std::vector<Vertex> out;
    for (std::size_t t = 0; t < ready.size(); ++t) {
        if (after[t] == best && ready[t].level() == far) out.push_back(ready[t]);
    }
    return out;
}

std::vector<Move> volmin_allowed_moves(const LabeledConfig& config) {
    const auto keep = volmin_vertices(forget_labels(config));
    std::vector<Move> out;
    for (auto& move : legal_moves(config)) {
        if (std::find(keep.begin(), keep.end(), move.vertex) != keep.end()) out.push_back(std::move(move));
    }
    return out;
}

}  // namespace chipfire
