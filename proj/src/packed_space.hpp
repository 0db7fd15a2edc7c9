#pragma once

// Compact configuration encoding shared by the enumeration backends.
//
// Positions: 0 is the center, 1 + (i-1)*m + (j-1) is Branch(i, j) for
// j in [1, m]. Stabilizations of the starting pile never fire a level-m
// vertex, so no chip passes level m. A key stores, for each label 1..N, the
// position of that chip in a fixed-width bit field.

#include <array>
#include <bit>
#include <cstdint>

#include "chipfire/enumeration.hpp"
#include "chipfire/errors.hpp"
#include "chipfire/star.hpp"

namespace chipfire::detail {

using Key = std::uint64_t;

/// Throws ResourceError when k*m is over the budget's chip ceiling.
void check_chip_budget(const StarParams& params, const EnumerationBudget& budget);

inline constexpr int kMaxPositions = 64;
inline constexpr int kMaxChips = 64;

struct Decoded {
    std::array<std::uint8_t, kMaxPositions + 1> offset{};  // labels[offset[p] .. offset[p+1]) sit at p
    std::array<std::uint8_t, kMaxChips> labels{};          // ascending within each position

    int count(int pos) const { return offset[pos + 1] - offset[pos]; }
};

class PackedSpace {
public:
    explicit PackedSpace(const StarParams& params) : params_(params), positions_(1 + params.k * params.m) {
        bits_ = std::bit_width(static_cast<unsigned>(positions_ - 1));
        if (bits_ == 0) bits_ = 1;
        if (positions_ > kMaxPositions || params.chips() * bits_ > 64) {
            throw ResourceError("configurations of instar(" + std::to_string(params.k) + ") with " +
                                std::to_string(params.chips()) + " chips do not fit the 64-bit state key");
        }
        mask_ = (Key{1} << bits_) - 1;
    }

    const StarParams& params() const { return params_; }
    int positions() const { return positions_; }

    Key initial() const { return 0; }

    int position(int branch, int level) const { return level == 0 ? 0 : 1 + (branch - 1) * params_.m + (level - 1); }
    int level_of(int pos) const { return pos == 0 ? 0 : (pos - 1) % params_.m + 1; }
    int branch_of(int pos) const { return pos == 0 ? 0 : (pos - 1) / params_.m + 1; }
    int degree_of(int pos) const { return pos == 0 ? params_.k : 2; }

    int position_of_label(Key key, Label c) const { return static_cast<int>((key >> ((c - 1) * bits_)) & mask_); }

    Key move_label(Key key, Label c, int pos) const {
        const int shift = (c - 1) * bits_;
        return (key & ~(mask_ << shift)) | (static_cast<Key>(pos) << shift);
    }

    void decode(Key key, Decoded& out) const {
        std::array<std::uint8_t, kMaxPositions + 1> fill{};
        out.offset.fill(0);
        for (Label c = 1; c <= params_.chips(); ++c) ++out.offset[position_of_label(key, c) + 1];
        for (int p = 0; p < positions_; ++p) out.offset[p + 1] += out.offset[p];
        for (Label c = 1; c <= params_.chips(); ++c) {
            const int p = position_of_label(key, c);
            out.labels[out.offset[p] + fill[p]++] = static_cast<std::uint8_t>(c);
        }
    }

    Vertex vertex(int pos) const { return pos == 0 ? Vertex::center() : Vertex::branch(branch_of(pos), level_of(pos)); }

    Key encode(const LabeledConfig& config) const {
        Key key = 0;
        for (const auto& [v, labels] : config.chips()) {
            if (v.level() > params_.m) throw ResourceError("chip beyond level m cannot be encoded");
            for (Label c : labels) key = move_label(key, c, position(v.branch_index(), v.level()));
        }
        return key;
    }

    LabeledConfig to_config(Key key) const {
        LabeledConfig::ChipMap chips;
        for (Label c = 1; c <= params_.chips(); ++c) chips[vertex(position_of_label(key, c))].push_back(c);
        return LabeledConfig::from_chips(params_, std::move(chips));
    }

    /// Only meaningful for stable keys in the one-chip-per-cell shape.
    StableOutcome outcome(Key key) const { return canonical_outcome(to_config(key)); }

    /// Calls visit(successor_key) for every move allowed by `filter`, in
    /// canonical move order. Returns the number of successors.
    template <typename Visit>
    int for_each_successor(Key key, const Decoded& d, MoveFilter filter, Visit&& visit) const {
        std::array<bool, kMaxPositions> allowed{};
        int n_allowed = 0;
        for (int p = 0; p < positions_; ++p) {
            allowed[p] = d.count(p) >= degree_of(p);
            n_allowed += allowed[p];
        }
        if (n_allowed == 0) return 0;
        if (filter == MoveFilter::VolatilityMinimizing) restrict_to_volmin(d, allowed);

        int produced = 0;
        std::array<int, kMaxChips> idx{};
        for (int p = 0; p < positions_; ++p) {
            if (!allowed[p]) continue;
            const int n = d.count(p);
            const int r = degree_of(p);
            const std::uint8_t* labels = d.labels.data() + d.offset[p];
            if (p != 0 && level_of(p) == params_.m) {
                throw ResourceError("a level-m vertex became ready; the state key cannot hold level m+1");
            }
            for (int t = 0; t < r; ++t) idx[t] = t;
            while (true) {
                Key next = key;
                if (p == 0) {
                    for (int i = 0; i < r; ++i) next = move_label(next, labels[idx[i]], position(i + 1, 1));
                } else {
                    const int in = level_of(p) == 1 ? 0 : p - 1;
                    next = move_label(next, labels[idx[0]], in);
                    next = move_label(next, labels[idx[1]], p + 1);
                }
                visit(next);
                ++produced;
                int t = r - 1;
                while (t >= 0 && idx[t] == n - r + t) --t;
                if (t < 0) break;
                ++idx[t];
                for (int u = t + 1; u < r; ++u) idx[u] = idx[u - 1] + 1;
            }
        }
        return produced;
    }

private:
    // Ready count left after firing `p`, computed on chip counts alone.
    int ready_after(const std::array<int, kMaxPositions>& counts, int p) const {
        std::array<int, kMaxPositions> c = counts;
        c[p] -= degree_of(p);
        if (p == 0) {
            for (int i = 1; i <= params_.k; ++i) ++c[position(i, 1)];
        } else {
            ++c[level_of(p) == 1 ? 0 : p - 1];
            if (level_of(p) < params_.m) ++c[p + 1];
        }
        int ready = 0;
        for (int q = 0; q < positions_; ++q) ready += c[q] >= degree_of(q);
        return ready;
    }

    void restrict_to_volmin(const Decoded& d, std::array<bool, kMaxPositions>& allowed) const {
        std::array<int, kMaxPositions> counts{};
        for (int p = 0; p < positions_; ++p) counts[p] = d.count(p);
        std::array<int, kMaxPositions> after{};
        int best = kMaxPositions + 1;
        for (int p = 0; p < positions_; ++p) {
            if (!allowed[p]) continue;
            after[p] = ready_after(counts, p);
            best = std::min(best, after[p]);
        }
        int far = -1;
        for (int p = 0; p < positions_; ++p) {
            if (allowed[p] && after[p] == best) far = std::max(far, level_of(p));
        }
        for (int p = 0; p < positions_; ++p) allowed[p] = allowed[p] && after[p] == best && level_of(p) == far;
    }

    StarParams params_;
    int positions_;
    int bits_ = 1;
    Key mask_ = 1;
};

}  // namespace chipfire::detail
