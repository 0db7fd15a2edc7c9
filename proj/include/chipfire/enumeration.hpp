#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chipfire/star.hpp"

namespace chipfire {

using BigCount = boost::multiprecision::cpp_int;

struct EnumerationBudget {
    int max_chips = 8;                        // k*m ceiling; raise to go past desk scale
    std::size_t max_states = 200'000'000;     // distinct configurations visited
};

struct EnumerationOptions {
    EnumerationBudget budget;
    int threads = 0;  // 0: OpenMP default
};

/// Number of distinct stabilization sequences from the starting pile that end
/// in each stable outcome. Two sequences differ when some step fires a
/// different vertex or a different chip subset.
struct EnumerationResult {
    StarParams params;
    std::map<StableOutcome, BigCount> per_outcome;
    BigCount total_sequences;

    std::set<StableOutcome> outcomes() const;
    friend bool operator==(const EnumerationResult&, const EnumerationResult&) = default;
};

/// Which moves a search may branch over at each configuration.
enum class MoveFilter { All, VolatilityMinimizing };

/// Parallel kernel: breadth-first over firing depth, summing path counts into
/// the next layer. Bit-identical to enumerate_all_serial for any thread count.
EnumerationResult enumerate_all(const StarParams& params, const EnumerationOptions& options = {},
                                MoveFilter filter = MoveFilter::All);

/// Serial reference: memoized recursion where each configuration maps to the
/// per-outcome counts of its completions.
EnumerationResult enumerate_all_serial(const StarParams& params, const EnumerationBudget& budget = {},
                                       MoveFilter filter = MoveFilter::All);

std::set<StableOutcome> reachable_set(const StarParams& params, const EnumerationOptions& options = {});

/// Moves allowed by volatility-minimizing firing: among ready vertices keep
/// those whose fire leaves the fewest ready vertices, then those furthest from
/// the center; every chip subset at a surviving vertex is allowed.
std::vector<Move> volmin_allowed_moves(const LabeledConfig& config);

/// Vertices surviving the volatility-minimizing filter, in canonical order.
std::vector<Vertex> volmin_vertices(const UnlabeledConfig& config);

std::set<StableOutcome> enumerate_volmin(const StarParams& params, const EnumerationOptions& options = {});

}  // namespace chipfire
