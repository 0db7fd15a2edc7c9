#pragma once

#include <map>
#include <string>
#include <vector>

#include "chipfire/engine.hpp"
#include "chipfire/star.hpp"

namespace chipfire {

/// The f-th-last fire of a vertex (f = 0 is its final fire).
struct FireRef {
    Vertex vertex;
    int f = 0;

    friend auto operator<=>(const FireRef&, const FireRef&) = default;
};

std::string to_string(const FireRef& ref);

/// A fire is an endgame fire when it is among the vertex's final m - j fires.
bool is_endgame(const StarParams& params, const FireRef& ref);

struct Violation {
    std::string rule;    // "1a", "1b", "2", "mixing", ...
    std::string detail;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct VerifierReport {
    std::vector<Violation> violations;

    bool passed() const { return violations.empty(); }
    friend bool operator==(const VerifierReport&, const VerifierReport&) = default;
};

/// Position (0-based index into log.moves()) of every endgame fire. Throws
/// InconsistentLogError when the log's per-vertex fire counts are not the
/// closed-form ones.
std::map<FireRef, std::size_t> endgame_positions(const SequenceLog& log);

/// Checks the precedence relations among endgame fires and that every
/// endgame fire happens with exactly degree-many chips on its vertex.
VerifierReport verify_poset(const SequenceLog& log);

enum class MixingMode {
    Strict,     // each endgame center fire sends a strictly smaller chip to a branch than the one before
    NonStrict,  // ... a chip no larger than the one before
};

/// For each branch, the chips sent to it by successive endgame center fires
/// must strictly decrease (or not increase under MixingMode::NonStrict).
/// Legal play can repeat a delivery, so engine logs may fail the strict form.
VerifierReport verify_mixing(const SequenceLog& log, MixingMode mode = MixingMode::Strict);

/// Chips sent to branch i by each endgame center fire, in time order.
std::vector<std::vector<Label>> endgame_center_deliveries(const SequenceLog& log);

/// Rows strictly increase center-outward.
bool verify_branch_sorted(const StableOutcome& outcome);

/// Level 1 and level m columns strictly increase with the branch index.
bool verify_rim_sorted(const StableOutcome& outcome);

}  // namespace chipfire
