#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace chipfire {

using Label = int;

/// Shape of the game: k branches, m target levels, N = k*m labeled chips.
struct StarParams {
    int k = 1;
    int m = 1;

    StarParams() = default;
    StarParams(int branches, int levels);

    int chips() const { return k * m; }
    friend bool operator==(const StarParams&, const StarParams&) = default;
};

/// A vertex of the infinite k-star. The center is a single value shared by
/// every branch; branch vertices are addressed by (branch, level).
class Vertex {
public:
    constexpr Vertex() = default;

    static constexpr Vertex center() { return Vertex{}; }
    static Vertex branch(int i, int j);

    constexpr bool is_center() const { return level_ == 0; }
    constexpr int branch_index() const { return branch_; }
    constexpr int level() const { return level_; }

    friend constexpr auto operator<=>(const Vertex&, const Vertex&) = default;

private:
    constexpr Vertex(int i, int j) : branch_(i), level_(j) {}

    int branch_ = 0;
    int level_ = 0;
};

std::string to_string(const Vertex& v);

/// Neighbor of a branch vertex one level closer to the center.
Vertex inward(const Vertex& v);
Vertex outward(const Vertex& v);

int degree(const StarParams& params, const Vertex& v);

/// Chip counts on a finite set of vertices; absent vertices hold zero chips.
class UnlabeledConfig {
public:
    explicit UnlabeledConfig(StarParams params) : params_(params) {}

    const StarParams& params() const { return params_; }
    const std::map<Vertex, long long>& counts() const { return counts_; }

    long long at(const Vertex& v) const;
    long long total() const;
    void add(const Vertex& v, long long delta);

    friend bool operator==(const UnlabeledConfig&, const UnlabeledConfig&) = default;

private:
    StarParams params_;
    std::map<Vertex, long long> counts_;
};

struct Move;

/// Assignment of the labels 1..N to vertices. Label lists are kept sorted.
class LabeledConfig {
public:
    using ChipMap = std::map<Vertex, std::vector<Label>>;

    /// Validates that the label lists partition [1..N] with N = k*m.
    static LabeledConfig from_chips(StarParams params, ChipMap chips);

    const StarParams& params() const { return params_; }
    const ChipMap& chips() const { return chips_; }
    const std::vector<Label>& at(const Vertex& v) const;

    friend bool operator==(const LabeledConfig&, const LabeledConfig&) = default;
    friend auto operator<=>(const LabeledConfig& a, const LabeledConfig& b) { return a.chips_ <=> b.chips_; }

private:
    LabeledConfig(StarParams params, ChipMap chips) : params_(params), chips_(std::move(chips)) {}

    friend LabeledConfig initial_labeled(const StarParams&);
    friend LabeledConfig apply_move(const LabeledConfig&, const Move&);

    StarParams params_;
    ChipMap chips_;
};

std::string to_string(const LabeledConfig& config);

/// One firing: the vertex and the exact chips it sends out.
struct Move {
    Vertex vertex;
    std::vector<Label> fired;  // sorted ascending, size == degree(vertex)

    friend auto operator<=>(const Move&, const Move&) = default;
};

/// "C:{1,2,3}" or "B(i,j):{a,b}".
std::string to_string(const Move& move);
Move parse_move(std::string_view text);

/// k x m label matrix of a stabilized configuration; row i is branch i read
/// center-outward.
class StableOutcome {
public:
    StableOutcome() = default;
    StableOutcome(int k, int m, std::vector<Label> cells);

    static StableOutcome from_rows(const std::vector<std::vector<Label>>& rows);

    int k() const { return k_; }
    int m() const { return m_; }
    /// 1-based branch and level.
    Label at(int branch, int level) const { return cells_[(branch - 1) * m_ + (level - 1)]; }
    const std::vector<Label>& cells() const { return cells_; }
    std::vector<std::vector<Label>> rows() const;

    /// Branch i holds labels (i-1)m+1 .. im.
    bool is_totally_sorted() const;

    friend auto operator<=>(const StableOutcome&, const StableOutcome&) = default;

private:
    int k_ = 0;
    int m_ = 0;
    std::vector<Label> cells_;
};

/// Branch lists center-outward, e.g. "[1,3],[2,4]".
std::string to_string(const StableOutcome& outcome);
StableOutcome totally_sorted_outcome(const StarParams& params);

LabeledConfig initial_labeled(const StarParams& params);
UnlabeledConfig initial_unlabeled(const StarParams& params, long long n);

/// Every legal move: Center first, then branch vertices by (i, j); chip
/// subsets in lexicographic order.
std::vector<Move> legal_moves(const LabeledConfig& config);
LabeledConfig apply_move(const LabeledConfig& config, const Move& move);

/// Fires v once in the unlabeled game; v must be ready.
UnlabeledConfig fire(const UnlabeledConfig& config, const Vertex& v);

UnlabeledConfig forget_labels(const LabeledConfig& config);

/// Vertices holding at least degree-many chips, in canonical vertex order.
std::vector<Vertex> ready_vertices(const UnlabeledConfig& config);
std::vector<Vertex> ready_vertices(const LabeledConfig& config);

bool is_stable(const UnlabeledConfig& config);
bool is_stable(const LabeledConfig& config);

/// Throws ShapeError unless config is stable with exactly one chip on each
/// Branch(i, j), (i, j) in [k] x [m].
StableOutcome canonical_outcome(const LabeledConfig& config);

}  // namespace chipfire
