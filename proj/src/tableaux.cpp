#include "chipfire/tableaux.hpp"

#include <algorithm>
#include <functional>

#include "chipfire/engine.hpp"
#include "chipfire/errors.hpp"

namespace chipfire {

Tableau::Tableau(int rows, int cols, std::vector<Label> cells) : rows_(rows), cols_(cols), cells_(std::move(cells)) {
    if (rows < 1 || cols < 1 || static_cast<int>(cells_.size()) != rows * cols) {
        throw PreconditionError("tableau needs rows*cols cells");
    }
    std::vector<Label> sorted = cells_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t t = 0; t < sorted.size(); ++t) {
        if (sorted[t] != static_cast<Label>(t + 1)) throw PreconditionError("tableau entries must be a permutation of 1..km");
    }
}

Tableau Tableau::from_rows(const std::vector<std::vector<Label>>& rows) {
    const auto o = StableOutcome::from_rows(rows);
    return Tableau(o.k(), o.m(), o.cells());
}

std::vector<std::vector<Label>> Tableau::as_rows() const {
    std::vector<std::vector<Label>> out(rows_);
    for (int i = 0; i < rows_; ++i) out[i].assign(cells_.begin() + i * cols_, cells_.begin() + (i + 1) * cols_);
    return out;
}

bool Tableau::rows_increasing() const {
    for (int i = 1; i <= rows_; ++i) {
        for (int j = 1; j < cols_; ++j) {
            if (at(i, j) >= at(i, j + 1)) return false;
        }
    }
    return true;
}

bool Tableau::column_increasing(int col) const {
    for (int i = 1; i < rows_; ++i) {
        if (at(i, col) >= at(i + 1, col)) return false;
    }
    return true;
}

int Tableau::first_unsorted_column() const {
    for (int j = 1; j <= cols_; ++j) {
        if (!column_increasing(j)) return j;
    }
    return 0;
}

bool Tableau::is_standard() const { return rows_increasing() && first_unsorted_column() == 0; }

std::string to_string(const Tableau& t) { return to_string(StableOutcome(t.rows(), t.cols(), t.cells())); }

Tableau from_outcome(const StableOutcome& outcome) { return Tableau(outcome.k(), outcome.m(), outcome.cells()); }

StableOutcome to_outcome(const Tableau& t) {
    if (!t.is_standard()) throw PreconditionError("tableau " + to_string(t) + " is not standard");
    return StableOutcome(t.rows(), t.cols(), t.cells());
}

std::vector<Move> witness_sequence(const Tableau& t) {
    if (!t.is_standard()) throw PreconditionError("witness sequences exist for standard tableaux only");
    const StarParams params(t.rows(), t.cols());
    std::vector<int> row_of(params.chips() + 1);
    for (int i = 1; i <= t.rows(); ++i) {
        for (int j = 1; j <= t.cols(); ++j) row_of[t.at(i, j)] = i;
    }

    LabeledConfig config = initial_labeled(params);
    std::vector<Move> moves;
    const auto ceiling = static_cast<std::size_t>(expected_total_fires(params));
    while (!is_stable(config)) {
        auto wave = ready_vertices(config);
        std::stable_sort(wave.begin(), wave.end(),
                         [](const Vertex& a, const Vertex& b) { return a.level() < b.level(); });
        for (const Vertex& v : wave) {
            const auto& present = config.at(v);
            if (static_cast<int>(present.size()) < degree(params, v)) continue;
            Move move{v, {}};
            if (v.is_center()) {
                std::vector<Label> top(params.k + 1, 0);
                for (Label c : present) top[row_of[c]] = std::max(top[row_of[c]], c);
                for (int i = 1; i <= params.k; ++i) {
                    if (top[i] == 0 || (i > 1 && top[i] <= top[i - 1])) {
                        throw std::logic_error("witness construction lost row symmetry at " + to_string(config));
                    }
                    move.fired.push_back(top[i]);
                }
            } else {
                move.fired.assign(present.begin(), present.begin() + 2);
            }
            config = apply_move(config, move);
            moves.push_back(std::move(move));
            if (moves.size() > ceiling) throw std::logic_error("witness construction exceeded the closed-form fire count");
        }
    }
    return moves;
}

BigCount catalan(int k) {
    if (k < 0) throw PreconditionError("catalan needs k >= 0");
    BigCount binom = 1;
    for (int t = 1; t <= k; ++t) binom = binom * (k + t) / t;  // C(2k, k), exact at each step
    return binom / (k + 1);
}

BigCount count_rect_syt(int k, int m) {
    if (k < 1 || m < 1) throw PreconditionError("rectangle needs k, m >= 1");
    BigCount numerator = 1;
    for (int t = 2; t <= k * m; ++t) numerator *= t;
    BigCount hooks = 1;
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= m; ++j) hooks *= (m - j) + (k - i) + 1;
    }
    return numerator / hooks;
}

namespace {

// Places labels 1..km in order; `admissible(row, lengths)` decides where the
// next label may go.
std::vector<Tableau> fill_rows(int k, int m, int max_cells,
                               const std::function<bool(int, const std::vector<int>&)>& admissible) {
    if (k < 1 || m < 1) throw PreconditionError("rectangle needs k, m >= 1");
    if (k * m > max_cells) {
        throw ResourceError("k*m = " + std::to_string(k * m) + " exceeds the tableau budget of " +
                            std::to_string(max_cells));
    }
    std::vector<Tableau> out;
    std::vector<int> length(k, 0);
    std::vector<Label> cells(k * m, 0);
    std::function<void(Label)> place = [&](Label c) {
        if (c > k * m) {
            out.emplace_back(k, m, cells);
            return;
        }
        for (int r = 0; r < k; ++r) {
            if (length[r] == m || !admissible(r, length)) continue;
            cells[r * m + length[r]] = c;
            ++length[r];
            place(c + 1);
            --length[r];
        }
    };
    place(1);
    std::sort(out.begin(), out.end(), [](const Tableau& a, const Tableau& b) { return a.cells() < b.cells(); });
    return out;
}

}  // namespace

std::vector<Tableau> generate_syts(int k, int m, int max_cells) {
    return fill_rows(k, m, max_cells, [](int r, const std::vector<int>& length) {
        return r == 0 || length[r - 1] > length[r];
    });
}

std::vector<Tableau> row_and_rim_sorted_tableaux(int k, int m, int max_cells) {
    auto all = fill_rows(k, m, max_cells, [](int, const std::vector<int>&) { return true; });
    std::erase_if(all, [](const Tableau& t) { return !is_row_and_rim_sorted(t); });
    return all;
}

std::vector<std::vector<int>> sort_rows(std::vector<std::vector<int>> grid) {
    auto columns_increasing = [](const std::vector<std::vector<int>>& g) {
        for (std::size_t i = 1; i < g.size(); ++i) {
            for (std::size_t j = 0; j < g[i].size(); ++j) {
                if (g[i - 1][j] >= g[i][j]) return false;
            }
        }
        return true;
    };
    for (const auto& row : grid) {
        if (row.size() != grid.front().size()) throw PreconditionError("grid rows must have equal length");
    }
    if (!columns_increasing(grid)) throw PreconditionError("every column must be strictly increasing");
    for (auto& row : grid) std::sort(row.begin(), row.end());
    if (!columns_increasing(grid)) throw std::logic_error("row sorting broke a column");
    return grid;
}

bool is_row_and_rim_sorted(const Tableau& t) {
    return t.rows_increasing() && t.column_increasing(1) && t.column_increasing(t.cols());
}

}  // namespace chipfire
