#pragma once

#include <string>
#include <vector>

#include "chipfire/enumeration.hpp"
#include "chipfire/star.hpp"

namespace chipfire {

/// k x m filling of [1..km]: row i is branch i, column j is level j.
class Tableau {
public:
    Tableau() = default;
    Tableau(int rows, int cols, std::vector<Label> cells);
    static Tableau from_rows(const std::vector<std::vector<Label>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    /// 1-based row and column.
    Label at(int row, int col) const { return cells_[(row - 1) * cols_ + (col - 1)]; }
    const std::vector<Label>& cells() const { return cells_; }
    std::vector<std::vector<Label>> as_rows() const;

    bool rows_increasing() const;
    bool column_increasing(int col) const;
    /// Rows and columns strictly increasing.
    bool is_standard() const;
    /// First column (1-based) that is not strictly increasing, or 0.
    int first_unsorted_column() const;

    friend auto operator<=>(const Tableau&, const Tableau&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Label> cells_;
};

std::string to_string(const Tableau& t);

Tableau from_outcome(const StableOutcome& outcome);

/// Throws PreconditionError unless t is standard.
StableOutcome to_outcome(const Tableau& t);

/// A legal firing sequence from the starting pile that stabilizes to
/// to_outcome(t): center-outward waves in which the center always fires, for
/// every row, the largest chip of that row it currently holds.
std::vector<Move> witness_sequence(const Tableau& t);

BigCount catalan(int k);

/// Number of standard tableaux of the k x m rectangle (hook length formula).
BigCount count_rect_syt(int k, int m);

/// Every standard k x m tableau, in lexicographic order of row-major cells.
/// Throws ResourceError when k*m > max_cells.
std::vector<Tableau> generate_syts(int k, int m, int max_cells = 12);

/// Sorts every row ascending. Requires every column strictly increasing and
/// checks that the result keeps that property.
std::vector<std::vector<int>> sort_rows(std::vector<std::vector<int>> grid);

/// Rows strictly increasing and first and last columns strictly increasing.
bool is_row_and_rim_sorted(const Tableau& t);

/// Every k x m filling of [1..km] with rows and rim sorted.
std::vector<Tableau> row_and_rim_sorted_tableaux(int k, int m, int max_cells = 12);

}  // namespace chipfire
