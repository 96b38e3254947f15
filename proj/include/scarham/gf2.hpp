#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "scarham/bitvec.hpp"

namespace scarham {

// Gaussian elimination over GF(2) on rows of BitVec.
//
// Gf2Solver keeps, next to each echelon row, the combination of original
// rows that produced it, so solve() can report which input rows sum to a
// target vector, not just whether one exists.
class Gf2Solver {
public:
    Gf2Solver(std::vector<BitVec> rows, std::size_t ncols);

    std::size_t rank() const { return echelon_.size(); }
    std::size_t n_rows() const { return n_rows_; }

    // Combination c (over original row indices) with XOR of rows == target,
    // or nullopt when target is outside the row space.
    std::optional<BitVec> solve(const BitVec& target) const;

    bool in_row_space(const BitVec& target) const { return solve(target).has_value(); }

    // Basis (over original row indices) of combinations whose XOR vanishes.
    const std::vector<BitVec>& kernel_basis() const { return kernel_; }

private:
    std::size_t ncols_ = 0;
    std::size_t n_rows_ = 0;
    std::vector<BitVec> echelon_;       // reduced rows, one pivot each
    std::vector<BitVec> combo_;         // original-row combination per echelon row
    std::vector<std::size_t> pivot_;    // pivot column per echelon row
    std::vector<BitVec> kernel_;        // combinations of dependent rows
};

// Rank of a GF(2) matrix given as rows.
std::size_t gf2_rank(const std::vector<BitVec>& rows);

}  // namespace scarham
