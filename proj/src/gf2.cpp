#include "scarham/gf2.hpp"

#include <stdexcept>

namespace scarham {

Gf2Solver::Gf2Solver(std::vector<BitVec> rows, std::size_t ncols)
    : ncols_(ncols), n_rows_(rows.size()) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != ncols)
            throw std::invalid_argument("Gf2Solver: row width mismatch");
        BitVec v = rows[r];
        BitVec c(n_rows_);
        c.set(r);
        // Reduce v against the echelon rows collected so far.
        for (std::size_t e = 0; e < echelon_.size(); ++e) {
            if (v.test(pivot_[e])) {
                v ^= echelon_[e];
                c ^= combo_[e];
            }
        }
        // Find a pivot for the residual; zero residual rows are dependent.
        bool pivoted = false;
        for (std::size_t col = 0; col < ncols_; ++col) {
            if (v.test(col)) {
                pivoted = true;
                // Clear this column from existing rows to keep reduced form.
                for (std::size_t e = 0; e < echelon_.size(); ++e) {
                    if (echelon_[e].test(col)) {
                        echelon_[e] ^= v;
                        combo_[e] ^= c;
                    }
                }
                echelon_.push_back(std::move(v));
                combo_.push_back(std::move(c));
                pivot_.push_back(col);
                break;
            }
        }
        if (!pivoted) kernel_.push_back(std::move(c));
    }
}

std::optional<BitVec> Gf2Solver::solve(const BitVec& target) const {
    if (target.size() != ncols_)
        throw std::invalid_argument("Gf2Solver: target width mismatch");
    BitVec v = target;
    BitVec c(n_rows_);
    for (std::size_t e = 0; e < echelon_.size(); ++e) {
        if (v.test(pivot_[e])) {
            v ^= echelon_[e];
            c ^= combo_[e];
        }
    }
    if (v.any()) return std::nullopt;
    return c;
}

std::size_t gf2_rank(const std::vector<BitVec>& rows) {
    if (rows.empty()) return 0;
    return Gf2Solver(rows, rows.front().size()).rank();
}

}  // namespace scarham
