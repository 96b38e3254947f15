#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace scarham {

// Fixed-length bit vector backed by 64-bit words. Trailing bits of the last
// word are kept zero so whole-word comparisons and popcounts are exact.
class BitVec {
public:
    BitVec() = default;

    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool test(std::size_t i) const {
        check_index(i);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool v = true) {
        check_index(i);
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }

    void flip(std::size_t i) {
        check_index(i);
        w_[i >> 6] ^= std::uint64_t{1} << (i & 63);
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }

    bool none() const { return !any(); }

    BitVec& operator^=(const BitVec& o) {
        check_size(o);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }

    BitVec& operator&=(const BitVec& o) {
        check_size(o);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }

    BitVec& operator|=(const BitVec& o) {
        check_size(o);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }

    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
    friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }

    // Parity of the AND of two vectors; the workhorse of symplectic forms.
    friend bool and_parity(const BitVec& a, const BitVec& b) {
        a.check_size(b);
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < a.w_.size(); ++k)
            acc ^= a.w_[k] & b.w_[k];
        return std::popcount(acc) & 1u;
    }

    bool operator==(const BitVec&) const = default;

    // Total order: length first, then words low-to-high. Deterministic, used
    // for canonical sorting only; has no geometric meaning.
    std::strong_ordering operator<=>(const BitVec& o) const {
        if (auto c = n_ <=> o.n_; c != 0) return c;
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (auto c = w_[k] <=> o.w_[k]; c != 0) return c;
        return std::strong_ordering::equal;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }

    std::uint64_t low_word() const { return w_.empty() ? 0 : w_[0]; }

private:
    void check_index(std::size_t i) const {
        if (i >= n_) throw std::out_of_range("BitVec: index out of range");
    }
    void check_size(const BitVec& o) const {
        if (n_ != o.n_) throw std::invalid_argument("BitVec: size mismatch");
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace scarham
