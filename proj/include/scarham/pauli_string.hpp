#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scarham/bitvec.hpp"

namespace scarham {

// Thrown when a computation would exceed a configured dense-size cap.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace pauli {

inline constexpr std::size_t kDefaultDenseCap = 14;

// Qubits a Pauli string acts on non-trivially.
struct SupportMask {
    BitVec bits;

    SupportMask() = default;
    explicit SupportMask(std::size_t n) : bits(n) {}

    std::size_t size() const { return bits.size(); }
    std::size_t count() const { return bits.popcount(); }
    bool test(std::size_t i) const { return bits.test(i); }
};

// Phase-tracked N-qubit Pauli operator in symplectic form.
//
// Operator value: i^phase_exp * prod_n s_n where the site operator s_n is
// decoded from the bit pair (x_n, z_n) as I, X, Z, or Y. The decode
// convention is Z-then-X with the i absorbed, s_n = i^{x_n z_n} X^{x_n} Z^{z_n},
// so the pair (1,1) IS the Hermitian Y and the whole string is Hermitian
// exactly when phase_exp is 0 or 2.
class PauliString {
public:
    PauliString() = default;

    // Identity on n qubits.
    explicit PauliString(std::size_t n) : n_(n), x_(n), z_(n) {}

    PauliString(std::size_t n, BitVec x, BitVec z, int phase_exp);

    // Text form: optional leading token from {+, -, +i, -i} followed by one
    // character per site from {I, X, Y, Z}; character j names site j.
    static PauliString from_text(std::string_view text);
    std::string to_text() const;

    std::size_t n_qubits() const { return n_; }
    int phase_exp() const { return phase_; }
    const BitVec& x_bits() const { return x_; }
    const BitVec& z_bits() const { return z_; }
    bool x_bit(std::size_t i) const { return x_.test(i); }
    bool z_bit(std::size_t i) const { return z_.test(i); }

    // 'I', 'X', 'Y' or 'Z'.
    char site_op(std::size_t i) const;
    void set_site(std::size_t i, char op);
    void set_xz(std::size_t i, bool x, bool z) {
        x_.set(i, x);
        z_.set(i, z);
    }

    void set_phase_exp(int k) { phase_ = static_cast<std::uint8_t>(((k % 4) + 4) % 4); }
    void negate() { set_phase_exp(phase_ + 2); }

    bool is_identity() const { return x_.none() && z_.none() && phase_ == 0; }
    bool has_identity_bits() const { return x_.none() && z_.none(); }
    bool is_hermitian() const { return phase_ == 0 || phase_ == 2; }

    std::size_t weight() const { return (x_ | z_).popcount(); }
    bool is_b_body(std::size_t b) const { return weight() <= b; }
    SupportMask support() const;

    // Number of sites carrying Y.
    std::size_t y_count() const { return (x_ & z_).popcount(); }

    // True when every matrix element in the computational basis is real.
    bool is_real_in_z_basis() const;

    // P|s> = amp |s ^ x_bits>, for the basis convention bit b=0 <-> the
    // sigma^Z eigenvalue +1 state. Requires n_qubits <= 64.
    struct BasisImage {
        std::uint64_t state;
        std::complex<double> amp;
    };
    BasisImage apply_to_basis(std::uint64_t s) const;

    // Column-major 2^N x 2^N matrix; throws resource_error above the cap.
    std::vector<std::complex<double>> to_dense(std::size_t dense_cap = kDefaultDenseCap) const;

    bool operator==(const PauliString&) const = default;

    // Deterministic total order: size, x words, z words, phase.
    std::strong_ordering operator<=>(const PauliString& o) const;

private:
    std::size_t n_ = 0;
    std::uint8_t phase_ = 0;
    BitVec x_, z_;
};

// Exact operator product a*b including the accumulated power of i.
PauliString multiply(const PauliString& a, const PauliString& b);

// True iff the symplectic form sum_n (a.x[n] b.z[n] + a.z[n] b.x[n]) vanishes mod 2.
bool commutes(const PauliString& a, const PauliString& b);

}  // namespace pauli
}  // namespace scarham
