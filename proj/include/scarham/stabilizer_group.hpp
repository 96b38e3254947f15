#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scarham/bitvec.hpp"
#include "scarham/gf2.hpp"
#include "scarham/pauli_string.hpp"

namespace scarham {
namespace stab {

using pauli::PauliString;

// State-vector synthesis allocates 2^N complex amplitudes.
inline constexpr std::size_t kStateVectorCap = 20;

enum class Membership { in_group, in_group_negated, not_in_group };

// Subsystem A of a bipartition, as a set of site indices.
class BipartitionMask {
public:
    explicit BipartitionMask(BitVec sites) : bits_(std::move(sites)) {}

    // Sites 0 .. floor(n/2)-1.
    static BipartitionMask first_half(std::size_t n);
    static BipartitionMask from_sites(std::size_t n, const std::vector<std::size_t>& sites);

    BipartitionMask complement() const;

    const BitVec& bits() const { return bits_; }
    std::size_t n_sites() const { return bits_.size(); }
    std::size_t count() const { return bits_.popcount(); }
    bool test(std::size_t i) const { return bits_.test(i); }

    bool operator==(const BipartitionMask&) const = default;

private:
    BitVec bits_;
};

// N mutually commuting, GF(2)-independent, Hermitian Pauli strings on N
// qubits. Full rank pins down a unique joint +1 eigenstate, and since no
// non-empty generator subset can cancel to the identity pattern, -identity
// is never in the generated group.
class StabilizerGroup {
public:
    // Validates sizes, Hermiticity, commutation, and independence; the
    // exception message names the first offending generator (pair).
    explicit StabilizerGroup(std::vector<PauliString> generators,
                             std::optional<std::size_t> declared_depth = std::nullopt);

    // One generator text form per line; '#' starts a comment.
    static StabilizerGroup from_lines(const std::vector<std::string>& lines);
    static StabilizerGroup from_file(const std::string& path);

    std::size_t n_sites() const { return n_; }
    const std::vector<PauliString>& generators() const { return gens_; }
    std::optional<std::size_t> declared_depth() const { return depth_; }

    // Decides whether +p or -p stabilizes the group's state. Throws
    // std::domain_error for non-Hermitian queries.
    Membership membership(const PauliString& p) const;

    // Ordered product of the generators selected by combo (bit i = generator i).
    PauliString subset_product(const BitVec& combo) const;

    // Unit-norm joint +1 eigenvector. The reference basis state is the first
    // one (in index order) with a non-vanishing projection, which also makes
    // the first non-zero amplitude real positive.
    std::vector<std::complex<double>> build_state_vector(std::size_t cap = kStateVectorCap) const;

    // Bipartite entanglement entropy of the stabilizer state from GF(2) rank
    // algebra, in nats; the _log2 variant reports in bits.
    double entanglement_entropy(const BipartitionMask& mask) const;
    double entanglement_entropy_log2(const BipartitionMask& mask) const;

    // Distinct non-identity products of at most max_factors generators, with
    // weight <= max_weight when max_weight > 0. Sorted, deduplicated.
    std::vector<PauliString> enumerate_elements(std::size_t max_factors,
                                                std::size_t max_weight = 0) const;

    // Same group, generators re-expressed in reduced row-echelon form.
    StabilizerGroup canonicalized() const;

private:
    std::size_t n_ = 0;
    std::vector<PauliString> gens_;
    std::optional<std::size_t> depth_;
    std::optional<Gf2Solver> tab_;  // rows [x | z] over 2N columns
};

// Valid group grown from <Z_0,...,Z_{N-1}> by a seeded walk of elementary
// Clifford conjugations (Hadamard-, phase-, and controlled-NOT-type) plus
// random generator negations.
StabilizerGroup random_group(std::size_t n, std::uint64_t seed);

}  // namespace stab
}  // namespace scarham
