#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scarham/factorization.hpp"
#include "scarham/lattice.hpp"
#include "scarham/pauli_string.hpp"
#include "scarham/stabilizer_group.hpp"

namespace scarham {
namespace ham {

using factor::FactorizationPair;
using pauli::PauliString;

// Cancelled and spurious coefficients below this are dropped; inputs are
// halves-of-integers times user couplings, so cancellation is exact.
inline constexpr double kMergeTol = 1e-12;

// How the scalar weight of each annihilator pair is chosen.
class CouplingScheme {
public:
    static CouplingScheme constant(double value);
    static CouplingScheme per_term_table(std::vector<double> table);
    static CouplingScheme random_uniform(double lo, double hi, std::uint64_t seed);
    // base * sign^n over the pair's site label n: sign=-1 alternates.
    static CouplingScheme alternating(double base, int sign);

    // One coupling per pair, in pair order. Alternating schemes need the
    // pairs' site labels; other kinds ignore them.
    std::vector<double> resolve(std::size_t n_pairs,
                                const std::vector<std::size_t>* site_labels = nullptr) const;

private:
    enum class Kind { constant, table, random, alternating };
    Kind kind_ = Kind::constant;
    double value_ = 0.0;
    double hi_ = 0.0;
    int sign_ = 1;
    std::uint64_t seed_ = 0;
    std::vector<double> table_;
};

struct Term {
    double coeff = 0.0;
    PauliString op;  // sign-free (phase_exp 0) after normalization

    bool operator==(const Term&) const = default;
};

// A real linear combination of Hermitian Pauli strings, kept normalized:
// signs folded into coefficients, duplicates merged, near-zero terms dropped,
// identity (trace) part forbidden. Terms assembled from annihilator pairs
// remember their provenance for symbolic verification.
class HamiltonianTerms {
public:
    struct Source {
        double coeff = 0.0;
        FactorizationPair pair;
    };

    HamiltonianTerms() = default;
    explicit HamiltonianTerms(std::size_t n) : n_(n) {}

    // Normalize a hand-entered term list. Throws on non-Hermitian strings,
    // non-finite coefficients, or a surviving identity component.
    static HamiltonianTerms from_raw(std::size_t n, const std::vector<Term>& raw);

    std::size_t n_qubits() const { return n_; }
    const std::vector<Term>& terms() const { return terms_; }
    const std::vector<Source>& sources() const { return sources_; }
    bool empty() const { return terms_.empty(); }

    // Sum of absolute coefficients; the natural scale for tolerances.
    double coupling_l1() const;

    // JSON list of {coeff, pauli_text}; exact round-trip.
    std::string to_json() const;
    static HamiltonianTerms from_json(const std::string& text);

    friend HamiltonianTerms merged(const HamiltonianTerms& a, const HamiltonianTerms& b);
    friend HamiltonianTerms scaled(const HamiltonianTerms& h, double factor);
    friend HamiltonianTerms conjugated(const HamiltonianTerms& h);
    friend HamiltonianTerms mapped(const HamiltonianTerms& h, const lattice::SiteMap& map);
    friend HamiltonianTerms restrict_to_support(const HamiltonianTerms& h,
                                                const stab::BipartitionMask& mask);
    friend HamiltonianTerms assemble(const std::vector<FactorizationPair>& pairs,
                                     const CouplingScheme& scheme,
                                     const std::vector<std::size_t>* site_labels);

private:
    void normalize(std::vector<Term> raw);

    std::size_t n_ = 0;
    std::vector<Term> terms_;  // sorted by op
    std::vector<Source> sources_;
};

// One weighted term pair J*(p1 - p2) per annihilator pair.
HamiltonianTerms assemble(const std::vector<FactorizationPair>& pairs,
                          const CouplingScheme& scheme,
                          const std::vector<std::size_t>* site_labels = nullptr);

// Term-merge of two Hamiltonians on the same sites; provenance concatenated.
HamiltonianTerms merged(const HamiltonianTerms& a, const HamiltonianTerms& b);
HamiltonianTerms scaled(const HamiltonianTerms& h, double factor);

// Entry-wise complex conjugate in the computational basis: negates every
// term with an odd number of Y sites. Provenance is dropped: an annihilator
// pair does not conjugate to a reweighted copy of itself.
HamiltonianTerms conjugated(const HamiltonianTerms& h);

// Site relabelling; provenance is dropped.
HamiltonianTerms mapped(const HamiltonianTerms& h, const lattice::SiteMap& map);

// Keep only terms supported inside the masked sites; provenance is dropped.
HamiltonianTerms restrict_to_support(const HamiltonianTerms& h, const stab::BipartitionMask& mask);

enum class CertStatus { certified, failed, unverifiable };

struct CertEntry {
    CertStatus status = CertStatus::unverifiable;
    std::string detail;  // parent text for pairs, term text for orphans
};

struct ScarCertificate {
    bool all_pass = false;         // no failed entry (unverifiable is not failure)
    bool fully_certified = false;  // no failed and every coefficient accounted for
    std::vector<CertEntry> entries;
};

// Symbolic annihilation certificate: every source pair is checked against the
// group, and the term list is compared against the sum the sources imply.
// Coefficient weight the sources do not explain is reported as unverifiable,
// so fully_certified soundly implies the state is annihilated.
ScarCertificate verify_scar(const HamiltonianTerms& h, const stab::StabilizerGroup& group);

// True when the coefficient-by-string maps of a and b agree within tol.
// Different qubit counts are simply unequal.
bool term_multiset_equal(const HamiltonianTerms& a, const HamiltonianTerms& b, double tol);

// y = H x over the computational basis (bit 0 of the index = site 0).
std::vector<std::complex<double>> apply(const HamiltonianTerms& h,
                                        const std::vector<std::complex<double>>& x);

// Euclidean norm of H applied to the state.
double residual_norm(const HamiltonianTerms& h, const std::vector<std::complex<double>>& state);

}  // namespace ham
}  // namespace scarham
