#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "scarham/lattice.hpp"
#include "scarham/pauli_string.hpp"
#include "scarham/stabilizer_group.hpp"

namespace scarham {
namespace factor {

using lattice::LatticeGeometry;
using pauli::PauliString;

// A stabilizer element split into two Hermitian non-identity factors. The
// difference p1 - p2 annihilates every state the element stabilizes.
struct FactorizationPair {
    PauliString parent;      // == multiply(p1, p2), sign included
    PauliString p1;          // carries phase +1
    PauliString p2;          // carries the residual sign
    std::size_t l_cert = 0;  // larger of the two factor window certificates
    std::size_t b_cert = 0;  // larger of the two factor weights

    bool operator==(const FactorizationPair&) const = default;
    auto operator<=>(const FactorizationPair&) const = default;
};

// All distinct two-factor splits of p with each factor inside an l-site
// window and acting on at most b sites. Enumerates, per supported site of p,
// the four splittings (mu, I), (I, mu), and the two orderings of the
// non-trivial decomposition of mu, plus every budget-feasible dressing of
// off-support sites with a common operator carried by both factors (which
// cancels in the product, e.g. Z_n = (Z_n sigma_m)(sigma_m)). Keeps
// assignments whose residual phase is real. Returns an empty list when p is
// unfactorizable at this budget.
std::vector<FactorizationPair> factorize_element(const PauliString& p,
                                                 const LatticeGeometry& geom,
                                                 std::size_t l, std::size_t b);

// Factorize every candidate element: products of at most max_factors
// generators with weight at most 2b. Deduplicated, deterministically ordered.
std::vector<FactorizationPair> scan_group(const stab::StabilizerGroup& group,
                                          const LatticeGeometry& geom,
                                          std::size_t l, std::size_t b,
                                          std::size_t max_factors = 3);

// Symbolic certificate that (p1 - p2) annihilates the group's state: the
// product p1*p2 must sit in the group with a plus sign.
bool verify_annihilator(const stab::StabilizerGroup& group, const FactorizationPair& pair);

// Assemble a pair from two given Hermitian factors, computing the parent and
// the certificates under the geometry. Factor order is preserved; any sign on
// the first factor is moved onto the second.
FactorizationPair make_pair(const PauliString& p1, const PauliString& p2,
                            const LatticeGeometry& geom);

}  // namespace factor
}  // namespace scarham
