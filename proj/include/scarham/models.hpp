#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scarham/factorization.hpp"
#include "scarham/hamiltonian.hpp"
#include "scarham/lattice.hpp"
#include "scarham/stabilizer_group.hpp"

namespace scarham::models {

using factor::FactorizationPair;

// Seed behind every default random coupling table; callers override the
// scheme when they need a different draw.
inline constexpr std::uint64_t kDefaultSeed = 715;

// A stabilizer family bundled with its annihilator pair menu and the
// defaults used to assemble and probe its parent Hamiltonian.
struct ModelSpec {
    std::string name;
    lattice::LatticeGeometry geometry;
    stab::StabilizerGroup group;
    std::vector<int> thetas;  // generator signs, one per generator row
    int theta_w1 = 1;         // torus loop signs where applicable
    int theta_w2 = 1;
    std::vector<FactorizationPair> default_pairs;
    std::vector<std::size_t> site_labels;  // one anchor site per pair
    ham::CouplingScheme default_scheme;
    stab::BipartitionMask default_mask;
    double expected_scar_entropy = 0.0;  // nats, rank entropy for default_mask

    ham::HamiltonianTerms default_hamiltonian() const;
    std::string to_json() const;
};

std::vector<int> uniform_thetas(std::size_t n, int value);
std::vector<int> random_thetas(std::size_t n, std::uint64_t seed);

// Ring of three-site XZX generators theta_n X_{n-1} Z_n X_{n+1}. Pairs are
// the one-site and two-site splits of single generators and of products of
// generators two apart. N >= 4; thetas size N over {-1,+1}.
ModelSpec cluster_chain(std::size_t n, const std::vector<int>& thetas);

// Checkerboard vertex (XXXX) and plaquette (YYYY) operators on an even-by-
// even torus, completed by two non-contractible Z loops: a row y=0 loop
// (sign theta_w1) and a column x=0 loop (sign theta_w2). The sign field must
// multiply to +1 over each checkerboard colour or no joint eigenstate
// exists. Pairs split every vertex and plaquette into its two horizontal or
// two vertical edges.
ModelSpec toric_code(std::size_t nx, std::size_t ny, const std::vector<int>& thetas,
                     int theta_w1, int theta_w2);

// Thin 2 x nx torus (nx odd) written as a 2*nx chain, n = x + y*nx, with all
// vertex and plaquette signs +1. Pairs couple chain sites (n, n+l) to their
// antipodes (n+nx, n+nx+l) for each requested range l in [1, nx]; l = nx is
// degenerate and contributes nothing. The default scheme alternates sign
// with n. include_wilson_terms adds the loop-derived families: Z_n paired
// with theta_w2 Z_{n+nx}, and the mixed XY/YX strings at each range.
ModelSpec atc(std::size_t nx, const std::vector<std::size_t>& ranges,
              bool include_wilson_terms = false, int theta_w1 = 1, int theta_w2 = 1);

enum class ProductRegime { generic, disordered };

// Computational-basis product state, generators theta_n Z_n. Pairs: on-site
// fields dressed by neighbouring Z's, the XX+YY and XY-YX exchange splits,
// Z-conjugated hops, and the long-range ZZ ladder families. The regime picks
// the coupling table: generic draws everything positive (long-range scaled
// by 1/N); disordered widens the Z-field families to [-4, 4].
ModelSpec product_state(std::size_t n, const std::vector<int>& thetas,
                        ProductRegime regime, std::uint64_t seed = kDefaultSeed);

enum class BellVariant { ladder, rainbow, antipodal };

// Rung Bell pairs on an nx x 2 ladder, generators theta_{x,0} X X and
// theta_{x,1} Z Z per rung. Pairs: three one-site field splits per rung and,
// per adjacent rung pair, the vertical, rail, and diagonal splits of all
// nine dressed two-rung products. The rainbow and antipodal variants apply
// the matching site permutation to the whole ladder model; thetas are
// indexed by the final (permuted) site.
ModelSpec bell_family(BellVariant variant, std::size_t n, const std::vector<int>& thetas);

enum class ClusterVariant { rainbow, antipodal };

// Cluster states rewired so each XZX generator straddles the half-chain cut:
// mirror-symmetric (rainbow) or shifted by N/2 (antipodal). Pairs follow the
// two coupled-chain menus, including the (2,3,2) ZZ family for rainbow and
// the boundary terms at the special sites. N even >= 8.
ModelSpec cluster_family(ClusterVariant variant, std::size_t n, const std::vector<int>& thetas);

struct PxpReduction {
    ModelSpec model;
    ham::HamiltonianTerms pxp;  // direct expansion, for identity checks
};

// Antipodal Bell pairs with X-row signs -1 and Z-row signs +1; assembling
// the X, XZ, ZX, and ZXZ splits with couplings (1, -1, -1, 1)/4 reproduces
// the PXP Hamiltonian, returned alongside for term-level comparison.
PxpReduction pxp_reduction(std::size_t n);

}  // namespace scarham::models
