#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "scarham/pauli_string.hpp"

namespace scarham::lattice {

enum class LatticeKind { chain, ladder, square_torus };

// Site indexing and boundary conditions. Sites are indexed n = x + y*nx;
// a chain is the ny = 1 case.
struct LatticeGeometry {
    LatticeKind kind = LatticeKind::chain;
    std::size_t nx = 0;
    std::size_t ny = 1;
    bool periodic_x = true;
    bool periodic_y = false;

    static LatticeGeometry chain(std::size_t n, bool periodic = true);
    static LatticeGeometry ladder(std::size_t nx, bool periodic = true);
    static LatticeGeometry square_torus(std::size_t nx, std::size_t ny);

    std::size_t n_sites() const { return nx * ny; }
    std::size_t site(std::size_t x, std::size_t y) const { return x + y * nx; }
    std::pair<std::size_t, std::size_t> coords(std::size_t n) const {
        return {n % nx, n / nx};
    }
};

// True iff all supported sites fit in one contiguous window of at most l
// neighbouring sites. On a chain the window is an interval (cyclic when
// periodic); in 2D it is an axis-aligned a x b block with max(a,b) <= l,
// wrapped along periodic axes.
bool is_l_local(const LatticeGeometry& geom, const pauli::SupportMask& support, std::size_t l);

// Smallest window certificate: chain -> interval length; 2D -> max(a,b) of
// the smallest covering block. Zero for empty support.
std::size_t min_window(const LatticeGeometry& geom, const pauli::SupportMask& support);

// Named site permutation n -> table[n].
struct SiteMap {
    std::string name;
    std::vector<std::size_t> table;
    std::vector<std::size_t> inverse;

    SiteMap(std::string name, std::vector<std::size_t> table);

    std::size_t size() const { return table.size(); }

    // Ladder row-major index (x + y*N/2) to interleaved chain index 2x + y.
    static SiteMap standard_cluster(std::size_t n);
    // (x, y) -> x - 2xy + (N-1)y: row 0 keeps order, row 1 reverses.
    static SiteMap rainbow(std::size_t n);
    // (x, y) -> x + (N/2) y; identity in row-major indexing.
    static SiteMap antipodal(std::size_t n);
    // Thin-torus relabelling n = x + y*N_x; identity in row-major indexing.
    static SiteMap thin_torus(std::size_t n);

    static SiteMap identity(std::size_t n);
    SiteMap inverted() const;
};

// Permute qubit positions; the phase is unchanged.
pauli::PauliString apply_site_map(const SiteMap& map, const pauli::PauliString& p);
pauli::SupportMask apply_site_map(const SiteMap& map, const pauli::SupportMask& m);
BitVec apply_site_map(const SiteMap& map, const BitVec& bits);

}  // namespace scarham::lattice
