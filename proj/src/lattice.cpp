#include "scarham/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace scarham::lattice {

LatticeGeometry LatticeGeometry::chain(std::size_t n, bool periodic) {
    if (n < 2) throw std::invalid_argument("chain: need at least 2 sites");
    return {LatticeKind::chain, n, 1, periodic, false};
}

LatticeGeometry LatticeGeometry::ladder(std::size_t nx, bool periodic) {
    if (nx < 2) throw std::invalid_argument("ladder: need at least 2 rungs");
    return {LatticeKind::ladder, nx, 2, periodic, false};
}

LatticeGeometry LatticeGeometry::square_torus(std::size_t nx, std::size_t ny) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("square_torus: need nx, ny >= 2");
    return {LatticeKind::square_torus, nx, ny, true, true};
}

namespace {

// Length of the smallest (cyclic) interval covering the given coordinates.
std::size_t axis_cover(std::vector<std::size_t> coords, std::size_t extent, bool periodic) {
    if (coords.empty()) return 0;
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    if (!periodic) return coords.back() - coords.front() + 1;
    // Drop the largest cyclic gap between consecutive occupied coordinates.
    std::size_t max_gap = coords.front() + extent - coords.back();
    for (std::size_t i = 1; i < coords.size(); ++i)
        max_gap = std::max(max_gap, coords[i] - coords[i - 1]);
    return extent - max_gap + 1;
}

}  // namespace

std::size_t min_window(const LatticeGeometry& geom, const pauli::SupportMask& support) {
    if (support.size() != geom.n_sites())
        throw std::invalid_argument("min_window: support sized to a different lattice");
    std::vector<std::size_t> xs, ys;
    for (std::size_t n = 0; n < support.size(); ++n) {
        if (!support.test(n)) continue;
        const auto [x, y] = geom.coords(n);
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.empty()) return 0;
    const std::size_t cx = axis_cover(std::move(xs), geom.nx, geom.periodic_x);
    if (geom.kind == LatticeKind::chain) return cx;
    const std::size_t cy = axis_cover(std::move(ys), geom.ny, geom.periodic_y);
    return std::max(cx, cy);
}

bool is_l_local(const LatticeGeometry& geom, const pauli::SupportMask& support, std::size_t l) {
    if (l < 1) throw std::invalid_argument("is_l_local: l must be >= 1");
    return min_window(geom, support) <= l;
}

SiteMap::SiteMap(std::string name_, std::vector<std::size_t> table_)
    : name(std::move(name_)), table(std::move(table_)) {
    inverse.assign(table.size(), table.size());
    for (std::size_t n = 0; n < table.size(); ++n) {
        if (table[n] >= table.size() || inverse[table[n]] != table.size())
            throw std::invalid_argument("SiteMap '" + name + "': table is not a bijection");
        inverse[table[n]] = n;
    }
}

namespace {

SiteMap ladder_map(std::string name, std::size_t n,
                   std::size_t (*f)(std::size_t x, std::size_t y, std::size_t n)) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("SiteMap '" + name + "': needs even n >= 2");
    const std::size_t half = n / 2;
    std::vector<std::size_t> t(n);
    for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t x = 0; x < half; ++x) t[x + y * half] = f(x, y, n);
    return SiteMap(std::move(name), std::move(t));
}

}  // namespace

SiteMap SiteMap::standard_cluster(std::size_t n) {
    return ladder_map("standard_cluster", n,
                      [](std::size_t x, std::size_t y, std::size_t) { return 2 * x + y; });
}

SiteMap SiteMap::rainbow(std::size_t n) {
    return ladder_map("rainbow", n, [](std::size_t x, std::size_t y, std::size_t nn) {
        return x - 2 * x * y + (nn - 1) * y;
    });
}

SiteMap SiteMap::antipodal(std::size_t n) {
    return ladder_map("antipodal", n, [](std::size_t x, std::size_t y, std::size_t nn) {
        return x + (nn / 2) * y;
    });
}

SiteMap SiteMap::thin_torus(std::size_t n) {
    return ladder_map("thin_torus", n, [](std::size_t x, std::size_t y, std::size_t nn) {
        return x + (nn / 2) * y;
    });
}

SiteMap SiteMap::identity(std::size_t n) {
    std::vector<std::size_t> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = i;
    return SiteMap("identity", std::move(t));
}

SiteMap SiteMap::inverted() const {
    return SiteMap(name + "_inverse", inverse);
}

BitVec apply_site_map(const SiteMap& map, const BitVec& bits) {
    if (bits.size() != map.size())
        throw std::invalid_argument("apply_site_map: size mismatch");
    BitVec out(bits.size());
    for (std::size_t n = 0; n < bits.size(); ++n)
        if (bits.test(n)) out.set(map.table[n]);
    return out;
}

pauli::PauliString apply_site_map(const SiteMap& map, const pauli::PauliString& p) {
    if (p.n_qubits() != map.size())
        throw std::invalid_argument("apply_site_map: size mismatch");
    return pauli::PauliString(p.n_qubits(), apply_site_map(map, p.x_bits()),
                              apply_site_map(map, p.z_bits()), p.phase_exp());
}

pauli::SupportMask apply_site_map(const SiteMap& map, const pauli::SupportMask& m) {
    pauli::SupportMask out(m.size());
    out.bits = apply_site_map(map, m.bits);
    return out;
}

}  // namespace scarham::lattice
