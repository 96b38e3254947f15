#include "scarham/models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"
#include "scarham/rng.hpp"

namespace scarham::models {

namespace {

using factor::FactorizationPair;
using ham::CouplingScheme;
using lattice::LatticeGeometry;
using lattice::SiteMap;
using pauli::PauliString;
using stab::BipartitionMask;
using stab::StabilizerGroup;

void check_signs(const std::vector<int>& v, std::size_t n, const char* who) {
    if (v.size() != n)
        throw std::invalid_argument(std::string(who) + ": sign vector must have one entry per row, got " +
                                    std::to_string(v.size()) + " for " + std::to_string(n));
    for (int s : v)
        if (s != 1 && s != -1) throw std::invalid_argument(std::string(who) + ": signs must be +1 or -1");
}

void check_sign(int s, const char* who) {
    if (s != 1 && s != -1) throw std::invalid_argument(std::string(who) + ": signs must be +1 or -1");
}

PauliString pauli_at(std::size_t n, const std::vector<std::pair<std::size_t, char>>& ops, int sign = 1) {
    PauliString p(n);
    for (const auto& [site, op] : ops) {
        if (p.site_op(site) != 'I') throw std::logic_error("pauli_at: site listed twice");
        p.set_site(site, op);
    }
    if (sign < 0) p.negate();
    return p;
}

// Pair a Hermitian probe p1 with p1*e; their product is e again, so the
// difference annihilates whenever e stabilizes. The probe need not act
// inside e's support, it only has to commute with e.
FactorizationPair probe_pair(const PauliString& p1, const PauliString& e, const LatticeGeometry& geom) {
    return factor::make_pair(p1, multiply(p1, e), geom);
}

// Split e by keeping its own action on the listed sites as the first factor.
FactorizationPair split_element(const PauliString& e, const std::vector<std::size_t>& sites,
                                const LatticeGeometry& geom) {
    PauliString p1(e.n_qubits());
    for (std::size_t s : sites) p1.set_xz(s, e.x_bit(s), e.z_bit(s));
    return probe_pair(p1, e, geom);
}

std::vector<std::size_t> mask_to_sites(const BipartitionMask& mask) {
    std::vector<std::size_t> sites;
    for (std::size_t i = 0; i < mask.n_sites(); ++i)
        if (mask.test(i)) sites.push_back(i);
    return sites;
}

const char* kind_name(lattice::LatticeKind kind) {
    switch (kind) {
        case lattice::LatticeKind::chain: return "chain";
        case lattice::LatticeKind::ladder: return "ladder";
        case lattice::LatticeKind::square_torus: return "square_torus";
    }
    return "unknown";
}

}  // namespace

ham::HamiltonianTerms ModelSpec::default_hamiltonian() const {
    return ham::assemble(default_pairs, default_scheme, &site_labels);
}

std::string ModelSpec::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["geometry"] = {{"kind", kind_name(geometry.kind)},
                     {"nx", geometry.nx},
                     {"ny", geometry.ny},
                     {"periodic_x", geometry.periodic_x},
                     {"periodic_y", geometry.periodic_y}};
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : group.generators()) gens.push_back(g.to_text());
    j["generators"] = std::move(gens);
    if (group.declared_depth()) j["declared_depth"] = *group.declared_depth();
    j["thetas"] = thetas;
    j["theta_w1"] = theta_w1;
    j["theta_w2"] = theta_w2;
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : default_pairs)
        pairs.push_back({{"p1", p.p1.to_text()},
                         {"p2", p.p2.to_text()},
                         {"l", p.l_cert},
                         {"b", p.b_cert}});
    j["pairs"] = std::move(pairs);
    j["site_labels"] = site_labels;
    j["default_couplings"] = default_scheme.resolve(default_pairs.size(), &site_labels);
    j["mask_sites"] = mask_to_sites(default_mask);
    j["expected_scar_entropy"] = expected_scar_entropy;
    return j.dump(2);
}

std::vector<int> uniform_thetas(std::size_t n, int value) {
    check_sign(value, "uniform_thetas");
    return std::vector<int>(n, value);
}

std::vector<int> random_thetas(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> v(n);
    for (auto& s : v) s = rng.coin() ? 1 : -1;
    return v;
}

ModelSpec cluster_chain(std::size_t n, const std::vector<int>& thetas) {
    if (n < 4) throw std::invalid_argument("cluster_chain: need at least 4 sites");
    check_signs(thetas, n, "cluster_chain");
    const auto geom = LatticeGeometry::chain(n);

    std::vector<PauliString> gens;
    gens.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        gens.push_back(pauli_at(n, {{(i + n - 1) % n, 'X'}, {i, 'Z'}, {(i + 1) % n, 'X'}}, thetas[i]));
    StabilizerGroup group(gens, 2);  // one-dimensional cluster circuits have depth 2

    std::vector<FactorizationPair> pairs;
    std::vector<std::size_t> labels;
    auto add = [&](FactorizationPair pr, std::size_t label) {
        pairs.push_back(std::move(pr));
        labels.push_back(label);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = (i + n - 1) % n;
        const std::size_t next = (i + 1) % n;
        // Field splits of one generator, then the two-site splits of the
        // products of generators one and two apart.
        add(split_element(gens[i], {prev}, geom), i);
        add(split_element(gens[i], {next}, geom), i);
        add(split_element(multiply(gens[i], gens[next]), {prev, i}, geom), i);
        add(split_element(multiply(gens[prev], gens[next]), {(i + n - 2) % n, prev}, geom), i);
    }

    auto mask = BipartitionMask::first_half(n);
    const double entropy = group.entanglement_entropy(mask);
    return ModelSpec{"cluster",
                     geom,
                     std::move(group),
                     thetas,
                     1,
                     1,
                     std::move(pairs),
                     std::move(labels),
                     CouplingScheme::random_uniform(0.7, 1.3, kDefaultSeed),
                     std::move(mask),
                     entropy};
}

ModelSpec toric_code(std::size_t nx, std::size_t ny, const std::vector<int>& thetas, int theta_w1,
                     int theta_w2) {
    if (nx < 2 || ny < 2 || nx % 2 != 0 || ny % 2 != 0)
        throw std::invalid_argument("toric_code: side lengths must be even and at least 2");
    const std::size_t n = nx * ny;
    check_signs(thetas, n, "toric_code");
    check_sign(theta_w1, "toric_code");
    check_sign(theta_w2, "toric_code");
    const auto geom = LatticeGeometry::square_torus(nx, ny);

    // The product of all same-colour checkerboard operators touches every
    // site exactly twice, so it collapses to the colour's sign product times
    // the identity. A -1 product would put -identity in the group.
    int colour_prod[2] = {1, 1};
    std::vector<std::size_t> even_sites, odd_sites;
    for (std::size_t s = 0; s < n; ++s) {
        const auto [x, y] = geom.coords(s);
        const std::size_t colour = (x + y) % 2;
        colour_prod[colour] *= thetas[s];
        (colour == 0 ? even_sites : odd_sites).push_back(s);
    }
    if (colour_prod[0] != 1 || colour_prod[1] != 1)
        throw std::invalid_argument(
            "toric_code: signs must multiply to +1 over each checkerboard colour, "
            "otherwise no joint eigenstate exists");

    auto cell = [&](std::size_t s, char op) {
        const auto [x, y] = geom.coords(s);
        const std::size_t x1 = (x + 1) % nx, y1 = (y + 1) % ny;
        return pauli_at(n,
                        {{geom.site(x, y), op},
                         {geom.site(x1, y), op},
                         {geom.site(x, y1), op},
                         {geom.site(x1, y1), op}},
                        thetas[s]);
    };

    // Drop the last operator of each colour (their colour-products are the
    // identity) and complete the set with the two non-contractible loops.
    std::vector<PauliString> gens;
    gens.reserve(n);
    for (std::size_t k = 0; k + 1 < even_sites.size(); ++k) gens.push_back(cell(even_sites[k], 'X'));
    for (std::size_t k = 0; k + 1 < odd_sites.size(); ++k) gens.push_back(cell(odd_sites[k], 'Y'));
    std::vector<std::pair<std::size_t, char>> row, col;
    for (std::size_t x = 0; x < nx; ++x) row.push_back({geom.site(x, 0), 'Z'});
    for (std::size_t y = 0; y < ny; ++y) col.push_back({geom.site(0, y), 'Z'});
    gens.push_back(pauli_at(n, row, theta_w1));
    gens.push_back(pauli_at(n, col, theta_w2));
    StabilizerGroup group(std::move(gens), n);  // depth grows with system size; recorded as N

    if (group.membership(cell(even_sites.back(), 'X')) != stab::Membership::in_group ||
        group.membership(cell(odd_sites.back(), 'Y')) != stab::Membership::in_group)
        throw std::logic_error("toric_code: dropped checkerboard operator not reproduced by the rest");

    // Each checkerboard operator splits into its two horizontal or two
    // vertical edges.
    std::vector<FactorizationPair> pairs;
    std::vector<std::size_t> labels;
    for (std::size_t s = 0; s < n; ++s) {
        const auto [x, y] = geom.coords(s);
        const char op = (x + y) % 2 == 0 ? 'X' : 'Y';
        const std::size_t x1 = (x + 1) % nx, y1 = (y + 1) % ny;
        const PauliString e = cell(s, op);
        pairs.push_back(split_element(e, {geom.site(x, y), geom.site(x1, y)}, geom));
        labels.push_back(s);
        pairs.push_back(split_element(e, {geom.site(x, y), geom.site(x, y1)}, geom));
        labels.push_back(s);
    }

    std::vector<std::size_t> lower_rows;
    for (std::size_t y = 0; y < ny / 2; ++y)
        for (std::size_t x = 0; x < nx; ++x) lower_rows.push_back(geom.site(x, y));
    auto mask = BipartitionMask::from_sites(n, lower_rows);
    const double entropy = group.entanglement_entropy(mask);
    return ModelSpec{"toric",
                     geom,
                     std::move(group),
                     thetas,
                     theta_w1,
                     theta_w2,
                     std::move(pairs),
                     std::move(labels),
                     CouplingScheme::random_uniform(0.7, 1.3, kDefaultSeed),
                     std::move(mask),
                     entropy};
}

ModelSpec atc(std::size_t nx, const std::vector<std::size_t>& ranges, bool include_wilson_terms,
              int theta_w1, int theta_w2) {
    if (nx < 3 || nx % 2 == 0) throw std::invalid_argument("atc: nx must be odd and at least 3");
    check_sign(theta_w1, "atc");
    check_sign(theta_w2, "atc");
    for (std::size_t l : ranges)
        if (l < 1 || l > nx)
            throw std::invalid_argument("atc: ranges must lie in [1, nx]; " + std::to_string(l) +
                                        " is out of bounds");
    const std::size_t n = 2 * nx;
    const auto geom = LatticeGeometry::chain(n);

    // Thin-torus cells written in chain coordinates n = x + y*nx. With nx
    // odd the checkerboard does not close, so every column carries both an
    // X cell and a Y cell; each colour's full product is the identity, which
    // drops one generator per colour in favour of the two loops.
    auto cell_sites = [&](std::size_t x, std::size_t l) {
        return std::vector<std::size_t>{x, (x + l) % n, (x + nx) % n, (x + nx + l) % n};
    };
    auto cell = [&](std::size_t x, std::size_t l, char op) {
        std::vector<std::pair<std::size_t, char>> ops;
        for (std::size_t s : cell_sites(x, l)) ops.push_back({s, op});
        // X cells and Y cells multiply sign-free; the mixed Z cell picks up
        // i at each of its four sites, which is +1 overall.
        return pauli_at(n, ops);
    };

    std::vector<PauliString> gens;
    gens.reserve(n);
    for (std::size_t x = 0; x + 1 < nx; ++x) gens.push_back(cell(x, 1, 'X'));
    for (std::size_t x = 0; x + 1 < nx; ++x) gens.push_back(cell(x, 1, 'Y'));
    std::vector<std::pair<std::size_t, char>> row, rung;
    for (std::size_t x = 0; x < nx; ++x) row.push_back({x, 'Z'});
    gens.push_back(pauli_at(n, row, theta_w1));
    gens.push_back(pauli_at(n, {{0, 'Z'}, {nx, 'Z'}}, theta_w2));
    StabilizerGroup group(std::move(gens), n);  // toric family: depth grows with N

    if (group.membership(cell(nx - 1, 1, 'X')) != stab::Membership::in_group ||
        group.membership(cell(nx - 1, 1, 'Y')) != stab::Membership::in_group)
        throw std::logic_error("atc: dropped cell operator not reproduced by the rest");

    std::vector<FactorizationPair> pairs;
    std::vector<std::size_t> labels;
    // Each range couples a chain bond to its antipode. The alternating
    // default scheme then extends the sum over the anchor to the full chain:
    // nx is odd, so the second factor lands on the opposite parity.
    for (std::size_t l : ranges) {
        if (l == nx) continue;  // the bond and its antipode coincide
        for (std::size_t x = 0; x < nx; ++x) {
            for (char op : {'X', 'Y', 'Z'}) {
                pairs.push_back(split_element(cell(x, l, op), {x, (x + l) % n}, geom));
                labels.push_back(x);
            }
        }
    }
    if (include_wilson_terms) {
        // Families built on the rung loop theta_w2 Z_n Z_{n+nx} and its
        // translates: the bare split, and the mixed-axis strings obtained by
        // multiplying in a Y cell on either side (each flips the sign).
        for (std::size_t x = 0; x < nx; ++x) {
            pairs.push_back(
                split_element(pauli_at(n, {{x, 'Z'}, {x + nx, 'Z'}}, theta_w2), {x}, geom));
            labels.push_back(x);
        }
        for (std::size_t l : ranges) {
            if (l == nx) continue;
            for (std::size_t x = 0; x < nx; ++x) {
                const auto s = cell_sites(x, l);
                pairs.push_back(split_element(
                    pauli_at(n, {{s[0], 'X'}, {s[1], 'Y'}, {s[2], 'X'}, {s[3], 'Y'}}, -theta_w2),
                    {s[0], s[1]}, geom));
                labels.push_back(x);
                pairs.push_back(split_element(
                    pauli_at(n, {{s[0], 'Y'}, {s[1], 'X'}, {s[2], 'Y'}, {s[3], 'X'}}, -theta_w2),
                    {s[0], s[1]}, geom));
                labels.push_back(x);
            }
        }
    }

    auto mask = BipartitionMask::first_half(n);
    const double entropy = group.entanglement_entropy(mask);
    return ModelSpec{"atc",
                     geom,
                     std::move(group),
                     uniform_thetas(n, 1),  // cell signs are fixed +1 for this family
                     theta_w1,
                     theta_w2,
                     std::move(pairs),
                     std::move(labels),
                     CouplingScheme::alternating(1.0, -1),
                     std::move(mask),
                     entropy};
}

ModelSpec product_state(std::size_t n, const std::vector<int>& thetas, ProductRegime regime,
                        std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("product_state: need at least 3 sites");
    check_signs(thetas, n, "product_state");
    const auto geom = LatticeGeometry::chain(n);

    std::vector<PauliString> gens;
    gens.reserve(n);
    for (std::size_t i = 0; i < n; ++i) gens.push_back(pauli_at(n, {{i, 'Z'}}, thetas[i]));
    StabilizerGroup group(gens, 0);  // product states need no entangling gates

    // Pair families in fixed emission order (tests rely on it): per site the
    // six dressed fields, then the two exchange splits, then the three
    // Z-conjugated hops; then the three long-range Z ladders over ordered
    // index pairs. The regime only changes the coupling table.
    const bool disordered = regime == ProductRegime::disordered;
    Rng rng(seed);
    std::vector<FactorizationPair> pairs;
    std::vector<std::size_t> labels;
    std::vector<double> table;
    auto add = [&](FactorizationPair pr, std::size_t label, double lo, double hi) {
        pairs.push_back(std::move(pr));
        labels.push_back(label);
        table.push_back(rng.uniform(lo, hi));
    };
    const double lr_lo = 0.7 / static_cast<double>(n), lr_hi = 1.3 / static_cast<double>(n);

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = (i + n - 1) % n, next = (i + 1) % n;
        for (char op : {'X', 'Y', 'Z'})
            for (std::size_t m : {next, prev})
                add(probe_pair(pauli_at(n, {{m, op}}), gens[i], geom), i, 0.7, 1.3);
        const PauliString zz = multiply(gens[i], gens[next]);
        add(probe_pair(pauli_at(n, {{i, 'X'}, {next, 'X'}}), zz, geom), i, 0.7, 1.3);
        add(probe_pair(pauli_at(n, {{i, 'X'}, {next, 'Y'}}), zz, geom), i, 0.7, 1.3);
        const PauliString zxz = multiply(gens[prev], gens[next]);
        for (char op : {'X', 'Y', 'Z'})
            add(probe_pair(pauli_at(n, {{prev, 'Z'}, {i, op}}), zxz, geom), i, 0.7, 1.3);
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (b == a) continue;
            add(split_element(multiply(gens[a], gens[b]), {a}, geom), a,
                disordered ? -4.0 : lr_lo, disordered ? 4.0 : lr_hi);
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b || a == (b + 1) % n) continue;
            add(split_element(multiply(multiply(gens[a], gens[b]), gens[(b + 1) % n]), {a}, geom), a,
                disordered ? -4.0 : lr_lo, disordered ? 4.0 : lr_hi);
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (b == a) continue;
            const PauliString e = multiply(multiply(gens[a], gens[(a + 1) % n]),
                                           multiply(gens[b], gens[(b + 1) % n]));
            add(probe_pair(pauli_at(n, {{a, 'Z'}, {(a + 1) % n, 'Z'}}), e, geom), a, lr_lo, lr_hi);
        }

    auto mask = BipartitionMask::first_half(n);
    const double entropy = group.entanglement_entropy(mask);
    return ModelSpec{disordered ? "product-disordered" : "product",
                     geom,
                     std::move(group),
                     thetas,
                     1,
                     1,
                     std::move(pairs),
                     std::move(labels),
                     CouplingScheme::per_term_table(std::move(table)),
                     std::move(mask),
                     entropy};
}

ModelSpec bell_family(BellVariant variant, std::size_t n, const std::vector<int>& thetas) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("bell_family: N must be even");
    check_signs(thetas, n, "bell_family");
    const std::size_t nx = n / 2;
    const auto lgeom = LatticeGeometry::ladder(nx);

    const SiteMap map = variant == BellVariant::ladder    ? SiteMap::identity(n)
                        : variant == BellVariant::rainbow ? SiteMap::rainbow(n)
                                                          : SiteMap::antipodal(n);
    // Input signs are indexed by the final (permuted) site; pull them back
    // onto the ladder rows the generators are written in.
    auto sign_at = [&](std::size_t x, std::size_t y) { return thetas[map.table[lgeom.site(x, y)]]; };

    std::vector<PauliString> gx, gz;
    for (std::size_t x = 0; x < nx; ++x) {
        gx.push_back(pauli_at(n, {{lgeom.site(x, 0), 'X'}, {lgeom.site(x, 1), 'X'}}, sign_at(x, 0)));
        gz.push_back(pauli_at(n, {{lgeom.site(x, 0), 'Z'}, {lgeom.site(x, 1), 'Z'}}, sign_at(x, 1)));
    }
    std::vector<PauliString> gens(gx);
    gens.insert(gens.end(), gz.begin(), gz.end());

    // Per rung: the three dressed rung operators and their one-site splits;
    // per adjacent rung pair: the vertical, rail, and diagonal splits of all
    // nine dressed products. The diagonal split is what lets couplings cross
    // the seam once the rungs are redistributed along the chain.
    std::vector<FactorizationPair> pairs;
    std::vector<std::size_t> labels;
    for (std::size_t x = 0; x < nx; ++x) {
        const PauliString ops[3] = {gx[x], multiply(gx[x], gz[x]), gz[x]};
        for (const auto& e : ops) {
            pairs.push_back(split_element(e, {lgeom.site(x, 0)}, lgeom));
            labels.push_back(lgeom.site(x, 0));
        }
        if (nx < 2) continue;
        const std::size_t x1 = (x + 1) % nx;
        const PauliString next_ops[3] = {gx[x1], multiply(gx[x1], gz[x1]), gz[x1]};
        for (const auto& a : ops)
            for (const auto& b : next_ops) {
                const PauliString e = multiply(a, b);
                pairs.push_back(split_element(e, {lgeom.site(x, 0), lgeom.site(x, 1)}, lgeom));
                pairs.push_back(split_element(e, {lgeom.site(x, 0), lgeom.site(x1, 0)}, lgeom));
                pairs.push_back(split_element(e, {lgeom.site(x, 0), lgeom.site(x1, 1)}, lgeom));
                labels.insert(labels.end(), 3, lgeom.site(x, 0));
            }
    }

    const char* name = variant == BellVariant::ladder    ? "bell-ladder"
                       : variant == BellVariant::rainbow ? "bell-rainbow"
                                                         : "bell-antipodal";
    auto mask = BipartitionMask::first_half(n);
    if (variant == BellVariant::ladder) {
        StabilizerGroup group(std::move(gens), 1);
        const double entropy = group.entanglement_entropy(mask);
        return ModelSpec{name,
                         lgeom,
                         std::move(group),
                         thetas,
                         1,
                         1,
                         std::move(pairs),
                         std::move(labels),
                         CouplingScheme::random_uniform(0.7, 1.3, kDefaultSeed),
                         std::move(mask),
                         entropy};
    }

    const auto geom = LatticeGeometry::chain(n);
    std::vector<PauliString> mapped_gens;
    for (const auto& g : gens) mapped_gens.push_back(apply_site_map(map, g));
    StabilizerGroup group(std::move(mapped_gens), 1);
    std::vector<FactorizationPair> mapped_pairs;
    for (const auto& p : pairs)
        mapped_pairs.push_back(
            factor::make_pair(apply_site_map(map, p.p1), apply_site_map(map, p.p2), geom));
    for (auto& l : labels) l = map.table[l];
    // Every rung is cut by the half-chain mask under both permutations.
    const double entropy = group.entanglement_entropy(mask);
    return ModelSpec{name,
                     geom,
                     std::move(group),
                     thetas,
                     1,
                     1,
                     std::move(mapped_pairs),
                     std::move(labels),
                     CouplingScheme::random_uniform(0.7, 1.3, kDefaultSeed),
                     std::move(mask),
                     entropy};
}

ModelSpec cluster_family(ClusterVariant variant, std::size_t n, const std::vector<int>& thetas) {
    if (n < 8 || n % 2 != 0) throw std::invalid_argument("cluster_family: N must be even and at least 8");
    check_signs(thetas, n, "cluster_family");
    const std::size_t nx = n / 2;
    const auto geom = LatticeGeometry::chain(n);

    std::vector<PauliString> gens(n, PauliString(n));
    if (variant == ClusterVariant::rainbow) {
        // Mirror-symmetric rewiring: the centre of generator m sits at m,
        // its X wings at the mirror images of m's neighbours.
        gens[0] = pauli_at(n, {{n - 1, 'X'}, {0, 'Z'}, {nx, 'X'}}, thetas[0]);
        gens[nx] = pauli_at(n, {{nx - 1, 'X'}, {nx, 'Z'}, {0, 'X'}}, thetas[nx]);
        for (std::size_t m = 1; m < n; ++m) {
            if (m == nx) continue;
            gens[m] = pauli_at(n, {{n - m - 1, 'X'}, {m, 'Z'}, {n - m, 'X'}}, thetas[m]);
        }
    } else {
        // Half-chain shift: wings sit nx - 1 and nx sites away.
        gens[0] = pauli_at(n, {{n - 1, 'X'}, {0, 'Z'}, {nx, 'X'}}, thetas[0]);
        gens[n - 1] = pauli_at(n, {{nx - 1, 'X'}, {n - 1, 'Z'}, {0, 'X'}}, thetas[n - 1]);
        for (std::size_t m = 1; m + 1 < n; ++m)
            gens[m] = m < nx ? pauli_at(n, {{m + nx - 1, 'X'}, {m, 'Z'}, {m + nx, 'X'}}, thetas[m])
                             : pauli_at(n, {{m - nx, 'X'}, {m, 'Z'}, {m - nx + 1, 'X'}}, thetas[m]);
    }
    StabilizerGroup group(gens, 2);  // relabelled 1D cluster states; permutations are free

    std::vector<FactorizationPair> pairs;
    std::vector<std::size_t> labels;
    std::vector<double> table;
    auto add = [&](FactorizationPair pr, std::size_t label, double coupling) {
        pairs.push_back(std::move(pr));
        labels.push_back(label);
        table.push_back(coupling);
    };

    if (variant == ClusterVariant::rainbow) {
        // Family menu and default couplings follow the two-coupled-chains
        // reading of this state; the ZZ family is the (2,3,2) one.
        for (std::size_t m = 1; m < n; ++m)
            if (m != nx) add(split_element(gens[m], {m}, geom), m, 1.2);
        for (std::size_t m = 1; m < n; ++m)
            if (m != nx) add(split_element(multiply(gens[m], gens[n - m]), {m - 1, m}, geom), m, 0.7);
        for (std::size_t m = 1; m + 1 < n; ++m) {
            if (m == nx - 1 || m == nx) continue;
            add(split_element(multiply(gens[m], gens[n - m - 1]), {m, m + 1}, geom), m, 0.9);
        }
        for (std::size_t m = 1; m + 1 < n; ++m) {
            if (m == nx - 1 || m == nx) continue;
            add(split_element(multiply(gens[m], gens[m + 1]), {m, m + 1}, geom), m, 0.3);
        }
        add(split_element(gens[n - 1], {1}, geom), 1, 0.1);
        add(split_element(gens[0], {nx}, geom), nx, -0.25);
        add(split_element(gens[nx], {0}, geom), 0, 0.5);
        add(split_element(gens[nx - 1], {nx + 1}, geom), nx + 1, 0.05);
        add(split_element(multiply(gens[0], gens[nx]), {n - 1, 0}, geom), n - 1, -0.3);
    } else {
        for (std::size_t m = 1; m < nx; ++m) add(split_element(gens[m], {m}, geom), m, 1.0);
        for (std::size_t m = 1; m < nx; ++m)
            add(split_element(gens[m + nx - 1], {m + nx - 1}, geom), m + nx - 1, 1.3);
        for (std::size_t m = 1; m < nx; ++m)
            add(split_element(multiply(gens[m], gens[m + nx - 1]), {m - 1, m}, geom), m, 0.5);
        for (std::size_t m = 1; m + 1 < nx; ++m)
            add(split_element(multiply(gens[m], gens[m + nx]), {m, m + 1}, geom), m, 1.7);
        add(split_element(gens[0], {nx}, geom), nx, 1.2);
        add(split_element(gens[n - 1], {nx - 1}, geom), nx - 1, 0.9);
        add(split_element(multiply(gens[0], gens[n - 1]), {n - 1, 0}, geom), n - 1, 1.6);
    }

    auto mask = BipartitionMask::first_half(n);
    const double entropy = group.entanglement_entropy(mask);
    return ModelSpec{variant == ClusterVariant::rainbow ? "cluster-rainbow" : "cluster-antipodal",
                     geom,
                     std::move(group),
                     thetas,
                     1,
                     1,
                     std::move(pairs),
                     std::move(labels),
                     CouplingScheme::per_term_table(std::move(table)),
                     std::move(mask),
                     entropy};
}

PxpReduction pxp_reduction(std::size_t n) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("pxp_reduction: N must be even and at least 4");
    const std::size_t half = n / 2;
    const auto geom = LatticeGeometry::chain(n);

    std::vector<int> thetas(n, 1);
    for (std::size_t m = 0; m < half; ++m) thetas[m] = -1;
    std::vector<PauliString> qx, qz;
    for (std::size_t m = 0; m < half; ++m) {
        qx.push_back(pauli_at(n, {{m, 'X'}, {m + half, 'X'}}, thetas[m]));
        qz.push_back(pauli_at(n, {{m, 'Z'}, {m + half, 'Z'}}, thetas[m + half]));
    }
    std::vector<PauliString> gens(qx);
    gens.insert(gens.end(), qz.begin(), qz.end());
    StabilizerGroup group(std::move(gens), 1);

    // The probes are the chain's own field and hop terms; the paired element
    // is built from the actual generators so the wrap signs are exact. Each
    // pair covers a term and its antipodal image at once.
    std::vector<FactorizationPair> pairs;
    std::vector<std::size_t> labels;
    std::vector<double> table;
    std::vector<ham::Term> expansion;
    for (std::size_t m = 0; m < half; ++m) {
        const std::size_t prev = (m + n - 1) % n, next = m + 1;  // m < half, so m + 1 <= half
        const std::size_t za = (m + half - 1) % half, zb = (m + 1) % half;
        const PauliString x = pauli_at(n, {{m, 'X'}});
        const PauliString xz = pauli_at(n, {{m, 'X'}, {next, 'Z'}});
        const PauliString zx = pauli_at(n, {{m, 'Z'}, {next, 'X'}});
        const PauliString zxz = pauli_at(n, {{prev, 'Z'}, {m, 'X'}, {next, 'Z'}});
        pairs.push_back(probe_pair(x, qx[m], geom));
        pairs.push_back(probe_pair(xz, multiply(qx[m], qz[zb]), geom));
        pairs.push_back(probe_pair(zx, multiply(qz[m], qx[zb]), geom));
        pairs.push_back(probe_pair(zxz, multiply(multiply(qz[za], qx[m]), qz[zb]), geom));
        labels.insert(labels.end(), 4, m);
        table.insert(table.end(), {0.25, -0.25, -0.25, 0.25});
    }
    for (std::size_t m = 0; m < n; ++m) {
        const std::size_t prev = (m + n - 1) % n, next = (m + 1) % n;
        expansion.push_back({0.25, pauli_at(n, {{m, 'X'}})});
        expansion.push_back({-0.25, pauli_at(n, {{m, 'X'}, {next, 'Z'}})});
        expansion.push_back({-0.25, pauli_at(n, {{prev, 'Z'}, {m, 'X'}})});
        expansion.push_back({0.25, pauli_at(n, {{prev, 'Z'}, {m, 'X'}, {next, 'Z'}})});
    }

    auto mask = BipartitionMask::first_half(n);
    const double entropy = group.entanglement_entropy(mask);
    ModelSpec model{"pxp",
                    geom,
                    std::move(group),
                    std::move(thetas),
                    1,
                    1,
                    std::move(pairs),
                    std::move(labels),
                    CouplingScheme::per_term_table(std::move(table)),
                    std::move(mask),
                    entropy};
    return PxpReduction{std::move(model), ham::HamiltonianTerms::from_raw(n, expansion)};
}

}  // namespace scarham::models
