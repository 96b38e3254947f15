#include "scarham/factorization.hpp"

#include <algorithm>
#include <array>
#include <iterator>
#include <numeric>
#include <stdexcept>
#include <string>

namespace scarham {
namespace factor {

namespace {

struct SiteSplit {
    char a, b;
};

// The four splittings of a non-identity site operator into an ordered pair
// of site operators whose product is proportional to it.
std::array<SiteSplit, 4> site_splits(char mu) {
    switch (mu) {
        case 'X': return {{{'X', 'I'}, {'I', 'X'}, {'Y', 'Z'}, {'Z', 'Y'}}};
        case 'Y': return {{{'Y', 'I'}, {'I', 'Y'}, {'Z', 'X'}, {'X', 'Z'}}};
        case 'Z': return {{{'Z', 'I'}, {'I', 'Z'}, {'X', 'Y'}, {'Y', 'X'}}};
    }
    throw std::logic_error("site_splits: identity site");
}

// Order the factors by the fixed total order on their sign-free forms, then
// put the whole residual sign on the second one. Swapping commutes through
// the parent up to the factors' commutation sign, which the recomputed
// residual absorbs.
FactorizationPair canonical_pair(PauliString a, PauliString b, const PauliString& parent,
                                 const LatticeGeometry& geom) {
    a.set_phase_exp(0);
    b.set_phase_exp(0);
    if (b < a) std::swap(a, b);
    const int g = pauli::multiply(a, b).phase_exp();
    b.set_phase_exp(parent.phase_exp() - g);
    FactorizationPair out;
    out.parent = parent;
    out.l_cert = std::max(lattice::min_window(geom, a.support()),
                          lattice::min_window(geom, b.support()));
    out.b_cert = std::max(a.weight(), b.weight());
    out.p1 = std::move(a);
    out.p2 = std::move(b);
    return out;
}

}  // namespace

std::vector<FactorizationPair> factorize_element(const PauliString& p,
                                                 const LatticeGeometry& geom,
                                                 std::size_t l, std::size_t b) {
    if (geom.n_sites() != p.n_qubits())
        throw std::invalid_argument("factorize_element: geometry size mismatch");
    if (!p.is_hermitian())
        throw std::domain_error("factorize_element: element must be Hermitian");
    if (p.has_identity_bits())
        throw std::invalid_argument("factorize_element: element must be non-identity");
    if (l < 1 || b < 1)
        throw std::invalid_argument("factorize_element: budgets must be at least 1");

    std::vector<std::size_t> sites;
    for (std::size_t i = 0; i < p.n_qubits(); ++i)
        if (p.x_bit(i) || p.z_bit(i)) sites.push_back(i);
    const std::size_t w = sites.size();

    std::vector<FactorizationPair> out;
    // Each parent site must land in at least one factor.
    if (w > 2 * b) return out;
    if (w > 12) throw resource_error("factorize_element: support too wide for the split walk");

    std::vector<std::array<SiteSplit, 4>> options;
    options.reserve(w);
    for (std::size_t s : sites) options.push_back(site_splits(p.site_op(s)));

    // One pass over all per-site split assignments, with the given dressing
    // pre-seeded into both factors.
    const auto walk = [&](const std::vector<std::size_t>& dress, const std::string& ops) {
        std::vector<unsigned> digit(w, 0);
        for (;;) {
            PauliString fa(p.n_qubits()), fb(p.n_qubits());
            std::size_t na = dress.size(), nb = dress.size();
            for (std::size_t j = 0; j < dress.size(); ++j) {
                fa.set_site(dress[j], ops[j]);
                fb.set_site(dress[j], ops[j]);
            }
            for (std::size_t k = 0; k < w; ++k) {
                const SiteSplit& sp = options[k][digit[k]];
                if (sp.a != 'I') {
                    fa.set_site(sites[k], sp.a);
                    ++na;
                }
                if (sp.b != 'I') {
                    fb.set_site(sites[k], sp.b);
                    ++nb;
                }
            }
            if (na >= 1 && nb >= 1 && na <= b && nb <= b) {
                // The residual phase must be real for both factors to stay
                // Hermitian; an odd number of non-trivial site splits leaves i.
                const int r = (((p.phase_exp() - pauli::multiply(fa, fb).phase_exp()) % 4) + 4) % 4;
                if ((r == 0 || r == 2) && lattice::is_l_local(geom, fa.support(), l) &&
                    lattice::is_l_local(geom, fb.support(), l)) {
                    out.push_back(canonical_pair(std::move(fa), std::move(fb), p, geom));
                }
            }
            std::size_t k = 0;
            while (k < w && ++digit[k] == 4) digit[k++] = 0;
            if (k == w) break;
        }
    };

    walk({}, {});

    // Off-support dressing: a site carried by both factors with the same
    // operator cancels in the product but widens the split menu, e.g.
    // Z_n = (Z_n sigma_m)(sigma_m). Each dressed site costs one weight unit
    // in both factors, so at most (2b - w) / 2 of them fit the budget. Any
    // dressed site shares a factor, hence an l-window, with some supported
    // site, which bounds the candidates.
    const std::size_t dmax = (2 * b - w) / 2;
    std::vector<std::size_t> cand;
    if (dmax > 0) {
        for (std::size_t m = 0; m < p.n_qubits(); ++m) {
            if (p.x_bit(m) || p.z_bit(m)) continue;
            for (std::size_t s : sites) {
                pauli::SupportMask span(p.n_qubits());
                span.bits.set(m);
                span.bits.set(s);
                if (lattice::is_l_local(geom, span, l)) {
                    cand.push_back(m);
                    break;
                }
            }
        }
    }
    for (std::size_t nd = 1; nd <= std::min(dmax, cand.size()); ++nd) {
        std::vector<std::size_t> idx(nd);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::vector<std::size_t> dress(nd);
        std::string ops(nd, 'X');
        for (;;) {
            for (std::size_t j = 0; j < nd; ++j) dress[j] = cand[idx[j]];
            std::vector<unsigned> op(nd, 0);
            for (;;) {
                for (std::size_t j = 0; j < nd; ++j) ops[j] = "XYZ"[op[j]];
                walk(dress, ops);
                std::size_t k = 0;
                while (k < nd && ++op[k] == 3) op[k++] = 0;
                if (k == nd) break;
            }
            std::size_t k = nd;
            while (k > 0 && idx[k - 1] == cand.size() - nd + (k - 1)) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < nd; ++j) idx[j] = idx[j - 1] + 1;
        }
    }

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<FactorizationPair> scan_group(const stab::StabilizerGroup& group,
                                          const LatticeGeometry& geom,
                                          std::size_t l, std::size_t b,
                                          std::size_t max_factors) {
    if (geom.n_sites() != group.n_sites())
        throw std::invalid_argument("scan_group: geometry size mismatch");
    if (l < 1 || b < 1 || max_factors < 1)
        throw std::invalid_argument("scan_group: budgets must be at least 1");
    std::vector<FactorizationPair> out;
    for (const auto& elem : group.enumerate_elements(max_factors, 2 * b)) {
        auto f = factorize_element(elem, geom, l, b);
        out.insert(out.end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool verify_annihilator(const stab::StabilizerGroup& group, const FactorizationPair& pair) {
    const PauliString q = pauli::multiply(pair.p1, pair.p2);
    if (!q.is_hermitian()) return false;
    return group.membership(q) == stab::Membership::in_group;
}

FactorizationPair make_pair(const PauliString& p1, const PauliString& p2,
                            const LatticeGeometry& geom) {
    if (p1.n_qubits() != p2.n_qubits() || geom.n_sites() != p1.n_qubits())
        throw std::invalid_argument("make_pair: size mismatch");
    if (!p1.is_hermitian() || !p2.is_hermitian())
        throw std::domain_error("make_pair: factors must be Hermitian");
    if (p1.has_identity_bits() || p2.has_identity_bits())
        throw std::invalid_argument("make_pair: factors must be non-identity");
    PauliString a = p1, b = p2;
    if (a.phase_exp() != 0) {
        a.set_phase_exp(0);
        b.negate();
    }
    FactorizationPair out;
    out.parent = pauli::multiply(a, b);
    if (!out.parent.is_hermitian())
        throw std::domain_error("make_pair: factors multiply to a non-Hermitian parent");
    out.l_cert = std::max(lattice::min_window(geom, a.support()),
                          lattice::min_window(geom, b.support()));
    out.b_cert = std::max(a.weight(), b.weight());
    out.p1 = std::move(a);
    out.p2 = std::move(b);
    return out;
}

}  // namespace factor
}  // namespace scarham
