#include "scarham/stabilizer_group.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "scarham/rng.hpp"

namespace scarham {
namespace stab {

namespace {

BitVec tableau_row(const PauliString& p) {
    const std::size_t n = p.n_qubits();
    BitVec r(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (p.x_bit(i)) r.set(i);
        if (p.z_bit(i)) r.set(n + i);
    }
    return r;
}

}  // namespace

BipartitionMask BipartitionMask::first_half(std::size_t n) {
    BitVec b(n);
    for (std::size_t i = 0; i < n / 2; ++i) b.set(i);
    return BipartitionMask(std::move(b));
}

BipartitionMask BipartitionMask::from_sites(std::size_t n, const std::vector<std::size_t>& sites) {
    BitVec b(n);
    for (std::size_t s : sites) b.set(s);
    return BipartitionMask(std::move(b));
}

BipartitionMask BipartitionMask::complement() const {
    BitVec b(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i) b.set(i, !bits_.test(i));
    return BipartitionMask(std::move(b));
}

StabilizerGroup::StabilizerGroup(std::vector<PauliString> generators,
                                 std::optional<std::size_t> declared_depth)
    : gens_(std::move(generators)), depth_(declared_depth) {
    if (gens_.empty())
        throw std::invalid_argument("stabilizer group: no generators given");
    n_ = gens_.front().n_qubits();
    for (std::size_t k = 0; k < gens_.size(); ++k) {
        if (gens_[k].n_qubits() != n_)
            throw std::invalid_argument("stabilizer group: generator " + std::to_string(k) +
                                        " acts on " + std::to_string(gens_[k].n_qubits()) +
                                        " sites, expected " + std::to_string(n_));
    }
    if (gens_.size() != n_)
        throw std::invalid_argument("stabilizer group: " + std::to_string(gens_.size()) +
                                    " generators on " + std::to_string(n_) +
                                    " sites; need exactly one per site");
    for (std::size_t k = 0; k < gens_.size(); ++k) {
        if (!gens_[k].is_hermitian())
            throw std::invalid_argument("stabilizer group: generator " + std::to_string(k) +
                                        " (" + gens_[k].to_text() + ") is not Hermitian");
    }
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        for (std::size_t j = i + 1; j < gens_.size(); ++j) {
            if (!pauli::commutes(gens_[i], gens_[j]))
                throw std::invalid_argument("stabilizer group: generators " + std::to_string(i) +
                                            " and " + std::to_string(j) + " anticommute");
        }
    }
    std::vector<BitVec> rows;
    rows.reserve(gens_.size());
    for (const auto& g : gens_) rows.push_back(tableau_row(g));
    tab_.emplace(std::move(rows), 2 * n_);
    if (tab_->rank() != n_) {
        // The first kernel combination's top index is the first dependent row.
        std::size_t dep = 0;
        const BitVec& c = tab_->kernel_basis().front();
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c.test(i)) dep = i;
        throw std::invalid_argument("stabilizer group: generator " + std::to_string(dep) +
                                    " is a product of earlier generators");
    }
}

StabilizerGroup StabilizerGroup::from_lines(const std::vector<std::string>& lines) {
    std::vector<PauliString> gens;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string s = lines[ln];
        if (auto h = s.find('#'); h != std::string::npos) s.erase(h);
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        const auto e = s.find_last_not_of(" \t\r\n");
        s = s.substr(b, e - b + 1);
        try {
            gens.push_back(PauliString::from_text(s));
        } catch (const std::invalid_argument& err) {
            throw std::invalid_argument("line " + std::to_string(ln + 1) + ": " + err.what());
        }
    }
    return StabilizerGroup(std::move(gens));
}

StabilizerGroup StabilizerGroup::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open generator file: " + path);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return from_lines(lines);
}

PauliString StabilizerGroup::subset_product(const BitVec& combo) const {
    if (combo.size() != gens_.size())
        throw std::invalid_argument("subset_product: combination width mismatch");
    PauliString p(n_);
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (combo.test(i)) p = pauli::multiply(p, gens_[i]);
    return p;
}

Membership StabilizerGroup::membership(const PauliString& p) const {
    if (p.n_qubits() != n_)
        throw std::invalid_argument("membership: string acts on " + std::to_string(p.n_qubits()) +
                                    " sites, group has " + std::to_string(n_));
    if (!p.is_hermitian())
        throw std::domain_error("membership: query string is not Hermitian");
    const auto combo = tab_->solve(tableau_row(p));
    if (!combo) return Membership::not_in_group;
    // Bits now agree; the exact phase decides the sign of the match.
    const PauliString q = subset_product(*combo);
    return q.phase_exp() == p.phase_exp() ? Membership::in_group : Membership::in_group_negated;
}

std::vector<std::complex<double>> StabilizerGroup::build_state_vector(std::size_t cap) const {
    if (n_ > cap || n_ > 64)
        throw resource_error("build_state_vector: " + std::to_string(n_) +
                             " sites exceeds the dense cap of " + std::to_string(std::min<std::size_t>(cap, 64)));
    const std::uint64_t dim = std::uint64_t{1} << n_;

    // The Z-type subgroup (products whose X parts cancel) acts diagonally and
    // decides which basis states survive the projector product. Solve for it
    // once, then take the first surviving index as the reference state.
    std::vector<BitVec> xrows;
    xrows.reserve(gens_.size());
    for (const auto& g : gens_) xrows.push_back(g.x_bits());
    const Gf2Solver xsolve(std::move(xrows), n_);
    struct DiagConstraint {
        std::uint64_t z_mask;
        unsigned parity;
    };
    std::vector<DiagConstraint> cons;
    for (const BitVec& c : xsolve.kernel_basis()) {
        const PauliString zeta = subset_product(c);
        cons.push_back({zeta.z_bits().low_word(), zeta.phase_exp() == 2 ? 1u : 0u});
    }
    std::uint64_t ref = dim;
    for (std::uint64_t s = 0; s < dim; ++s) {
        bool ok = true;
        for (const auto& k : cons) {
            if ((static_cast<unsigned>(std::popcount(s & k.z_mask)) & 1u) != k.parity) {
                ok = false;
                break;
            }
        }
        if (ok) {
            ref = s;
            break;
        }
    }
    if (ref == dim)
        throw std::logic_error("build_state_vector: no basis state survives projection");

    std::vector<std::complex<double>> v(dim, 0.0);
    v[ref] = 1.0;
    std::vector<std::complex<double>> w(dim);
    for (const auto& g : gens_) {
        std::fill(w.begin(), w.end(), std::complex<double>{0.0, 0.0});
        for (std::uint64_t s = 0; s < dim; ++s) {
            if (v[s] == 0.0) continue;
            const auto img = g.apply_to_basis(s);
            w[img.state] += img.amp * v[s];
        }
        for (std::uint64_t s = 0; s < dim; ++s) v[s] = 0.5 * (v[s] + w[s]);
    }
    double nrm2 = 0.0;
    for (const auto& a : v) nrm2 += std::norm(a);
    if (nrm2 <= 0.0)
        throw std::logic_error("build_state_vector: projection annihilated the reference state");
    const double inv = 1.0 / std::sqrt(nrm2);
    for (auto& a : v) a *= inv;
    for (const auto& a : v) {
        if (std::abs(a) > 1e-12) {
            const std::complex<double> rot = std::conj(a) / std::abs(a);
            for (auto& b : v) b *= rot;
            break;
        }
    }
    return v;
}

double StabilizerGroup::entanglement_entropy(const BipartitionMask& mask) const {
    if (mask.n_sites() != n_)
        throw std::invalid_argument("entanglement_entropy: mask width mismatch");
    const std::size_t a = mask.count();
    if (a == 0 || a == n_)
        throw std::invalid_argument("entanglement_entropy: mask must be neither empty nor full");
    const auto restricted_rank = [&](const BitVec& sites) {
        std::vector<BitVec> rows;
        rows.reserve(gens_.size());
        for (const auto& g : gens_) {
            BitVec r(2 * n_);
            for (std::size_t i = 0; i < n_; ++i) {
                if (!sites.test(i)) continue;
                if (g.x_bit(i)) r.set(i);
                if (g.z_bit(i)) r.set(n_ + i);
            }
            rows.push_back(std::move(r));
        }
        return gf2_rank(rows);
    };
    const std::size_t ra = restricted_rank(mask.bits());
    const std::size_t rb = restricted_rank(mask.complement().bits());
    // |S_A| = 2^(N - rb), |S_B| = 2^(N - ra), so the cross part has
    // log2 size ra + rb - N and the entropy is half its logarithm.
    return 0.5 * (static_cast<double>(ra + rb) - static_cast<double>(n_)) * std::log(2.0);
}

double StabilizerGroup::entanglement_entropy_log2(const BipartitionMask& mask) const {
    return entanglement_entropy(mask) / std::log(2.0);
}

std::vector<PauliString> StabilizerGroup::enumerate_elements(std::size_t max_factors,
                                                             std::size_t max_weight) const {
    if (max_factors < 1)
        throw std::invalid_argument("enumerate_elements: max_factors must be at least 1");
    max_factors = std::min(max_factors, gens_.size());

    // Keep the subset walk bounded; the search never needs more than a few
    // factors, so a blowup here is a caller bug, not a workload.
    double total = 0.0;
    {
        double c = 1.0;
        for (std::size_t k = 1; k <= max_factors; ++k) {
            c *= static_cast<double>(gens_.size() - k + 1) / static_cast<double>(k);
            total += c;
        }
    }
    if (total > double{1 << 22})
        throw resource_error("enumerate_elements: subset count exceeds the search budget");

    std::vector<PauliString> out;
    std::vector<std::size_t> idx;
    const auto emit = [&]() {
        PauliString p(n_);
        for (std::size_t i : idx) p = pauli::multiply(p, gens_[i]);
        if (p.has_identity_bits()) return;
        if (max_weight > 0 && p.weight() > max_weight) return;
        out.push_back(std::move(p));
    };
    const auto walk = [&](auto&& self, std::size_t next) -> void {
        if (!idx.empty()) emit();
        if (idx.size() == max_factors) return;
        for (std::size_t i = next; i < gens_.size(); ++i) {
            idx.push_back(i);
            self(self, i + 1);
            idx.pop_back();
        }
    };
    walk(walk, 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

StabilizerGroup StabilizerGroup::canonicalized() const {
    std::vector<PauliString> rows = gens_;
    const auto bit_at = [&](const PauliString& p, std::size_t col) {
        return col < n_ ? p.x_bit(col) : p.z_bit(col - n_);
    };
    std::size_t r = 0;
    for (std::size_t col = 0; col < 2 * n_ && r < rows.size(); ++col) {
        std::size_t piv = rows.size();
        for (std::size_t q = r; q < rows.size(); ++q) {
            if (bit_at(rows[q], col)) {
                piv = q;
                break;
            }
        }
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t q = 0; q < rows.size(); ++q) {
            if (q != r && bit_at(rows[q], col)) rows[q] = pauli::multiply(rows[q], rows[r]);
        }
        ++r;
    }
    return StabilizerGroup(std::move(rows), depth_);
}

StabilizerGroup random_group(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("random_group: need at least one site");
    std::vector<PauliString> gens;
    gens.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        PauliString p(n);
        p.set_site(i, 'Z');
        gens.push_back(std::move(p));
    }
    Rng rng(seed);
    const std::size_t steps = 24 * n;
    for (std::size_t step = 0; step < steps; ++step) {
        switch (rng.below(n >= 2 ? 4 : 3)) {
            case 0: {  // Hadamard at a: X <-> Z, Y -> -Y
                const std::size_t a = rng.below(n);
                for (auto& g : gens) {
                    const bool x = g.x_bit(a), z = g.z_bit(a);
                    if (x && z) g.negate();
                    g.set_xz(a, z, x);
                }
                break;
            }
            case 1: {  // phase gate at a: X -> Y -> -X, Z fixed
                const std::size_t a = rng.below(n);
                for (auto& g : gens) {
                    const bool x = g.x_bit(a), z = g.z_bit(a);
                    if (x && z) g.negate();
                    g.set_xz(a, x, z ^ x);
                }
                break;
            }
            case 2: {  // negate one generator
                gens[rng.below(n)].negate();
                break;
            }
            case 3: {  // controlled-NOT a -> b
                const std::size_t a = rng.below(n);
                std::size_t b = rng.below(n - 1);
                if (b >= a) ++b;
                for (auto& g : gens) {
                    const bool xa = g.x_bit(a), za = g.z_bit(a);
                    const bool xb = g.x_bit(b), zb = g.z_bit(b);
                    if (xa && zb && xb == za) g.negate();
                    g.set_xz(b, xb ^ xa, zb);
                    g.set_xz(a, xa, za ^ zb);
                }
                break;
            }
        }
    }
    return StabilizerGroup(std::move(gens));
}

}  // namespace stab
}  // namespace scarham
