#include "scarham/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "scarham/rng.hpp"

namespace scarham {
namespace ham {

CouplingScheme CouplingScheme::constant(double value) {
    CouplingScheme s;
    s.kind_ = Kind::constant;
    s.value_ = value;
    return s;
}

CouplingScheme CouplingScheme::per_term_table(std::vector<double> table) {
    CouplingScheme s;
    s.kind_ = Kind::table;
    s.table_ = std::move(table);
    return s;
}

CouplingScheme CouplingScheme::random_uniform(double lo, double hi, std::uint64_t seed) {
    if (!(lo <= hi)) throw std::invalid_argument("random_uniform: empty range");
    CouplingScheme s;
    s.kind_ = Kind::random;
    s.value_ = lo;
    s.hi_ = hi;
    s.seed_ = seed;
    return s;
}

CouplingScheme CouplingScheme::alternating(double base, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("alternating: sign must be +1 or -1");
    CouplingScheme s;
    s.kind_ = Kind::alternating;
    s.value_ = base;
    s.sign_ = sign;
    return s;
}

std::vector<double> CouplingScheme::resolve(std::size_t n_pairs,
                                            const std::vector<std::size_t>* site_labels) const {
    switch (kind_) {
        case Kind::constant:
            return std::vector<double>(n_pairs, value_);
        case Kind::table:
            if (table_.size() != n_pairs)
                throw std::invalid_argument("coupling table has " + std::to_string(table_.size()) +
                                            " entries for " + std::to_string(n_pairs) + " pairs");
            return table_;
        case Kind::random: {
            Rng rng(seed_);
            std::vector<double> out(n_pairs);
            for (auto& v : out) v = rng.uniform(value_, hi_);
            return out;
        }
        case Kind::alternating: {
            if (site_labels == nullptr)
                throw std::invalid_argument("alternating coupling needs the pairs' site labels");
            if (site_labels->size() != n_pairs)
                throw std::invalid_argument("alternating coupling: label count mismatch");
            std::vector<double> out(n_pairs);
            for (std::size_t i = 0; i < n_pairs; ++i)
                out[i] = ((*site_labels)[i] % 2 == 0) ? value_ : value_ * sign_;
            return out;
        }
    }
    throw std::logic_error("CouplingScheme: unknown kind");
}

void HamiltonianTerms::normalize(std::vector<Term> raw) {
    std::map<PauliString, double> acc;
    for (auto& t : raw) {
        if (!std::isfinite(t.coeff))
            throw std::invalid_argument("hamiltonian: non-finite coefficient");
        if (t.op.n_qubits() != n_)
            throw std::invalid_argument("hamiltonian: term width mismatch");
        if (!t.op.is_hermitian())
            throw std::invalid_argument("hamiltonian: non-Hermitian term " + t.op.to_text());
        if (t.op.has_identity_bits())
            throw std::invalid_argument("hamiltonian: identity term breaks tracelessness");
        double c = t.coeff;
        PauliString op = std::move(t.op);
        if (op.phase_exp() == 2) {
            c = -c;
            op.set_phase_exp(0);
        }
        acc[std::move(op)] += c;
    }
    terms_.clear();
    for (auto& [op, c] : acc) {
        if (std::abs(c) <= kMergeTol) continue;
        terms_.push_back({c, op});
    }
}

HamiltonianTerms HamiltonianTerms::from_raw(std::size_t n, const std::vector<Term>& raw) {
    HamiltonianTerms h(n);
    h.normalize(raw);
    return h;
}

double HamiltonianTerms::coupling_l1() const {
    double s = 0.0;
    for (const auto& t : terms_) s += std::abs(t.coeff);
    return s;
}

std::string HamiltonianTerms::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : terms_)
        arr.push_back({{"coeff", t.coeff}, {"pauli_text", t.op.to_text()}});
    return arr.dump(2);
}

HamiltonianTerms HamiltonianTerms::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("hamiltonian json: expected a list");
    std::vector<Term> raw;
    std::size_t n = 0;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("coeff") || !e.contains("pauli_text"))
            throw std::invalid_argument("hamiltonian json: entries need coeff and pauli_text");
        if (!e["coeff"].is_number())
            throw std::invalid_argument("hamiltonian json: coeff must be a number");
        if (!e["pauli_text"].is_string())
            throw std::invalid_argument("hamiltonian json: pauli_text must be a string");
        Term t{e["coeff"].get<double>(),
               PauliString::from_text(e["pauli_text"].get<std::string>())};
        if (raw.empty()) n = t.op.n_qubits();
        raw.push_back(std::move(t));
    }
    return from_raw(n, raw);
}

HamiltonianTerms assemble(const std::vector<FactorizationPair>& pairs,
                          const CouplingScheme& scheme,
                          const std::vector<std::size_t>* site_labels) {
    const auto js = scheme.resolve(pairs.size(), site_labels);
    const std::size_t n = pairs.empty() ? 0 : pairs.front().p1.n_qubits();
    for (const auto& p : pairs)
        if (p.p1.n_qubits() != n || p.p2.n_qubits() != n)
            throw std::invalid_argument("assemble: pairs act on different qubit counts");
    HamiltonianTerms h(n);
    std::vector<Term> raw;
    raw.reserve(2 * pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        raw.push_back({js[i], pairs[i].p1});
        raw.push_back({-js[i], pairs[i].p2});
        h.sources_.push_back({js[i], pairs[i]});
    }
    h.normalize(std::move(raw));
    return h;
}

HamiltonianTerms merged(const HamiltonianTerms& a, const HamiltonianTerms& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("merged: qubit count mismatch");
    HamiltonianTerms h(a.n_);
    std::vector<Term> raw = a.terms_;
    raw.insert(raw.end(), b.terms_.begin(), b.terms_.end());
    h.sources_ = a.sources_;
    h.sources_.insert(h.sources_.end(), b.sources_.begin(), b.sources_.end());
    h.normalize(std::move(raw));
    return h;
}

HamiltonianTerms scaled(const HamiltonianTerms& h, double factor) {
    HamiltonianTerms out(h.n_);
    std::vector<Term> raw = h.terms_;
    for (auto& t : raw) t.coeff *= factor;
    out.sources_ = h.sources_;
    for (auto& s : out.sources_) s.coeff *= factor;
    out.normalize(std::move(raw));
    return out;
}

HamiltonianTerms conjugated(const HamiltonianTerms& h) {
    HamiltonianTerms out(h.n_);
    std::vector<Term> raw = h.terms_;
    for (auto& t : raw)
        if (t.op.y_count() % 2 == 1) t.coeff = -t.coeff;
    out.normalize(std::move(raw));
    return out;
}

HamiltonianTerms mapped(const HamiltonianTerms& h, const lattice::SiteMap& map) {
    HamiltonianTerms out(h.n_);
    std::vector<Term> raw;
    raw.reserve(h.terms_.size());
    for (const auto& t : h.terms_) raw.push_back({t.coeff, lattice::apply_site_map(map, t.op)});
    out.normalize(std::move(raw));
    return out;
}

HamiltonianTerms restrict_to_support(const HamiltonianTerms& h, const stab::BipartitionMask& mask) {
    if (mask.n_sites() != h.n_)
        throw std::invalid_argument("restrict_to_support: mask width mismatch");
    HamiltonianTerms out(h.n_);
    std::vector<Term> raw;
    for (const auto& t : h.terms_) {
        bool inside = true;
        for (std::size_t i = 0; i < h.n_ && inside; ++i)
            if (!mask.test(i) && t.op.site_op(i) != 'I') inside = false;
        if (inside) raw.push_back(t);
    }
    out.normalize(std::move(raw));
    return out;
}

ScarCertificate verify_scar(const HamiltonianTerms& h, const stab::StabilizerGroup& group) {
    if (!h.empty() && h.n_qubits() != group.n_sites())
        throw std::invalid_argument("verify_scar: size mismatch");
    ScarCertificate cert;
    bool any_fail = false;
    std::vector<Term> replay;
    replay.reserve(2 * h.sources().size());
    for (const auto& s : h.sources()) {
        const bool ok = factor::verify_annihilator(group, s.pair);
        any_fail = any_fail || !ok;
        cert.entries.push_back(
            {ok ? CertStatus::certified : CertStatus::failed, s.pair.parent.to_text()});
        replay.push_back({s.coeff, s.pair.p1});
        replay.push_back({-s.coeff, s.pair.p2});
    }
    // Coefficient weight the sources do not account for lacks provenance.
    const auto expected = HamiltonianTerms::from_raw(h.n_qubits(), replay);
    bool any_orphan = false;
    const auto orphan = [&](const Term& t) {
        any_orphan = true;
        cert.entries.push_back({CertStatus::unverifiable, t.op.to_text()});
    };
    auto ia = h.terms().begin();
    auto ib = expected.terms().begin();
    const auto ea = h.terms().end();
    const auto eb = expected.terms().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->op < ib->op)) {
            orphan(*ia++);
        } else if (ia == ea || ib->op < ia->op) {
            orphan(*ib++);
        } else {
            if (std::abs(ia->coeff - ib->coeff) > kMergeTol) orphan(*ia);
            ++ia;
            ++ib;
        }
    }
    cert.all_pass = !any_fail;
    cert.fully_certified = !any_fail && !any_orphan;
    return cert;
}

bool term_multiset_equal(const HamiltonianTerms& a, const HamiltonianTerms& b, double tol) {
    if (a.n_qubits() != b.n_qubits()) return false;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    const auto ea = a.terms().end();
    const auto eb = b.terms().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->op < ib->op)) {
            if (std::abs(ia->coeff) > tol) return false;
            ++ia;
        } else if (ia == ea || ib->op < ia->op) {
            if (std::abs(ib->coeff) > tol) return false;
            ++ib;
        } else {
            if (std::abs(ia->coeff - ib->coeff) > tol) return false;
            ++ia;
            ++ib;
        }
    }
    return true;
}

std::vector<std::complex<double>> apply(const HamiltonianTerms& h,
                                        const std::vector<std::complex<double>>& x) {
    if (h.n_qubits() > 64) throw resource_error("apply: too many sites for basis indexing");
    const std::uint64_t dim = std::uint64_t{1} << h.n_qubits();
    if (x.size() != dim) throw std::invalid_argument("apply: vector dimension mismatch");
    std::vector<std::complex<double>> y(dim, 0.0);
    for (const auto& t : h.terms()) {
        for (std::uint64_t s = 0; s < dim; ++s) {
            if (x[s] == 0.0) continue;
            const auto img = t.op.apply_to_basis(s);
            y[img.state] += t.coeff * img.amp * x[s];
        }
    }
    return y;
}

double residual_norm(const HamiltonianTerms& h, const std::vector<std::complex<double>>& state) {
    const auto y = apply(h, state);
    double s = 0.0;
    for (const auto& v : y) s += std::norm(v);
    return std::sqrt(s);
}

}  // namespace ham
}  // namespace scarham
