#include "scarham/pauli_string.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace scarham::pauli {

namespace {

// Site code: x*2 + z, so I=0, Z=1, X=2, Y=3.
constexpr int site_code(bool x, bool z) { return (x ? 2 : 0) + (z ? 1 : 0); }

constexpr char kCodeName[4] = {'I', 'Z', 'X', 'Y'};

// Phase exponent of the single-site product a*b in the i^{xz} X^x Z^z decode
// convention: a*b = i^{g} c with c the XOR of the bit pairs.
// Derivation: i^{ax az} i^{bx bz} (-1)^{az bx} X^{ax^bx} Z^{az^bz}
//           = i^{g} i^{cx cz} X^{cx} Z^{cz}.
constexpr std::array<std::array<int, 4>, 4> make_phase_table() {
    std::array<std::array<int, 4>, 4> t{};
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const int ax = a >> 1, az = a & 1;
            const int bx = b >> 1, bz = b & 1;
            const int cx = ax ^ bx, cz = az ^ bz;
            t[a][b] = ((ax * az + bx * bz + 2 * az * bx - cx * cz) % 4 + 4) % 4;
        }
    }
    return t;
}

constexpr auto kPhaseTable = make_phase_table();

constexpr std::complex<double> kPowersOfI[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

}  // namespace

PauliString::PauliString(std::size_t n, BitVec x, BitVec z, int phase_exp)
    : n_(n), x_(std::move(x)), z_(std::move(z)) {
    if (x_.size() != n_ || z_.size() != n_)
        throw std::invalid_argument("PauliString: bit-vector length mismatch");
    set_phase_exp(phase_exp);
}

PauliString PauliString::from_text(std::string_view text) {
    int phase = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        const bool neg = text[0] == '-';
        text.remove_prefix(1);
        bool imag = !text.empty() && text[0] == 'i';
        if (imag) text.remove_prefix(1);
        phase = imag ? (neg ? 3 : 1) : (neg ? 2 : 0);
    }
    if (text.empty())
        throw std::invalid_argument("PauliString: empty operator body");
    PauliString p(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) p.set_site(i, text[i]);
    p.set_phase_exp(phase);
    return p;
}

std::string PauliString::to_text() const {
    static const char* kPhaseToken[4] = {"+", "+i", "-", "-i"};
    std::string s = kPhaseToken[phase_];
    s.reserve(s.size() + n_);
    for (std::size_t i = 0; i < n_; ++i) s.push_back(site_op(i));
    return s;
}

char PauliString::site_op(std::size_t i) const {
    return kCodeName[site_code(x_.test(i), z_.test(i))];
}

void PauliString::set_site(std::size_t i, char op) {
    switch (op) {
        case 'I': x_.set(i, false); z_.set(i, false); break;
        case 'X': x_.set(i, true);  z_.set(i, false); break;
        case 'Y': x_.set(i, true);  z_.set(i, true);  break;
        case 'Z': x_.set(i, false); z_.set(i, true);  break;
        default:
            throw std::invalid_argument(std::string("PauliString: invalid site character '") + op + "'");
    }
}

SupportMask PauliString::support() const {
    SupportMask m(n_);
    m.bits = x_ | z_;
    return m;
}

bool PauliString::is_real_in_z_basis() const {
    // Basis amplitudes carry i^{phase_exp + #Y}; real iff that power is even.
    return ((phase_ + y_count()) % 2) == 0;
}

PauliString::BasisImage PauliString::apply_to_basis(std::uint64_t s) const {
    if (n_ > 64)
        throw std::invalid_argument("PauliString: basis application limited to 64 qubits");
    const std::uint64_t x = x_.low_word();
    const std::uint64_t z = z_.low_word();
    const int sign = std::popcount(s & z) & 1 ? 2 : 0;
    const int k = static_cast<int>((phase_ + y_count() + sign) % 4);
    return {s ^ x, kPowersOfI[k]};
}

std::vector<std::complex<double>> PauliString::to_dense(std::size_t dense_cap) const {
    if (n_ > dense_cap)
        throw resource_error("PauliString::to_dense: qubit count exceeds dense cap");
    const std::size_t dim = std::size_t{1} << n_;
    std::vector<std::complex<double>> m(dim * dim, 0.0);
    for (std::uint64_t s = 0; s < dim; ++s) {
        const auto [t, amp] = apply_to_basis(s);
        m[t + s * dim] = amp;
    }
    return m;
}

std::strong_ordering PauliString::operator<=>(const PauliString& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    if (auto c = x_ <=> o.x_; c != 0) return c;
    if (auto c = z_ <=> o.z_; c != 0) return c;
    return phase_ <=> o.phase_;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::invalid_argument("multiply: operand sizes differ");
    const std::size_t n = a.n_qubits();
    PauliString r(n);
    int g = a.phase_exp() + b.phase_exp();
    const auto& ax = a.x_bits().words();
    const auto& az = a.z_bits().words();
    const auto& bx = b.x_bits().words();
    const auto& bz = b.z_bits().words();
    for (std::size_t w = 0; w < ax.size(); ++w) {
        const std::uint64_t busy = ax[w] | az[w] | bx[w] | bz[w];
        if (!busy) continue;
        const std::size_t base = w * 64;
        const std::size_t hi = std::min<std::size_t>(64, n - base);
        for (std::size_t j = 0; j < hi; ++j) {
            if (!((busy >> j) & 1u)) continue;
            const int ca = site_code((ax[w] >> j) & 1u, (az[w] >> j) & 1u);
            const int cb = site_code((bx[w] >> j) & 1u, (bz[w] >> j) & 1u);
            g += kPhaseTable[ca][cb];
        }
    }
    return PauliString(n, a.x_bits() ^ b.x_bits(), a.z_bits() ^ b.z_bits(), g);
}

bool commutes(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::invalid_argument("commutes: operand sizes differ");
    return !(and_parity(a.x_bits(), b.z_bits()) ^ and_parity(a.z_bits(), b.x_bits()));
}

}  // namespace scarham::pauli
