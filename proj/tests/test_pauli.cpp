#include <complex>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "scarham/pauli_string.hpp"
#include "scarham/rng.hpp"

using scarham::BitVec;
using scarham::Rng;
using scarham::pauli::PauliString;
using scarham::pauli::commutes;
using scarham::pauli::multiply;
using Cd = std::complex<double>;

namespace {

PauliString random_string(Rng& rng, std::size_t n, bool hermitian = false) {
    PauliString p(n);
    const char ops[4] = {'I', 'X', 'Y', 'Z'};
    for (std::size_t i = 0; i < n; ++i) p.set_site(i, ops[rng.below(4)]);
    p.set_phase_exp(hermitian ? static_cast<int>(2 * rng.below(2))
                              : static_cast<int>(rng.below(4)));
    return p;
}

}  // namespace

TEST_CASE("text form round-trips exactly") {
    for (const char* t : {"+IXYZ", "-ZZ", "+iXY", "-iYIZ", "+I", "-X"}) {
        const auto p = PauliString::from_text(t);
        CHECK(p.to_text() == t);
        CHECK(PauliString::from_text(p.to_text()) == p);
    }
    // Parser accepts a missing sign token and prints the canonical '+'.
    CHECK(PauliString::from_text("XZI").to_text() == "+XZI");
    CHECK(PauliString::from_text("XZI") == PauliString::from_text("+XZI"));
}

TEST_CASE("text form rejects malformed input") {
    CHECK_THROWS_AS(PauliString::from_text(""), std::invalid_argument);
    CHECK_THROWS_AS(PauliString::from_text("+"), std::invalid_argument);
    CHECK_THROWS_AS(PauliString::from_text("+i"), std::invalid_argument);
    CHECK_THROWS_AS(PauliString::from_text("XQZ"), std::invalid_argument);
    CHECK_THROWS_AS(PauliString::from_text("*XX"), std::invalid_argument);
}

TEST_CASE("identity and hermiticity basics") {
    PauliString id(3);
    CHECK(id.is_identity());
    CHECK(id.weight() == 0);
    CHECK(id.phase_exp() == 0);
    CHECK(id.is_hermitian());
    CHECK(PauliString::from_text("+iX").is_hermitian() == false);
    CHECK(PauliString::from_text("-Y").is_hermitian());
    // The (1,1) bit pair decodes to Hermitian Y directly.
    const auto y = PauliString::from_text("+Y");
    CHECK(y.x_bit(0));
    CHECK(y.z_bit(0));
    CHECK(y.phase_exp() == 0);
}

TEST_CASE("(-XX)(YY) = +ZZ") {
    const auto a = PauliString::from_text("-XX");
    const auto b = PauliString::from_text("+YY");
    CHECK(multiply(a, b) == PauliString::from_text("+ZZ"));
}

TEST_CASE("any Hermitian string squares to the identity") {
    Rng rng(11);
    for (int k = 0; k < 50; ++k) {
        const auto p = random_string(rng, 5, /*hermitian=*/true);
        const auto sq = multiply(p, p);
        CHECK(sq == PauliString(5));
    }
}

TEST_CASE("size mismatch raises") {
    CHECK_THROWS_AS(multiply(PauliString(2), PauliString(3)), std::invalid_argument);
    CHECK_THROWS_AS(commutes(PauliString(2), PauliString(3)), std::invalid_argument);
}

TEST_CASE("weight and b-body checks") {
    const auto g = PauliString::from_text("+XZXII");  // X_{n-1} Z_n X_{n+1} at n=1
    CHECK(g.weight() == 3);
    CHECK(g.is_b_body(3));
    CHECK(!g.is_b_body(2));
    CHECK(PauliString(4).weight() == 0);
    const auto vertex = PauliString::from_text("+XXIIXXIIIIIIIIII");  // 4x4 torus block
    CHECK(vertex.weight() == 4);
    const auto sup = g.support();
    CHECK(sup.count() == 3);
    CHECK(sup.test(0));
    CHECK(sup.test(1));
    CHECK(sup.test(2));
    CHECK(!sup.test(3));
}

TEST_CASE("to_dense conventions") {
    const auto z = PauliString::from_text("+Z").to_dense();
    CHECK(z[0] == Cd{1, 0});   // sigma^Z |+1> = +|+1>
    CHECK(z[3] == Cd{-1, 0});  // sigma^Z |-1> = -|-1>
    CHECK(z[1] == Cd{0, 0});
    CHECK(z[2] == Cd{0, 0});

    const auto id3 = PauliString(3).to_dense();
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            CHECK(id3[i + 8 * j] == (i == j ? Cd{1, 0} : Cd{0, 0}));

    // X on site 0, Y on site 1: hand-built Kronecker with site 0 on the low bit.
    const auto xy = PauliString::from_text("+XY").to_dense();
    const auto hand = oracles::dense_pauli(PauliString::from_text("+XY"));
    CHECK(oracles::max_abs(oracles::matsub(xy, hand)) == 0.0);
    CHECK(xy[1 + 4 * 0] == Cd{0, 0});
    CHECK(xy[3 + 4 * 0] == Cd{0, 1});   // <11|XY|00> = i
    CHECK(xy[0 + 4 * 3] == Cd{0, -1});  // <00|XY|11> = -i
}

TEST_CASE("to_dense respects the cap") {
    CHECK_THROWS_AS(PauliString(15).to_dense(), scarham::resource_error);
    CHECK_NOTHROW(PauliString(4).to_dense(4));
    CHECK_THROWS_AS(PauliString(5).to_dense(4), scarham::resource_error);
}

TEST_CASE("multiply matches the dense oracle on 200 random 3-qubit pairs") {
    Rng rng(202);
    for (int k = 0; k < 200; ++k) {
        const auto a = random_string(rng, 3);
        const auto b = random_string(rng, 3);
        const auto prod = multiply(a, b);
        const auto lhs = oracles::dense_pauli(prod);
        const auto rhs = oracles::matmul(oracles::dense_pauli(a), oracles::dense_pauli(b), 8);
        CHECK(oracles::max_abs(oracles::matsub(lhs, rhs)) < 1e-12);
    }
}

TEST_CASE("commutes matches the dense commutator oracle") {
    Rng rng(303);
    for (int k = 0; k < 200; ++k) {
        const auto a = random_string(rng, 3);
        const auto b = random_string(rng, 3);
        const auto ab = oracles::matmul(oracles::dense_pauli(a), oracles::dense_pauli(b), 8);
        const auto ba = oracles::matmul(oracles::dense_pauli(b), oracles::dense_pauli(a), 8);
        const bool dense_commute = oracles::max_abs(oracles::matsub(ab, ba)) < 1e-12;
        CHECK(commutes(a, b) == dense_commute);
    }
    CHECK(!commutes(PauliString::from_text("+X"), PauliString::from_text("+Z")));
}

TEST_CASE("commutation is equivalent to equal products in both orders") {
    Rng rng(404);
    for (int k = 0; k < 200; ++k) {
        const auto a = random_string(rng, 4);
        const auto b = random_string(rng, 4);
        CHECK(commutes(a, b) == (multiply(a, b) == multiply(b, a)));
    }
}

TEST_CASE("multiply is associative on random triples") {
    Rng rng(505);
    for (int k = 0; k < 200; ++k) {
        const auto a = random_string(rng, 5);
        const auto b = random_string(rng, 5);
        const auto c = random_string(rng, 5);
        CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    }
}

TEST_CASE("product of Hermitians has a well-defined i^k phase") {
    Rng rng(606);
    for (int k = 0; k < 100; ++k) {
        const auto a = random_string(rng, 4, true);
        const auto b = random_string(rng, 4, true);
        const int g = multiply(a, b).phase_exp();
        CHECK(g >= 0);
        CHECK(g < 4);
        if (commutes(a, b)) {
            // Commuting Hermitian strings multiply to a Hermitian string.
            CHECK(multiply(a, b).is_hermitian());
        }
    }
}

TEST_CASE("apply_to_basis agrees with the dense matrix") {
    Rng rng(707);
    for (int k = 0; k < 100; ++k) {
        const auto p = random_string(rng, 3);
        const auto m = oracles::dense_pauli(p);
        for (std::uint64_t s = 0; s < 8; ++s) {
            const auto [t, amp] = p.apply_to_basis(s);
            for (std::uint64_t r = 0; r < 8; ++r) {
                const Cd expect = (r == t) ? amp : Cd{0, 0};
                CHECK(std::abs(m[r + 8 * s] - expect) < 1e-15);
            }
        }
    }
}

TEST_CASE("multi-word strings behave identically across the word boundary") {
    PauliString p(70);
    p.set_site(0, 'X');
    p.set_site(63, 'Y');
    p.set_site(64, 'Z');
    p.set_site(69, 'Y');
    CHECK(p.weight() == 4);
    CHECK(p.to_text().size() == 71);
    const auto sq = multiply(p, p);
    CHECK(sq == PauliString(70));
    PauliString q(70);
    q.set_site(63, 'Z');
    CHECK(!commutes(p, q));
    q.set_site(64, 'X');
    CHECK(commutes(p, q));
    CHECK(PauliString::from_text(p.to_text()) == p);
}
