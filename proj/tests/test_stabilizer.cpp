#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "scarham/pauli_string.hpp"
#include "scarham/rng.hpp"
#include "scarham/stabilizer_group.hpp"

using scarham::BitVec;
using scarham::Rng;
using scarham::pauli::PauliString;
using scarham::stab::BipartitionMask;
using scarham::stab::Membership;
using scarham::stab::StabilizerGroup;
using scarham::stab::random_group;

namespace {

constexpr double kLn2 = 0.6931471805599453;

StabilizerGroup product_group(std::size_t n) {
    std::vector<PauliString> gens;
    for (std::size_t i = 0; i < n; ++i) {
        PauliString p(n);
        p.set_site(i, 'Z');
        gens.push_back(std::move(p));
    }
    return StabilizerGroup(std::move(gens), 0);
}

// Ring of X-Z-X parity checks, one centered on each site.
StabilizerGroup cluster_ring(std::size_t n) {
    std::vector<PauliString> gens;
    for (std::size_t i = 0; i < n; ++i) {
        PauliString p(n);
        p.set_site((i + n - 1) % n, 'X');
        p.set_site(i, 'Z');
        p.set_site((i + 1) % n, 'X');
        gens.push_back(std::move(p));
    }
    return StabilizerGroup(std::move(gens), 2);
}

BipartitionMask random_mask(std::size_t n, Rng& rng) {
    for (;;) {
        BitVec b(n);
        for (std::size_t i = 0; i < n; ++i) b.set(i, rng.coin());
        if (b.popcount() > 0 && b.popcount() < n) return BipartitionMask(std::move(b));
    }
}

double sup_norm_diff(const std::vector<std::complex<double>>& a,
                     const std::vector<std::complex<double>>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("construction validates and names the first offender") {
    CHECK_THROWS_AS(StabilizerGroup({}), std::invalid_argument);

    // Anticommuting pair, reported by index.
    CHECK_THROWS_WITH_AS(StabilizerGroup({PauliString::from_text("XI"),
                                          PauliString::from_text("ZI")}),
                         doctest::Contains("generators 0 and 1 anticommute"), std::invalid_argument);

    // Dependent third generator.
    CHECK_THROWS_WITH_AS(StabilizerGroup({PauliString::from_text("ZII"),
                                          PauliString::from_text("IZI"),
                                          PauliString::from_text("ZZI")}),
                         doctest::Contains("generator 2 is a product"), std::invalid_argument);

    // Wrong generator count.
    CHECK_THROWS_WITH_AS(StabilizerGroup({PauliString::from_text("ZII"),
                                          PauliString::from_text("IZI")}),
                         doctest::Contains("exactly one per site"), std::invalid_argument);

    // Width mismatch.
    CHECK_THROWS_AS(StabilizerGroup({PauliString::from_text("ZI"),
                                     PauliString::from_text("IZI")}),
                    std::invalid_argument);

    // Non-Hermitian generator (phase i).
    PauliString iz(2);
    iz.set_site(0, 'Z');
    iz.set_phase_exp(1);
    CHECK_THROWS_WITH_AS(StabilizerGroup({iz, PauliString::from_text("IZ")}),
                         doctest::Contains("not Hermitian"), std::invalid_argument);

    // A valid group passes and keeps its metadata.
    const auto g = product_group(4);
    CHECK(g.n_sites() == 4);
    CHECK(g.declared_depth() == std::size_t{0});
    CHECK(g.generators().size() == 4);
}

TEST_CASE("membership distinguishes sign and absence") {
    const auto g = product_group(6);

    CHECK(g.membership(PauliString::from_text("ZZZZZZ")) == Membership::in_group);
    CHECK(g.membership(PauliString::from_text("IZZIZZ")) == Membership::in_group);
    CHECK(g.membership(PauliString::from_text("XIIIII")) == Membership::not_in_group);
    CHECK(g.membership(PauliString::from_text("-ZIIIII")) == Membership::in_group_negated);
    CHECK(g.membership(PauliString::from_text("IIIIII")) == Membership::in_group);
    CHECK(g.membership(PauliString::from_text("-IIIIII")) == Membership::in_group_negated);

    // A flipped generator flips the verdicts.
    auto gens = g.generators();
    gens[0].negate();
    const StabilizerGroup gneg(std::move(gens));
    CHECK(gneg.membership(PauliString::from_text("ZIIIII")) == Membership::in_group_negated);
    CHECK(gneg.membership(PauliString::from_text("-ZIIIII")) == Membership::in_group);

    // Non-Hermitian queries are a domain error, size mismatches a usage error.
    PauliString iq(6);
    iq.set_site(2, 'Y');
    iq.set_phase_exp(3);
    CHECK_THROWS_AS(g.membership(iq), std::domain_error);
    CHECK_THROWS_AS(g.membership(PauliString::from_text("ZZ")), std::invalid_argument);
}

TEST_CASE("generator files load with comments and report bad lines") {
    const std::vector<std::string> lines = {
        "# parity checks",
        "",
        "  ZII   # first site",
        "IZI",
        "+IIZ",
    };
    const auto g = StabilizerGroup::from_lines(lines);
    CHECK(g.n_sites() == 3);
    CHECK(g.generators()[2] == PauliString::from_text("IIZ"));

    CHECK_THROWS_WITH_AS(StabilizerGroup::from_lines({"ZI", "IQ"}),
                         doctest::Contains("line 2"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(StabilizerGroup::from_lines({"XI", "ZI"}),
                         doctest::Contains("anticommute"), std::invalid_argument);

    const std::string path = "stab_loader_roundtrip.txt";
    {
        std::ofstream out(path);
        out << "# two-site parity\nZZ\nXX\n";
    }
    const auto h = StabilizerGroup::from_file(path);
    CHECK(h.n_sites() == 2);
    std::remove(path.c_str());
    CHECK_THROWS_AS(StabilizerGroup::from_file("no_such_generator_file.txt"), std::runtime_error);
}

TEST_CASE("state vectors match closed forms for diagonal and pair groups") {
    const auto zz = StabilizerGroup({PauliString::from_text("ZI"), PauliString::from_text("IZ")});
    const auto v = zz.build_state_vector();
    REQUIRE(v.size() == 4);
    CHECK(std::abs(v[0] - 1.0) < 1e-15);
    CHECK(std::abs(v[1]) + std::abs(v[2]) + std::abs(v[3]) < 1e-15);

    const double r = 1.0 / std::sqrt(2.0);

    // Two-site pair states for all four sign choices of <tXX, t'ZZ>.
    const auto pair = [](const char* a, const char* b) {
        return StabilizerGroup({PauliString::from_text(a), PauliString::from_text(b)})
            .build_state_vector();
    };
    auto bell = pair("XX", "ZZ");
    CHECK(std::abs(bell[0] - r) < 1e-15);
    CHECK(std::abs(bell[3] - r) < 1e-15);
    CHECK(std::abs(bell[1]) + std::abs(bell[2]) < 1e-15);

    bell = pair("-XX", "ZZ");
    CHECK(std::abs(bell[0] - r) < 1e-15);
    CHECK(std::abs(bell[3] + r) < 1e-15);

    bell = pair("XX", "-ZZ");
    CHECK(std::abs(bell[1] - r) < 1e-15);
    CHECK(std::abs(bell[2] - r) < 1e-15);
    CHECK(std::abs(bell[0]) + std::abs(bell[3]) < 1e-15);

    bell = pair("-XX", "-ZZ");
    CHECK(std::abs(bell[1] - r) < 1e-15);
    CHECK(std::abs(bell[2] + r) < 1e-15);
}

TEST_CASE("state vector agrees with the dense projector oracle") {
    const auto check_group = [](const StabilizerGroup& g) {
        const auto v = g.build_state_vector();
        const auto w = oracles::projector_state(g.generators());
        CHECK(sup_norm_diff(v, w) < 1e-12);
    };
    check_group(cluster_ring(4));
    check_group(cluster_ring(6));
    check_group(product_group(3));
    Rng rng(411);
    for (int trial = 0; trial < 25; ++trial)
        check_group(random_group(2 + rng.below(5), rng.raw()));
}

TEST_CASE("every generator fixes the synthesized state") {
    Rng rng(20240517);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.below(7);  // 2..8
        const auto g = random_group(n, rng.raw());
        const auto v = g.build_state_vector();
        const std::size_t dim = v.size();
        for (const auto& p : g.generators()) {
            const auto m = oracles::dense_pauli(p);
            double err = 0.0;
            for (std::size_t r = 0; r < dim; ++r) {
                std::complex<double> acc = 0.0;
                for (std::size_t c = 0; c < dim; ++c) acc += m[r + c * dim] * v[c];
                err = std::max(err, std::abs(acc - v[r]));
            }
            CHECK(err < 1e-12);
        }
    }
}

TEST_CASE("state synthesis respects the dense cap") {
    const auto g = product_group(6);
    CHECK_THROWS_AS(g.build_state_vector(4), scarham::resource_error);
    CHECK_NOTHROW(g.build_state_vector(6));
}

TEST_CASE("rank-based entropy reproduces closed forms") {
    // Parity-check ring: half-chain cut severs two checks.
    for (const std::size_t n : {std::size_t{6}, std::size_t{8}}) {
        const auto g = cluster_ring(n);
        CHECK(g.entanglement_entropy(BipartitionMask::first_half(n)) ==
              doctest::Approx(2.0 * kLn2).epsilon(1e-12));
        CHECK(g.entanglement_entropy_log2(BipartitionMask::first_half(n)) ==
              doctest::Approx(2.0).epsilon(1e-12));
    }

    // Diagonal product states carry no entanglement across any cut.
    const auto p = product_group(7);
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial)
        CHECK(p.entanglement_entropy(random_mask(7, rng)) == doctest::Approx(0.0));

    // A single pair state has one bit across the cut.
    const auto bell = StabilizerGroup({PauliString::from_text("XX"), PauliString::from_text("ZZ")});
    CHECK(bell.entanglement_entropy(BipartitionMask::from_sites(2, {0})) ==
          doctest::Approx(kLn2).epsilon(1e-12));

    CHECK_THROWS_AS(p.entanglement_entropy(BipartitionMask(BitVec(7))), std::invalid_argument);
    CHECK_THROWS_AS(p.entanglement_entropy(BipartitionMask(BitVec(7)).complement()),
                    std::invalid_argument);
    CHECK_THROWS_AS(p.entanglement_entropy(BipartitionMask::first_half(6)), std::invalid_argument);
}

TEST_CASE("rank entropy equals reduced-density-matrix entropy on random groups") {
    Rng rng(7781);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.below(9);  // 2..10
        const auto g = random_group(n, rng.raw());
        const auto mask = random_mask(n, rng);

        const double s_rank = g.entanglement_entropy(mask);
        CHECK(s_rank == g.entanglement_entropy(mask.complement()));

        // Trace out the larger side; the entropy is symmetric either way.
        const auto small = mask.count() * 2 <= n ? mask : mask.complement();
        const double s_rdm = oracles::rdm_entropy(g.build_state_vector(), small.bits());
        CHECK(std::abs(s_rank - s_rdm) < 1e-10);
    }
}

TEST_CASE("rank entropy equals brute-force subgroup counting") {
    Rng rng(5150);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.below(7);  // 2..8
        const auto g = random_group(n, rng.raw());
        const auto mask = random_mask(n, rng);
        const double brute = oracles::subgroup_entropy_brute(g.generators(), mask.bits());
        CHECK(std::abs(g.entanglement_entropy(mask) - brute) < 1e-12);
    }
}

TEST_CASE("element enumeration is exact at small budgets") {
    const auto g = cluster_ring(6);

    // One factor: exactly the generators.
    auto singles = g.enumerate_elements(1);
    auto gens = g.generators();
    std::sort(gens.begin(), gens.end());
    CHECK(singles == gens);

    // Nearest-neighbour products show the X-Y-Y-X pattern.
    const auto pairs = g.enumerate_elements(2, 4);
    CHECK(std::find(pairs.begin(), pairs.end(), PauliString::from_text("XYYXII")) != pairs.end());
    CHECK(std::find(pairs.begin(), pairs.end(), PauliString::from_text("IXYYXI")) != pairs.end());

    // No element of this group fits in weight 2.
    CHECK(g.enumerate_elements(2, 2).empty());

    // The diagonal group enumerates its entire non-identity content.
    const auto all = product_group(4).enumerate_elements(4);
    CHECK(all.size() == 15);
    for (std::uint64_t m = 1; m < 16; ++m) {
        PauliString q(4);
        for (std::size_t i = 0; i < 4; ++i)
            if ((m >> i) & 1u) q.set_site(i, 'Z');
        CHECK(std::find(all.begin(), all.end(), q) != all.end());
    }

    CHECK_THROWS_AS(g.enumerate_elements(0), std::invalid_argument);
}

TEST_CASE("canonical form preserves the group and the state") {
    Rng rng(62002);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.below(7);
        const auto g = random_group(n, rng.raw());
        const auto canon = g.canonicalized();
        CHECK(canon.n_sites() == n);
        CHECK(canon.declared_depth() == g.declared_depth());

        // Idempotent.
        CHECK(canon.canonicalized().generators() == canon.generators());

        // Membership verdicts survive re-generation.
        for (int q = 0; q < 8; ++q) {
            BitVec combo(n);
            for (std::size_t i = 0; i < n; ++i) combo.set(i, rng.coin());
            PauliString elem = g.subset_product(combo);
            if (rng.coin()) elem.negate();
            CHECK(g.membership(elem) == canon.membership(elem));

            PauliString noise(n);
            for (std::size_t i = 0; i < n; ++i)
                noise.set_site(i, "IXYZ"[rng.below(4)]);
            CHECK(g.membership(noise) == canon.membership(noise));
        }

        // Same unique state, same deterministic conventions.
        if (n <= 8) CHECK(sup_norm_diff(g.build_state_vector(), canon.build_state_vector()) < 1e-12);
    }
}

TEST_CASE("random groups are valid and seed-deterministic") {
    for (std::uint64_t seed : {1ull, 2ull, 77ull}) {
        const auto a = random_group(9, seed);
        const auto b = random_group(9, seed);
        CHECK(a.generators() == b.generators());
    }
    CHECK(random_group(5, 3).generators() != random_group(5, 4).generators());
    CHECK_THROWS_AS(random_group(0, 1), std::invalid_argument);

    // Single-site groups exercise the gate subset without controlled gates.
    for (std::uint64_t seed = 0; seed < 10; ++seed)
        CHECK_NOTHROW(random_group(1, seed));
}

TEST_CASE("subset products track phases exactly") {
    const auto g = cluster_ring(4);
    BitVec none(4);
    CHECK(g.subset_product(none).is_identity());

    // Product of all ring generators: X and Z parts cancel pairwise.
    BitVec all(4);
    for (std::size_t i = 0; i < 4; ++i) all.set(i);
    const auto full = g.subset_product(all);
    // Whatever the sign, the product must be in-group by construction.
    CHECK(g.membership(full) == Membership::in_group);
    CHECK_THROWS_AS(g.subset_product(BitVec(3)), std::invalid_argument);
}
