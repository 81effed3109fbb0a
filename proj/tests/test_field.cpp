#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "quadsel/field.hpp"

using namespace quadsel;

namespace {

long double approx(const QuadField& F, const Element& a, int i) {
    const long double r = std::sqrt(static_cast<long double>(std::llabs(F.d())));
    const long double w = F.omega_is_half() ? (1 + (i ? -r : r)) / 2 : (i ? -r : r);
    return a.x.get_d() + a.y.get_d() * w;
}

std::vector<std::int64_t> small_fields() {
    std::vector<std::int64_t> out;
    for (std::int64_t d = -40; d <= 40; ++d)
        if (d != 0 && d != 1 && is_squarefree(d)) out.push_back(d);
    return out;
}

}  // namespace

TEST(Field, MakeExamples) {
    auto F = make_field(3);
    EXPECT_EQ(F.disc(), 12);
    EXPECT_EQ(F.r(), 2);
    EXPECT_EQ(F.s(), 0);
    auto G = make_field(-1);
    EXPECT_EQ(G.disc(), -4);
    EXPECT_EQ(G.r(), 0);
    EXPECT_EQ(G.s(), 1);
    EXPECT_THROW(make_field(12), DomainError);
    EXPECT_THROW(make_field(0), DomainError);
    EXPECT_THROW(make_field(1), DomainError);
    auto Q = QuadField::rationals();
    EXPECT_EQ(Q.r(), 1);
    EXPECT_EQ(Q.n(), 1);
}

TEST(Field, DiscriminantRule) {
    for (auto d : small_fields()) {
        auto F = make_field(d);
        EXPECT_EQ(F.disc(), mod(d, 4) == 1 ? Integer(d) : Integer(4 * d));
        EXPECT_TRUE(mod(to_i64(F.disc()), 4) == 0 || mod(to_i64(F.disc()), 4) == 1);
        EXPECT_EQ(F.n(), F.r() + 2 * F.s());
        // omega is a root of x^2 - t x + nw with disc t^2 - 4 nw = Disc
        EXPECT_EQ(F.omega_trace() * F.omega_trace() - 4 * F.omega_norm(), F.disc());
    }
}

TEST(Field, SignatureExamples) {
    auto F = make_field(10);
    EXPECT_EQ(F.signature(F.one()), (BitVector{0, 0}));
    EXPECT_EQ(F.signature(F.sqrt_d()), (BitVector{0, 1}));
    EXPECT_TRUE(make_field(-5).signature(Element(3, 1)).empty());
    EXPECT_THROW(F.signature(Element(0)), DomainError);
}

TEST(Field, SignaturesMatchFloatingPointAwayFromZero) {
    std::mt19937_64 rng(3);
    for (std::int64_t d : {2, 3, 5, 10, 13, 34, 97, 299}) {
        auto F = make_field(d);
        for (int t = 0; t < 2000; ++t) {
            Element a(Integer(static_cast<long>(rng() % 2001) - 1000), Integer(static_cast<long>(rng() % 201) - 100));
            if (a.is_zero()) continue;
            for (int i = 0; i < 2; ++i) {
                const long double v = approx(F, a, i);
                if (std::fabs(v) < 1e-6) continue;
                ASSERT_EQ(F.embedding_sign(a, i), v > 0 ? 1 : -1) << a.to_string() << " in " << F.name();
            }
        }
    }
}

TEST(Field, SignatureHomomorphism) {
    std::mt19937_64 rng(5);
    for (std::int64_t d : {2, 3, 6, 10, 21, 34}) {
        auto F = make_field(d);
        for (int t = 0; t < 1000; ++t) {
            Element a(Integer(static_cast<long>(rng() % 61) - 30), Integer(static_cast<long>(rng() % 61) - 30));
            Element b(Integer(static_cast<long>(rng() % 61) - 30), Integer(static_cast<long>(rng() % 61) - 30));
            if (a.is_zero() || b.is_zero()) continue;
            auto sa = F.signature(a), sb = F.signature(b), sab = F.signature(F.mul(a, b));
            for (int i = 0; i < 2; ++i) ASSERT_EQ(sab[i], sa[i] ^ sb[i]);
            for (bool bit : F.signature(F.sqr(a))) ASSERT_FALSE(bit);
        }
    }
}

TEST(Field, ArithmeticIdentities) {
    std::mt19937_64 rng(9);
    for (auto d : small_fields()) {
        auto F = make_field(d);
        for (int t = 0; t < 50; ++t) {
            Element a(Integer(static_cast<long>(rng() % 41) - 20), Integer(static_cast<long>(rng() % 41) - 20));
            Element b(Integer(static_cast<long>(rng() % 41) - 20), Integer(static_cast<long>(rng() % 41) - 20));
            ASSERT_EQ(F.norm(F.mul(a, b)), F.norm(a) * F.norm(b));
            ASSERT_EQ(F.mul(a, F.conj(a)), Element(F.norm(a)));
            auto r = F.sqrt(F.sqr(a));
            ASSERT_TRUE(r);
            ASSERT_TRUE(*r == a || *r == -a);
            auto [X, Y] = F.sqrt_d_coords(a);
            ASSERT_EQ(F.from_sqrt_d_coords(X, Y), a);
        }
        // 2 is a square only for d = 2, -1 only for d = -1
        EXPECT_EQ(F.is_square(Element(2)), d == 2);
        EXPECT_EQ(F.is_square(Element(-1)), d == -1);
    }
}

TEST(Mod4, Examples) {
    auto F3 = make_field(3);
    const auto& m3 = F3.mod4();
    EXPECT_EQ(m3.dim, 2);
    std::set<int> sq(m3.squares.begin(), m3.squares.end());
    EXPECT_EQ(sq, (std::set<int>{Mod4Data::residue_index(Element(1)), Mod4Data::residue_index(Element(-1))}));
    EXPECT_EQ(make_field(-1).mod4().dim, 2);
    const auto Fi = make_field(-1), F5 = make_field(-5);
    std::set<int> sqi(Fi.mod4().squares.begin(), Fi.mod4().squares.end());
    EXPECT_EQ(sqi, sq);
    std::set<int> sq5(F5.mod4().squares.begin(), F5.mod4().squares.end());
    EXPECT_EQ(sq5, sq);

    EXPECT_TRUE(is_square_mod4(F3, Element(1)));
    EXPECT_TRUE(is_square_mod4(F3, Element(-1)));
    EXPECT_FALSE(is_square_mod4(make_field(-1), Element(0, 1)));
    EXPECT_THROW(is_square_mod4(F3, Element(2)), DomainError);

    EXPECT_EQ(mod4_coords(F3, Element(1)), (BitVector{0, 0}));
    EXPECT_EQ(mod4_coords(F3, Mod4Data::residue_element(m3.basis[0])), (BitVector{1, 0}));
    EXPECT_EQ(mod4_coords(F3, Mod4Data::residue_element(m3.basis[1])), (BitVector{0, 1}));
    EXPECT_NE(mod4_coords(F3, Element(2, 1)), (BitVector{0, 0}));
    EXPECT_THROW(mod4_coords(F3, Element(1, 1)), DomainError);
}

// squares mod 4 by brute force over all odd xi with small coordinates
TEST(Mod4, SquaresMatchBruteForce) {
    for (auto d : small_fields()) {
        auto F = make_field(d);
        std::set<int> brute;
        for (long x = -6; x <= 6; ++x)
            for (long y = -6; y <= 6; ++y) {
                Element xi(x, y);
                if (mpz_odd_p(F.norm(xi).get_mpz_t())) brute.insert(Mod4Data::residue_index(F.sqr(xi)));
            }
        std::set<int> got(F.mod4().squares.begin(), F.mod4().squares.end());
        EXPECT_EQ(got, brute) << F.name();
        EXPECT_EQ(F.mod4().dim, 2) << F.name();
        EXPECT_EQ(F.mod4().unit_residues.size(), F.mod4().squares.size() * 4);
    }
    EXPECT_EQ(QuadField::rationals().mod4().dim, 1);
}

TEST(Mod4, HomomorphismOverAllResidues) {
    for (auto d : small_fields()) {
        auto F = make_field(d);
        const auto& units = F.mod4().unit_residues;
        for (int a : units)
            for (int b : units) {
                const Element ea = Mod4Data::residue_element(a), eb = Mod4Data::residue_element(b);
                const auto ca = mod4_coords(F, ea), cb = mod4_coords(F, eb), cab = mod4_coords(F, F.mul(ea, eb));
                for (int i = 0; i < 2; ++i) ASSERT_EQ(cab[i], ca[i] ^ cb[i]);
                // multiplying by a square never changes the square test
                ASSERT_EQ(is_square_mod4(F, F.mul(ea, F.sqr(eb))), is_square_mod4(F, ea));
            }
    }
}
