#include <gtest/gtest.h>

#include <random>

#include "quadsel/ideals.hpp"

using namespace quadsel;

namespace {

// x^2 + t x y + nw y^2 = n with |x|, |y| <= h
std::optional<Element> norm_equation(const QuadField& F, const Integer& n, long h) {
    for (long y = 0; y <= h; ++y)
        for (long x = -h; x <= h; ++x) {
            Element e(x, y);
            if (F.norm(e) == n) return e;
        }
    return std::nullopt;
}

// brute-force principality: some element of norm +-N(I) generates I
bool principal_by_search(const QuadField& F, const Ideal& I, long h) {
    const Integer N = ideal_norm(F, I);
    for (long y = 0; y <= h; ++y)
        for (long x = -h; x <= h; ++x) {
            Element e(x, y);
            const Integer n = F.norm(e);
            if ((n == N || n == -N) && ideal_contains(F, I, e)) return true;
        }
    return false;
}

Ideal random_ideal(const QuadField& F, std::mt19937_64& rng) {
    Element a(Integer(static_cast<long>(rng() % 31) - 15), Integer(static_cast<long>(rng() % 31) - 15));
    Element b(Integer(static_cast<long>(rng() % 31) - 15), Integer(static_cast<long>(rng() % 31) - 15));
    if (a.is_zero()) a = Element(7);
    return ideal_from_generators(F, {a, b});
}

}  // namespace

TEST(Ideals, SplitExamples) {
    auto F = make_field(10);
    auto s3 = split_prime(F, 3);
    EXPECT_EQ(s3.type, SplitType::split);
    ASSERT_EQ(s3.primes.size(), 2u);
    EXPECT_EQ(s3.primes[0], ideal_from_generators(F, {Element(3), Element(1, 1)}));
    EXPECT_EQ(s3.primes[1], ideal_conj(F, s3.primes[0]));
    auto s2 = split_prime(F, 2);
    EXPECT_EQ(s2.type, SplitType::ramified);
    EXPECT_EQ(s2.primes[0], ideal_from_generators(F, {Element(2), F.sqrt_d()}));
    EXPECT_EQ(ideal_mul(F, s2.primes[0], s2.primes[0]), rational_ideal(2));
    EXPECT_EQ(split_prime(F, 7).type, SplitType::inert);
    EXPECT_THROW(split_prime(F, 9), DomainError);
}

TEST(Ideals, SplittingNormsAndKronecker) {
    for (std::int64_t d = -60; d <= 60; ++d) {
        if (d == 0 || d == 1 || !is_squarefree(d)) continue;
        auto F = make_field(d);
        for (std::uint64_t p : primes_up_to(60)) {
            auto sp = split_prime(F, p);
            Ideal prod;
            for (const auto& q : sp.primes) {
                EXPECT_EQ(ideal_norm(F, q), sp.type == SplitType::inert ? Integer(p * p) : Integer(p));
                prod = ideal_mul(F, prod, q);
            }
            if (sp.type == SplitType::ramified) prod = ideal_mul(F, prod, prod);
            EXPECT_EQ(prod, rational_ideal(p)) << F.name() << " p=" << p;
        }
    }
}

TEST(Ideals, FactorizeExamples) {
    auto F = make_field(10);
    EXPECT_TRUE(factorize(F, Ideal{}).empty());
    auto f3 = factorize(F, rational_ideal(3));
    ASSERT_EQ(f3.size(), 2u);
    EXPECT_EQ(f3[0].second, 1);
    EXPECT_EQ(f3[1].second, 1);
    auto f2 = factorize(F, rational_ideal(2));
    ASSERT_EQ(f2.size(), 1u);
    EXPECT_EQ(f2[0].second, 2);
    EXPECT_THROW(factorize(F, Ideal{0, 1, 0}), DomainError);
}

TEST(Ideals, SqrtExamples) {
    auto F = make_field(10);
    EXPECT_EQ(*ideal_sqrt(F, rational_ideal(4)), rational_ideal(2));
    EXPECT_EQ(*ideal_sqrt(F, rational_ideal(2)), split_prime(F, 2).primes[0]);
    EXPECT_FALSE(ideal_sqrt(F, rational_ideal(3)));
}

TEST(Ideals, RandomProductLaws) {
    std::mt19937_64 rng(17);
    for (std::int64_t d : {-1, -5, -23, 2, 10, 34, 79, -105, 221}) {
        auto F = make_field(d);
        for (int t = 0; t < 60; ++t) {
            const Ideal A = random_ideal(F, rng), B = random_ideal(F, rng);
            const Ideal AB = ideal_mul(F, A, B);
            ASSERT_EQ(ideal_norm(F, AB), ideal_norm(F, A) * ideal_norm(F, B));
            ASSERT_EQ(ideal_mul(F, A, ideal_conj(F, A)), rational_ideal(ideal_norm(F, A)));
            ASSERT_EQ(from_factorization(F, factorize(F, AB)), AB);
            ASSERT_EQ(*ideal_sqrt(F, ideal_mul(F, A, A)), A);
            ASSERT_EQ(AB, ideal_mul(F, B, A));
        }
    }
}

TEST(Ideals, PrincipalGeneratorExamples) {
    auto F = make_field(10);
    auto g5 = principal_generator(F, rational_ideal(5));
    ASSERT_TRUE(g5);
    EXPECT_EQ(abs(F.norm(*g5)), 25);
    EXPECT_EQ(principal_ideal(F, *g5), rational_ideal(5));

    auto F34 = make_field(34);
    const Ideal p2 = split_prime(F34, 2).primes[0];
    auto g = principal_generator(F34, p2);
    ASSERT_TRUE(g);
    EXPECT_EQ(abs(F34.norm(*g)), 2);
    // oracle: 6 + sqrt34 has norm 2 and lies in p2
    auto sol = norm_equation(F34, 2, 20);
    ASSERT_TRUE(sol);
    EXPECT_EQ(principal_ideal(F34, *sol), p2);
    EXPECT_EQ(principal_ideal(F34, Element(6, 1)), p2);

    // x^2 - 10 y^2 = +-2 has no solution mod 5
    for (long x = 0; x < 5; ++x) EXPECT_NE((x * x) % 5, 2);
    for (long x = 0; x < 5; ++x) EXPECT_NE((x * x) % 5, 3);
    EXPECT_FALSE(principal_generator(F, split_prime(F, 2).primes[0]));
}

TEST(Ideals, PrincipalityAgreesWithNormSearch) {
    // imaginary fields: the norm form is definite so a bounded search is exhaustive
    for (std::int64_t d : {-1, -2, -3, -5, -6, -14, -15, -23, -26, -47, -65, -105}) {
        auto F = make_field(d);
        for (std::uint64_t p : primes_up_to(60))
            for (const auto& q : split_prime(F, p).primes) {
                for (unsigned e = 1; e <= 2; ++e) {
                    const Ideal I = ideal_pow(F, q, e);
                    const long h = static_cast<long>(isqrt(4 * ideal_norm(F, I)).get_si()) + 2;
                    auto g = principal_generator(F, I);
                    ASSERT_EQ(g.has_value(), principal_by_search(F, I, h)) << F.name() << " " << I.to_string();
                    if (g) ASSERT_EQ(principal_ideal(F, *g), I);
                }
            }
    }
}

TEST(Ideals, RealPrincipalGeneratorsRegenerate) {
    std::mt19937_64 rng(23);
    for (std::int64_t d : {2, 3, 7, 10, 15, 34, 46, 94, 199, 226}) {
        auto F = make_field(d);
        for (int t = 0; t < 40; ++t) {
            Element a(Integer(static_cast<long>(rng() % 201) - 100), Integer(static_cast<long>(rng() % 201) - 100));
            if (a.is_zero()) continue;
            const Ideal I = principal_ideal(F, a);
            auto g = principal_generator(F, I);
            ASSERT_TRUE(g) << a.to_string() << " in " << F.name();
            ASSERT_EQ(principal_ideal(F, *g), I);
            // g / a is a unit
            ASSERT_EQ(abs(F.norm(*g)), abs(F.norm(a)));
        }
    }
}

TEST(Ideals, StrictGeneratorExamples) {
    auto F34 = make_field(34);
    auto g = strict_generator(F34, rational_ideal(2));
    ASSERT_TRUE(g);
    EXPECT_EQ(*g, Element(2));
    EXPECT_FALSE(strict_generator(F34, principal_ideal(F34, Element(5, 1))));
    auto F10 = make_field(10);
    EXPECT_EQ(*strict_generator(F10, ideal_mul(F10, principal_ideal(F10, F10.sqrt_d()), principal_ideal(F10, F10.sqrt_d()))),
              Element(10));
    for (std::int64_t d : {3, 6, 15, 21, 34, 85}) {
        auto F = make_field(d);
        for (std::uint64_t p : primes_up_to(50))
            for (const auto& q : split_prime(F, p).primes)
                if (auto s = strict_generator(F, q)) {
                    EXPECT_TRUE(F.is_totally_positive(*s));
                    EXPECT_EQ(principal_ideal(F, *s), q);
                }
    }
}

TEST(Units, FundamentalUnitExamples) {
    EXPECT_EQ(fundamental_unit(make_field(2)), Element(1, 1));
    EXPECT_EQ(fundamental_unit(make_field(3)), Element(2, 1));
    EXPECT_EQ(fundamental_unit(make_field(34)), Element(35, 6));
    EXPECT_THROW(fundamental_unit(make_field(-5)), DomainError);
}

TEST(Units, FundamentalUnitAgainstPellSearch) {
    for (std::int64_t d = 2; d <= 120; ++d) {
        if (!is_squarefree(d)) continue;
        auto F = make_field(d);
        const Element eps = fundamental_unit(F);
        // smallest Y > 0 with d Y^2 +- 4 a square (half-integral case) or d y^2 +- 1 a square
        const bool half = F.omega_is_half();
        Integer X, Y;
        for (long y = 1;; ++y) {
            const Integer D = Integer(d) * y * y;
            const Integer k = half ? 4 : 1;
            if (is_perfect_square(D - k)) {
                X = isqrt(D - k);
            } else if (is_perfect_square(D + k)) {
                X = isqrt(D + k);
            } else {
                continue;
            }
            Y = y;
            break;
        }
        const auto [ex, ey] = F.sqrt_d_coords(eps);
        const Integer scale = half ? 1 : 2;
        EXPECT_EQ(ex, X * scale) << F.name();
        EXPECT_EQ(ey, Y * scale) << F.name();
        EXPECT_EQ(unit_greater_than_one(F, cycle_unit(F)), eps) << F.name();
    }
}
