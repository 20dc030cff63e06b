#include <doctest.h>

#include <random>

#include "xn/cyclotomic.hpp"
#include "xn/numtheory.hpp"

using xn::Cyclotomic;
using xn::Rational;

namespace {

Cyclotomic random_element(std::mt19937& rng, long m) {
    std::uniform_int_distribution<long> expo(0, m - 1);
    std::uniform_int_distribution<long> numer(-6, 6);
    std::uniform_int_distribution<long> denom(1, 4);
    std::uniform_int_distribution<int> nterms(0, 5);
    std::vector<std::pair<long, Rational>> terms;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i)
        terms.emplace_back(expo(rng), Rational(numer(rng), denom(rng)));
    return Cyclotomic::from_terms(m, terms);
}

}  // namespace

TEST_SUITE_BEGIN("cyclotomic");

TEST_CASE("roots of unity multiply by exponent addition") {
    auto z3 = Cyclotomic::root_of_unity(3, 1);
    auto z3sq = Cyclotomic::root_of_unity(3, 2);
    CHECK(z3 * z3sq == Cyclotomic(1));
    CHECK((z3 * z3) == z3sq);

    // Conductor 2 collapses to the rationals: z2 = -1.
    auto z2 = Cyclotomic::root_of_unity(2, 1);
    REQUIRE(z2.as_rational().has_value());
    CHECK(*z2.as_rational() == Rational(-1));
}

TEST_CASE("equality is canonical across conductors") {
    CHECK(Cyclotomic::root_of_unity(6, 2) == Cyclotomic::root_of_unity(3, 1));
    CHECK(Cyclotomic::root_of_unity(12, 6) == Cyclotomic(-1));
    // 1 + z5 + z5^2 + z5^3 + z5^4 = 0
    Cyclotomic s;
    for (long e = 0; e < 5; ++e) s += Cyclotomic::root_of_unity(5, e);
    CHECK(s.is_zero());
}

TEST_CASE("as_rational recognizes real combinations") {
    // z6 + z6^5 = 2 cos(60 deg) = 1
    auto v = Cyclotomic::root_of_unity(6, 1) + Cyclotomic::root_of_unity(6, 5);
    REQUIRE(v.as_rational().has_value());
    CHECK(*v.as_rational() == Rational(1));

    auto gp = xn::gauss_periods(7);
    CHECK_FALSE(gp.q.as_rational().has_value());
    CHECK(Cyclotomic().as_rational().value() == Rational(0));
}

TEST_CASE("gauss periods: sum, product, and discriminant") {
    for (long N : {7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L, 53L, 59L, 61L}) {
        CAPTURE(N);
        auto gp = xn::gauss_periods(N);
        CHECK((gp.q + gp.q_prime) == Cyclotomic(-1));
        auto prod = (gp.q * gp.q_prime).as_rational();
        REQUIRE(prod.has_value());
        Rational expected = (N % 4 == 1) ? Rational(1 - N, 4) : Rational(1 + N, 4);
        expected.canonicalize();
        expected.canonicalize();
        CHECK(*prod == expected);
    }
    // (q - q')^2 = +-N depending on N mod 4.
    auto g7 = xn::gauss_periods(7);
    auto d7 = g7.q - g7.q_prime;
    CHECK((d7 * d7).as_rational().value() == Rational(-7));
    auto g13 = xn::gauss_periods(13);
    auto d13 = g13.q - g13.q_prime;
    CHECK((d13 * d13).as_rational().value() == Rational(13));
}

TEST_CASE("galois action permutes gauss periods by residue class") {
    for (long N : {7L, 11L, 13L}) {
        auto gp = xn::gauss_periods(N);
        for (long j = 1; j < N; ++j) {
            CAPTURE(N);
            CAPTURE(j);
            if (xn::legendre(j, N) == 1)
                CHECK(gp.q.galois(j) == gp.q);
            else
                CHECK(gp.q.galois(j) == gp.q_prime);
        }
    }
    CHECK(Cyclotomic::root_of_unity(5, 1).galois(-1) == Cyclotomic::root_of_unity(5, 4));
}

TEST_CASE("galois actions compose multiplicatively") {
    std::mt19937 rng(20260818);
    const long m = 36;
    std::vector<long> units;
    for (long j = 1; j < m; ++j)
        if (xn::gcd_long(j, m) == 1) units.push_back(j);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_element(rng, m);
        long j = units[rng() % units.size()];
        long k = units[rng() % units.size()];
        CHECK(a.galois(j).galois(k) == a.galois((j * k) % m));
    }
    CHECK_THROWS(Cyclotomic::root_of_unity(6, 1).galois(3));
}

TEST_CASE("ring axioms on randomized triples") {
    std::mt19937 rng(7);
    for (long m : {12L, 13L, 35L}) {
        for (int trial = 0; trial < 12; ++trial) {
            auto a = random_element(rng, m);
            auto b = random_element(rng, m);
            auto c = random_element(rng, m);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
        }
    }
}

TEST_CASE("canonical reduction is idempotent") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = random_element(rng, 21);
        // Rebuild from the canonical coefficients; must reproduce identically.
        std::vector<std::pair<long, Rational>> terms;
        for (long e = 0; e < (long)a.coeffs().size(); ++e)
            if (a.coeffs()[e] != 0) terms.emplace_back(e, a.coeffs()[e]);
        CHECK(Cyclotomic::from_terms(21, terms) == a);
    }
}

TEST_CASE("an element fixed by every galois automorphism is rational") {
    // Trace-like symmetrization of a random element must be rational.
    std::mt19937 rng(5);
    for (long m : {7L, 12L}) {
        auto a = random_element(rng, m);
        Cyclotomic tr;
        for (long j = 1; j < m; ++j)
            if (xn::gcd_long(j, m) == 1) tr += a.galois(j);
        for (long j = 1; j < m; ++j)
            if (xn::gcd_long(j, m) == 1) CHECK(tr.galois(j) == tr);
        CHECK(tr.as_rational().has_value());
    }
}

TEST_CASE("lift and mixed-conductor arithmetic") {
    auto z3 = Cyclotomic::root_of_unity(3, 1);
    auto z4 = Cyclotomic::root_of_unity(4, 1);
    auto prod = z3 * z4;  // = z12^7
    CHECK(prod == Cyclotomic::root_of_unity(12, 7));
    CHECK(z3.lifted_to(12) == Cyclotomic::root_of_unity(12, 4));
    CHECK_THROWS(z3.lifted_to(10));
}

TEST_CASE("cyclotomic polynomial table sanity") {
    using xn::cyclotomic_polynomial;
    // Phi_12 = x^4 - x^2 + 1
    const auto& p12 = cyclotomic_polynomial(12);
    CHECK(p12 == std::vector<xn::Integer>{1, 0, -1, 0, 1});
    // Phi_p = 1 + x + ... + x^(p-1)
    const auto& p7 = cyclotomic_polynomial(7);
    REQUIRE(p7.size() == 7);
    for (const auto& c : p7) CHECK(c == 1);
    // degree phi(m) for a composite with several prime factors
    CHECK((long)cyclotomic_polynomial(105).size() == xn::euler_phi(105) + 1);
}

TEST_SUITE_END();
