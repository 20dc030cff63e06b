#include <doctest.h>

#include <set>

#include "xn/chartab.hpp"
#include "xn/numtheory.hpp"

using namespace xn;

namespace {

Rational R(long a, long b = 1) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

// Expected restriction multiplicities [theta_0, theta_1] to the order-2
// subgroup, from the closed-form tables.
std::vector<Rational> expected_h1(const CharacterTable& tab, const Irreducible& irr) {
    const long n = tab.N();
    std::vector<Rational> v(2, R(0));
    if (n % 4 == 1) {
        switch (irr.kind) {
            case IrrKind::Trivial: v[0] = R(1); break;
            case IrrKind::HalfA:
            case IrrKind::HalfB: {
                v[0] = v[1] = R((n - 1) / 4);
                v[tab.half_even_at_involution() ? 0 : 1] += 1;
                break;
            }
            case IrrKind::Discrete: v[0] = v[1] = R((n - 1) / 2); break;
            case IrrKind::Steinberg: v[0] = R((n + 1) / 2); v[1] = R((n - 1) / 2); break;
            case IrrKind::Principal: {
                v[0] = v[1] = R((n - 1) / 2);
                v[tab.alpha_sign_at_involution(irr.index) == 1 ? 0 : 1] += 2;
                break;
            }
        }
    } else {
        switch (irr.kind) {
            case IrrKind::Trivial: v[0] = R(1); break;
            case IrrKind::HalfA:
            case IrrKind::HalfB: {
                v[0] = v[1] = R((n - 3) / 4);
                v[tab.half_even_at_involution() ? 1 : 0] += 1;
                break;
            }
            case IrrKind::Discrete: {
                v[0] = v[1] = R((n - 3) / 2);
                v[tab.beta_sign_at_involution(irr.index) == -1 ? 0 : 1] += 2;
                break;
            }
            case IrrKind::Steinberg: v[0] = R((n - 1) / 2); v[1] = R((n + 1) / 2); break;
            case IrrKind::Principal: v[0] = v[1] = R((n + 1) / 2); break;
        }
    }
    return v;
}

// Expected restriction multiplicities [theta_0, theta_1, theta_2] to the
// order-3 subgroup.
std::vector<Rational> expected_h2(const CharacterTable& tab, const Irreducible& irr) {
    const long n = tab.N();
    std::vector<Rational> v(3, R(0));
    auto fill = [&](long all) { v[0] = v[1] = v[2] = R(all); };
    if (n % 3 == 1) {
        switch (irr.kind) {
            case IrrKind::Trivial: v[0] = R(1); break;
            case IrrKind::HalfA:
            case IrrKind::HalfB:
                fill((n - 1) / 6);
                if (n % 4 == 1) v[0] += 1;  // twin pair has dim (N+1)/2
                break;
            case IrrKind::Discrete: fill((n - 1) / 3); break;
            case IrrKind::Steinberg: fill((n - 1) / 3); v[0] += 1; break;
            case IrrKind::Principal:
                fill((n - 1) / 3);
                if (tab.alpha_trivial_on_cubes(irr.index))
                    v[0] += 2;
                else {
                    v[1] += 1;
                    v[2] += 1;
                }
                break;
        }
    } else {
        switch (irr.kind) {
            case IrrKind::Trivial: v[0] = R(1); break;
            case IrrKind::HalfA:
            case IrrKind::HalfB:
                if (n % 4 == 1)
                    fill((n + 1) / 6);
                else {
                    fill((n - 5) / 6);
                    v[1] += 1;
                    v[2] += 1;
                }
                break;
            case IrrKind::Discrete:
                fill((n - 5) / 3);
                if (tab.beta_trivial_on_cubes(irr.index)) {
                    v[1] += 2;
                    v[2] += 2;
                } else {
                    v[0] += 2;
                    v[1] += 1;
                    v[2] += 1;
                }
                break;
            case IrrKind::Steinberg:
                fill((n - 2) / 3);
                v[1] += 1;
                v[2] += 1;
                break;
            case IrrKind::Principal: fill((n + 1) / 3); break;
        }
    }
    return v;
}

// Expected restriction multiplicities to the order-N subgroup.
std::vector<Rational> expected_h3(const CharacterTable& tab, const Irreducible& irr) {
    const long n = tab.N();
    std::vector<Rational> v(n, R(0));
    auto residues = quadratic_residues(n);
    std::set<long> qr(residues.begin(), residues.end());
    switch (irr.kind) {
        case IrrKind::Trivial: v[0] = R(1); break;
        case IrrKind::HalfA:
            if (n % 4 == 1) v[0] = R(1);
            for (long j : qr) v[j] = R(1);
            break;
        case IrrKind::HalfB:
            if (n % 4 == 1) v[0] = R(1);
            for (long j = 1; j < n; ++j)
                if (!qr.count(j)) v[j] = R(1);
            break;
        case IrrKind::Discrete:
            for (long j = 1; j < n; ++j) v[j] = R(1);
            break;
        case IrrKind::Steinberg:
            for (long j = 0; j < n; ++j) v[j] = R(1);
            break;
        case IrrKind::Principal:
            v[0] = R(2);
            for (long j = 1; j < n; ++j) v[j] = R(1);
            break;
    }
    return v;
}

// Expected multiplicity vector of the induction of a nontrivial character
// of the order-3 subgroup.
std::vector<Rational> expected_ind_h2(const CharacterTable& tab) {
    const long n = tab.N();
    std::vector<Rational> v(tab.count(), R(0));
    for (size_t i = 0; i < tab.count(); ++i) {
        const auto& irr = tab.irreducibles()[i];
        if (n % 3 == 1) {
            switch (irr.kind) {
                case IrrKind::Trivial: break;
                case IrrKind::HalfA:
                case IrrKind::HalfB: v[i] = R((n - 1) / 6); break;
                case IrrKind::Discrete: v[i] = R((n - 1) / 3); break;
                case IrrKind::Steinberg: v[i] = R((n - 1) / 3); break;
                case IrrKind::Principal:
                    v[i] = tab.alpha_trivial_on_cubes(irr.index) ? R((n - 1) / 3)
                                                                 : R((n + 2) / 3);
                    break;
            }
        } else {
            switch (irr.kind) {
                case IrrKind::Trivial: break;
                case IrrKind::HalfA:
                case IrrKind::HalfB: v[i] = R((n + 1) / 6); break;
                case IrrKind::Discrete:
                    v[i] = tab.beta_trivial_on_cubes(irr.index) ? R((n + 1) / 3)
                                                                : R((n - 2) / 3);
                    break;
                case IrrKind::Steinberg: v[i] = R((n + 1) / 3); break;
                case IrrKind::Principal: v[i] = R((n + 1) / 3); break;
            }
        }
    }
    return v;
}

}  // namespace

TEST_SUITE("chartab") {

TEST_CASE("table shape and degree sum") {
    for (long n : {5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 73L}) {
        Psl2Context ctx(n);
        CharacterTable tab(ctx);
        CHECK(tab.count() == ctx.classes().size());
        long dim2 = 0;
        for (const auto& irr : tab.irreducibles()) dim2 += irr.dim * irr.dim;
        CHECK(dim2 == ctx.order());
        // Every character takes its dimension at the identity.
        for (size_t i = 0; i < tab.count(); ++i)
            CHECK(tab.value(i, {ClassKind::Identity, 0}) ==
                  Cyclotomic(tab.irreducibles()[i].dim));
    }
}

TEST_CASE("full table for the smallest modulus is the classical one") {
    Psl2Context ctx(7);
    CharacterTable tab(ctx);
    auto gp = gauss_periods(7);
    const Cyclotomic one(1), zero(0), two(2);

    ClassLabel id{ClassKind::Identity, 0}, p1{ClassKind::Parabolic1, 0},
        pe{ClassKind::ParabolicEps, 0}, s1{ClassKind::Split, 1}, t1{ClassKind::NonSplit, 1},
        t2{ClassKind::NonSplit, 2};

    size_t triv = tab.index_of(IrrKind::Trivial);
    size_t ha = tab.index_of(IrrKind::HalfA), hb = tab.index_of(IrrKind::HalfB);
    size_t d1 = tab.index_of(IrrKind::Discrete, 1);
    size_t st = tab.index_of(IrrKind::Steinberg);
    size_t pr = tab.index_of(IrrKind::Principal, 1);

    for (auto l : {id, p1, pe, s1, t1, t2}) CHECK(tab.value(triv, l) == one);

    CHECK(tab.value(ha, p1) == gp.q);
    CHECK(tab.value(ha, pe) == gp.q_prime);
    CHECK(tab.value(hb, p1) == gp.q_prime);
    CHECK(tab.value(hb, pe) == gp.q);
    for (auto h : {ha, hb}) {
        CHECK(tab.value(h, s1) == zero);
        CHECK(tab.value(h, t1) == one);
        CHECK(tab.value(h, t2) == -one);
    }

    CHECK(tab.value(d1, p1) == -one);
    CHECK(tab.value(d1, s1) == zero);
    CHECK(tab.value(d1, t1) == zero);
    CHECK(tab.value(d1, t2) == two);

    CHECK(tab.value(st, s1) == one);
    CHECK(tab.value(st, t1) == -one);
    CHECK(tab.value(st, t2) == -one);

    CHECK(tab.value(pr, p1) == one);
    CHECK(tab.value(pr, s1) == -one);
    CHECK(tab.value(pr, t1) == zero);
    CHECK(tab.value(pr, t2) == zero);
}

TEST_CASE("both orthogonality relations hold exactly") {
    for (long n : {5L, 7L, 11L, 13L, 17L, 29L}) {
        Psl2Context ctx(n);
        CharacterTable tab(ctx);
        CHECK_NOTHROW(tab.verify_orthogonality());
    }
}

TEST_CASE("restrictions to the three stabilizer subgroups match the closed forms") {
    for (long n : {7L, 11L, 13L, 17L, 19L, 23L}) {
        Psl2Context ctx(n);
        CharacterTable tab(ctx);
        for (size_t i = 0; i < tab.count(); ++i) {
            const auto& irr = tab.irreducibles()[i];
            CHECK(tab.restrict_to_subgroup(i, 1) == expected_h1(tab, irr));
            CHECK(tab.restrict_to_subgroup(i, 2) == expected_h2(tab, irr));
            CHECK(tab.restrict_to_subgroup(i, 3) == expected_h3(tab, irr));
        }
    }
}

TEST_CASE("closed-form induction agrees with the literal coset-sum oracle") {
    for (long n : {7L, 11L, 13L}) {
        Psl2Context ctx(n);
        CharacterTable tab(ctx);
        for (int which = 1; which <= 3; ++which) {
            long h = (long)ctx.H(which).size();
            for (long j = 0; j < h; ++j) {
                std::vector<Cyclotomic> theta;
                for (long a = 0; a < h; ++a)
                    theta.push_back(Cyclotomic::root_of_unity(h, j * a));
                auto oracle = tab.class_function(ctx.induced_character_oracle(which, theta));
                auto fast = tab.induce_linear(which, j);
                CHECK(oracle == fast);
            }
        }
    }
}

TEST_CASE("induction of nontrivial order-3 characters matches the closed form") {
    for (long n : {7L, 11L, 13L, 17L, 19L, 23L}) {
        Psl2Context ctx(n);
        CharacterTable tab(ctx);
        auto m1 = tab.decompose(tab.induce_linear(2, 1));
        auto m2 = tab.decompose(tab.induce_linear(2, 2));
        CHECK(m1 == m2);  // swapped by a Galois symmetry preserving every bucket
        CHECK(m1 == expected_ind_h2(tab));
    }
}

TEST_CASE("induction from the order-N subgroup splits by residue class") {
    for (long n : {7L, 11L, 13L}) {
        Psl2Context ctx(n);
        CharacterTable tab(ctx);
        auto residues = quadratic_residues(n);
        std::set<long> qr(residues.begin(), residues.end());

        for (long k = 0; k < n; ++k) {
            auto mult = tab.decompose(tab.induce_linear(3, k));
            std::vector<Rational> expect(tab.count(), R(0));
            for (size_t i = 0; i < tab.count(); ++i) {
                const auto& irr = tab.irreducibles()[i];
                if (k == 0) {
                    switch (irr.kind) {
                        case IrrKind::Trivial: expect[i] = R(1); break;
                        case IrrKind::HalfA:
                        case IrrKind::HalfB: expect[i] = R(n % 4 == 1 ? 1 : 0); break;
                        case IrrKind::Discrete: break;
                        case IrrKind::Steinberg: expect[i] = R(1); break;
                        case IrrKind::Principal: expect[i] = R(2); break;
                    }
                } else {
                    switch (irr.kind) {
                        case IrrKind::Trivial: break;
                        case IrrKind::HalfA: expect[i] = R(qr.count(k) ? 1 : 0); break;
                        case IrrKind::HalfB: expect[i] = R(qr.count(k) ? 0 : 1); break;
                        default: expect[i] = R(1); break;
                    }
                }
            }
            CHECK(mult == expect);
        }
    }
}

TEST_CASE("Frobenius reciprocity between restriction and induction") {
    for (long n : {7L, 13L}) {
        Psl2Context ctx(n);
        CharacterTable tab(ctx);
        for (int which = 1; which <= 3; ++which) {
            long h = (long)ctx.H(which).size();
            for (long j = 0; j < h; ++j) {
                auto ind = tab.induce_linear(which, j);
                for (size_t i = 0; i < tab.count(); ++i) {
                    auto res = tab.restrict_to_subgroup(i, which);
                    CHECK(tab.schur_inner_product(ind, tab.character(i)) == res[j]);
                }
            }
        }
    }
}

TEST_CASE("Galois orbits and image size") {
    Psl2Context c7(7);
    CharacterTable t7(c7);
    CHECK(t7.galois_image_order() == 2);
    auto orbits7 = t7.galois_orbits();
    CHECK(orbits7.size() == 5);  // twins fused, everything else fixed

    Psl2Context c13(13);
    CharacterTable t13(c13);
    CHECK(t13.galois_image_order() == 6);
    auto orbits13 = t13.galois_orbits();
    // trivial | twins | steinberg | all three discrete | prin1 | prin2
    CHECK(orbits13.size() == 6);
    size_t fused = 0;
    for (const auto& o : orbits13) fused = std::max(fused, o.size());
    CHECK(fused == 3);

    std::vector<Rational> stable(t13.count(), R(1));
    CHECK(t13.is_galois_stable(stable));
    stable[t13.index_of(IrrKind::HalfA)] = R(2);
    CHECK(!t13.is_galois_stable(stable));
    auto avg = t13.galois_average(stable);
    CHECK(t13.is_galois_stable(avg));
    CHECK(avg[t13.index_of(IrrKind::HalfA)] == R(3, 2));
    CHECK(avg[t13.index_of(IrrKind::HalfB)] == R(3, 2));
}

TEST_CASE("decompose/combine round-trip and irrational rejection") {
    Psl2Context ctx(11);
    CharacterTable tab(ctx);
    std::vector<Rational> mults;
    for (size_t i = 0; i < tab.count(); ++i) mults.push_back(R((long)(i * i % 5), 2));
    auto f = tab.combine(mults);
    CHECK(tab.decompose(f) == mults);

    ClassFunction weird(ctx.classes().size(), Cyclotomic(0));
    weird[tab.class_position({ClassKind::Split, 1})] = Cyclotomic::root_of_unity(5, 1);
    CHECK_THROWS_AS((void)tab.schur_inner_product(weird, tab.character(0)),
                    std::domain_error);
}

}  // TEST_SUITE
