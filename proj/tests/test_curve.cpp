#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "xn/curve.hpp"
#include "xn/fixtures.hpp"

using namespace xn;

namespace {

IntPoly poly_from_terms(std::size_t vars,
                        const std::vector<std::array<long, 6>>& terms) {
    IntPoly f(vars);
    for (const auto& t : terms) {
        f.add_term({static_cast<int>(t[1]), static_cast<int>(t[2]),
                    static_cast<int>(t[3]), static_cast<int>(t[4]),
                    static_cast<int>(t[5])},
                   t[0]);
    }
    f.normalize();
    return f;
}

FMatrix to_matrix(const std::array<std::array<long, 3>, 3>& rows) {
    FMatrix m(3, std::vector<long>(3, 0));
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) m[i][j] = rows[i][j];
    }
    return m;
}

std::set<ProjectivePoint> to_point_set(
    const std::vector<std::array<long, 3>>& raw) {
    std::set<ProjectivePoint> out;
    for (const auto& p : raw) out.insert(ProjectivePoint{{p[0], p[1], p[2]}});
    return out;
}

std::array<long, 4> random_sl2(std::mt19937_64& rng, long n) {
    std::uniform_int_distribution<long> dist(0, n - 1);
    while (true) {
        const std::array<long, 4> g{dist(rng), dist(rng), dist(rng), dist(rng)};
        if (((g[0] * g[3] - g[1] * g[2]) % n + n) % n == 1) return g;
    }
}

std::array<long, 4> mat2_mul(const std::array<long, 4>& a,
                             const std::array<long, 4>& b, long n) {
    return {(a[0] * b[0] + a[1] * b[2]) % n, (a[0] * b[1] + a[1] * b[3]) % n,
            (a[2] * b[0] + a[3] * b[2]) % n, (a[2] * b[1] + a[3] * b[3]) % n};
}

IntPoly mod_p_copy(const PrimeField& field, const IntPoly& f) {
    IntPoly out(f.vars());
    for (const auto& [exps, coeff] : f.terms()) {
        out.add_term(exps, field.reduce(coeff));
    }
    return out;
}

}  // namespace

TEST_SUITE("curve") {

TEST_CASE("prime field arithmetic and distinguished constants") {
    PrimeField f43(43);
    CHECK(f43.p() == 43);
    CHECK(f43.reduce(-1) == 42);
    CHECK(f43.mul(6, 6) == 36);
    CHECK(f43.sub(0, 7) == 36);  // -7 = 36
    CHECK(f43.mul(21, f43.inv(21)) == 1);
    CHECK(f43.pow(5, 42) == 1);
    CHECK(f43.pow(5, -1) == f43.inv(5));

    // the quoted constants satisfy their defining equations
    CHECK(f43.pow(41, 7) == 1);
    CHECK(f43.pow(36, 3) == 1);
    CHECK(f43.mul(6, 6) == f43.reduce(-7));

    // search finds (possibly different) valid constants
    const long zeta7 = f43.root_of_unity(7).value();
    CHECK(zeta7 != 1);
    CHECK(f43.pow(zeta7, 7) == 1);
    const long zeta3 = f43.root_of_unity(3).value();
    CHECK(f43.pow(zeta3, 3) == 1);
    CHECK(f43.square_root(f43.reduce(-7)).value() == 6);

    PrimeField f23(23);
    CHECK(f23.root_of_unity(11).has_value());
    CHECK(f23.pow(f23.root_of_unity(11).value(), 11) == 1);

    PrimeField f7(7);
    CHECK_FALSE(f7.root_of_unity(7).has_value());  // 7 does not divide 6
    CHECK_FALSE(f43.square_root(3).has_value());   // 3 is not a square mod 43

    CHECK_THROWS_AS(PrimeField(42), std::invalid_argument);
    CHECK_THROWS_AS(f43.inv(0), std::invalid_argument);
    CHECK_THROWS_AS(f43.root_of_unity(4), std::invalid_argument);
}

TEST_CASE("quartic relations at small levels") {
    const KleinSystem k7 = klein_relations(7);
    REQUIRE(k7.relations.size() == 1);
    IntPoly expected7(3);
    expected7.add_term({3, 1, 0}, 1);   // y1^3 y2
    expected7.add_term({0, 3, 1}, -1);  // -y2^3 y3
    expected7.add_term({1, 0, 3}, -1);  // -y3^3 y1
    expected7.normalize();
    CHECK(k7.relations[0] == expected7);

    const KleinSystem k11 = klein_relations(11);
    REQUIRE(k11.relations.size() == 10);
    std::set<IntPoly> expected11;
    for (const auto& terms : fixtures::published_relations_11()) {
        expected11.insert(poly_from_terms(5, terms));
    }
    CHECK(std::set<IntPoly>(k11.relations.begin(), k11.relations.end()) ==
          expected11);

    for (long n : {7L, 11L, 13L}) {
        CAPTURE(n);
        const KleinSystem system = klein_relations(n);
        CHECK(system.vars == static_cast<std::size_t>((n - 1) / 2));
        CHECK(!system.relations.empty());
        for (const IntPoly& f : system.relations) {
            for (const auto& [exps, coeff] : f.terms()) {
                CHECK((coeff == 1 || coeff == -1));
                int total = 0;
                for (int e : exps) total += e;
                CHECK(total == 4);  // homogeneous quartics
            }
        }
    }

    CHECK_THROWS_AS(klein_relations(5), std::invalid_argument);
    CHECK_THROWS_AS(klein_relations(8), std::invalid_argument);
}

TEST_CASE("printed coordinates match the reduced model") {
    // (x, y, z) = (y_2, -y_3, y_1) carries x^3 y + y^3 z + z^3 x to the
    // level-7 relation, up to scalar; checked over two different primes.
    for (long p : {43L, 29L}) {
        CAPTURE(p);
        PrimeField field(p);
        const FMatrix substitution = {{0, 1, 0}, {0, 0, field.neg(1)}, {1, 0, 0}};
        const IntPoly image =
            transform_poly(field, klein_quartic_xyz(), substitution);
        const IntPoly relation = mod_p_copy(field, klein_relations(7).relations[0]);
        CHECK(poly_rank(field, {relation, image}) == 1);
    }
}

TEST_CASE("printed generator matrices are reproduced") {
    PrimeField field(43);
    const long zeta = 41;
    const auto printed = fixtures::klein_rho_generators_43();

    // identity acts as a scalar
    const FMatrix id_action = rho_matrix_xyz(field, zeta, {1, 0, 0, 1});
    FMatrix identity3 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(projectively_equal(field, id_action, identity3));

    const FMatrix unipotent = rho_matrix_xyz(field, zeta, {1, 1, 0, 1});
    CHECK(projectively_equal(field, unipotent, to_matrix(printed[0])));

    const FMatrix torus = rho_matrix_xyz(field, zeta, {2, 0, 0, 4});
    CHECK(projectively_equal(field, torus, to_matrix(printed[1])));

    const FMatrix weyl = rho_matrix_xyz(field, zeta, {0, 1, 6, 0});
    CHECK(projectively_equal(field, weyl, to_matrix(printed[2])));

    // all of them preserve the quartic form (image is a scalar multiple)
    const IntPoly quartic = klein_quartic_xyz();
    for (const FMatrix& m :
         {unipotent, torus, weyl, to_matrix(printed[0]), to_matrix(printed[1]),
          to_matrix(printed[2])}) {
        const IntPoly moved = transform_poly(field, quartic, m);
        CHECK(poly_rank(field, {mod_p_copy(field, quartic), moved}) == 1);
    }
}

TEST_CASE("the action is a projective homomorphism") {
    {
        PrimeField field(43);
        std::mt19937_64 rng(20260818);
        for (int trial = 0; trial < 100; ++trial) {
            const auto g = random_sl2(rng, 7);
            const auto h = random_sl2(rng, 7);
            const FMatrix lhs = rho_matrix(field, 41, 7, mat2_mul(g, h, 7));
            const FMatrix rhs = fmat_mul(field, rho_matrix(field, 41, 7, g),
                                         rho_matrix(field, 41, 7, h));
            CHECK(projectively_equal(field, lhs, rhs));
        }
    }
    {
        PrimeField field(23);
        const long zeta = field.root_of_unity(11).value();
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 25; ++trial) {
            const auto g = random_sl2(rng, 11);
            const auto h = random_sl2(rng, 11);
            const FMatrix lhs = rho_matrix(field, zeta, 11, mat2_mul(g, h, 11));
            const FMatrix rhs = fmat_mul(field, rho_matrix(field, zeta, 11, g),
                                         rho_matrix(field, zeta, 11, h));
            CHECK(projectively_equal(field, lhs, rhs));
        }
    }
}

TEST_CASE("the relation ideal is stable under the action") {
    PrimeField field(23);
    const long zeta = field.root_of_unity(11).value();
    const KleinSystem system = klein_relations(11);
    std::vector<IntPoly> base;
    for (const IntPoly& f : system.relations) base.push_back(mod_p_copy(field, f));
    const long base_rank = poly_rank(field, base);
    CHECK(base_rank == 10);

    for (const std::array<long, 4>& g :
         {std::array<long, 4>{1, 1, 0, 1}, std::array<long, 4>{2, 0, 0, 6},
          std::array<long, 4>{0, 1, 10, 0}}) {
        CAPTURE(g[0]);
        const FMatrix m = rho_matrix(field, zeta, 11, g);
        std::vector<IntPoly> extended = base;
        for (const IntPoly& f : base) {
            extended.push_back(transform_poly(field, f, m));
        }
        CHECK(poly_rank(field, extended) == base_rank);
    }
}

TEST_CASE("rational points of the quartic over GF(43)") {
    PrimeField field(43);
    const std::vector<ProjectivePoint> points =
        rational_points({klein_quartic_xyz()}, field, 3);
    CHECK(points.size() == 80);

    const std::set<ProjectivePoint> expected =
        to_point_set(fixtures::klein_rational_points_43());
    CHECK(std::set<ProjectivePoint>(points.begin(), points.end()) == expected);

    CHECK(expected.count(ProjectivePoint{{19, 9, 1}}) == 1);
    CHECK(expected.count(ProjectivePoint{{0, 0, 1}}) == 1);

    // exactly two points on the line z = 0
    std::vector<ProjectivePoint> at_infinity;
    for (const ProjectivePoint& p : points) {
        if (p.coords[2] == 0) at_infinity.push_back(p);
    }
    CHECK(at_infinity == std::vector<ProjectivePoint>{
                             ProjectivePoint{{0, 1, 0}}, ProjectivePoint{{1, 0, 0}}});

    // Hasse-Weil window for genus 3: |#X - (p+1)| <= 2 g sqrt(p)
    CHECK(80 - 44 <= 39);  // floor(6 sqrt(43)) = 39

    // the count is a linear-change invariant: the reduced model agrees
    const std::vector<ProjectivePoint> reduced_model_points =
        rational_points(klein_relations(7).relations, field, 3);
    CHECK(reduced_model_points.size() == 80);
}

TEST_CASE("orbit of the base point") {
    PrimeField field(43);
    const long zeta = 41;
    const std::vector<FMatrix> generators = {
        rho_matrix_xyz(field, zeta, {1, 1, 0, 1}),
        rho_matrix_xyz(field, zeta, {2, 0, 0, 4}),
        rho_matrix_xyz(field, zeta, {0, 1, 6, 0}),
    };
    const ProjectivePoint base{{1, 0, 0}};
    const std::vector<ProjectivePoint> base_orbit =
        orbit(base, generators, field, 168);
    CHECK(base_orbit.size() == 24);
    CHECK(std::set<ProjectivePoint>(base_orbit.begin(), base_orbit.end()) ==
          to_point_set(fixtures::klein_base_orbit_43()));
    CHECK(168 % base_orbit.size() == 0);
    CHECK(168 / base_orbit.size() == 7);  // stabilizer order

    // the printed generator matrices produce the same orbit
    std::vector<FMatrix> printed;
    for (const auto& rows : fixtures::klein_rho_generators_43()) {
        printed.push_back(to_matrix(rows));
    }
    CHECK(orbit(base, printed, field, 168) == base_orbit);

    // every orbit point is on the curve; the complement has 56 points
    const std::set<ProjectivePoint> all =
        to_point_set(fixtures::klein_rational_points_43());
    for (const ProjectivePoint& p : base_orbit) CHECK(all.count(p) == 1);
    CHECK(all.size() - base_orbit.size() == 56);

    CHECK_THROWS_AS(orbit(base, generators, field, 10), std::runtime_error);
}

TEST_CASE("point normalization and serialization") {
    PrimeField field(43);
    CHECK(normalize_point({2, 4, 2}, field) == ProjectivePoint{{1, 2, 1}});
    CHECK(normalize_point({0, 5, 0}, field) == ProjectivePoint{{0, 1, 0}});
    CHECK(normalize_point({-1, 0, 0}, field) == ProjectivePoint{{1, 0, 0}});
    CHECK_THROWS_AS(normalize_point({0, 0, 0}, field), std::invalid_argument);

    CHECK(ProjectivePoint{{19, 9, 1}}.str() == "(19 : 9 : 1)");

    const auto parsed = nlohmann::json::parse(
        points_to_json({ProjectivePoint{{19, 9, 1}}, ProjectivePoint{{0, 1, 0}}}));
    CHECK(parsed.size() == 2);
    CHECK(parsed[0] == std::vector<long>({19, 9, 1}));

    const auto system_doc =
        nlohmann::json::parse(klein_system_to_json(klein_relations(7)));
    CHECK(system_doc.at("level") == 7);
    CHECK(system_doc.at("variables") == 3);
    CHECK(system_doc.at("relations").size() == 1);
    CHECK(system_doc.at("relations")[0].at("terms").size() == 3);

    const IntPoly quartic = klein_quartic_xyz();
    CHECK(quartic.str("v") == "v1^3*v2 + v1*v3^3 + v2^3*v3");
}

TEST_CASE("action error paths") {
    PrimeField field(43);
    // determinant not 1
    CHECK_THROWS_AS(rho_matrix(field, 41, 7, {1, 1, 1, 1}),
                    std::invalid_argument);
    // zeta of the wrong order
    CHECK_THROWS_AS(rho_matrix(field, 2, 7, {1, 1, 0, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(rho_matrix(field, 1, 7, {1, 1, 0, 1}),
                    std::invalid_argument);
    // characteristic equal to the level
    PrimeField f7(7);
    CHECK_THROWS_AS(rho_matrix(f7, 2, 7, {1, 1, 0, 1}), std::invalid_argument);
}

}  // TEST_SUITE
