#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "xn/fixtures.hpp"
#include "xn/numtheory.hpp"
#include "xn/rammod.hpp"

using namespace xn;

namespace {

std::vector<long> primes_between(long lo, long hi) {
    std::vector<long> out;
    for (long n = lo; n <= hi; ++n) {
        if (is_prime(n)) out.push_back(n);
    }
    return out;
}

VirtualModule reordered(const VirtualModule& mults,
                        const std::vector<std::size_t>& order) {
    VirtualModule out;
    out.reserve(order.size());
    for (std::size_t index : order) out.push_back(mults.at(index));
    return out;
}

VirtualModule as_module(const std::vector<long>& row) {
    return {row.begin(), row.end()};
}

std::string row_str(const VirtualModule& mults) {
    std::vector<std::size_t> identity(mults.size());
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
    return module_row_csv(mults, identity);
}

// The reference tables list constituents in nondecreasing dimension order
// but use their own ordering within equal-dimension blocks, so a truncated
// reference row is compared block by block: complete blocks as multisets,
// the block cut off by the truncation as multiset containment.
void check_block_prefix(const CharacterTable& table,
                        const VirtualModule& computed,
                        const std::vector<Rational>& prefix) {
    std::size_t pos = 0;
    std::size_t i = 0;
    while (i < table.count() && pos < prefix.size()) {
        const long dim = table.irreducibles()[i].dim;
        std::size_t block_end = i;
        while (block_end < table.count() &&
               table.irreducibles()[block_end].dim == dim) {
            ++block_end;
        }
        std::vector<Rational> block(computed.begin() + i,
                                    computed.begin() + block_end);
        const std::size_t take =
            std::min(prefix.size() - pos, block_end - i);
        std::vector<Rational> shown(prefix.begin() + pos,
                                    prefix.begin() + pos + take);
        std::sort(block.begin(), block.end());
        std::sort(shown.begin(), shown.end());
        CAPTURE(dim);
        CAPTURE(row_str(block));
        CAPTURE(row_str(shown));
        if (take == block_end - i) {
            CHECK(shown == block);
        } else {
            // Containment of multisets: every shown value occurs at least
            // as often in the computed block.
            for (const Rational& value : shown) {
                const auto in_shown = std::count(shown.begin(), shown.end(), value);
                const auto in_block = std::count(block.begin(), block.end(), value);
                CHECK(in_shown <= in_block);
            }
        }
        pos += take;
        i = block_end;
    }
    CHECK(pos == prefix.size());
}

}  // namespace

TEST_SUITE_BEGIN("rammod");

TEST_CASE("reference rows at small levels") {
    for (long n : {5L, 7L, 11L, 13L}) {
        CAPTURE(n);
        Psl2Context ctx(n);
        CharacterTable table(ctx);

        const VirtualModule definitional = ramification_module(table);
        const VirtualModule closed = ramification_closed_form(table);
        CHECK(definitional == closed);

        const auto order = fixtures::published_table_order(n);
        CHECK(reordered(definitional, order) ==
              as_module(fixtures::published_gamma_row(n)));

        const VirtualModule average = jk_module(table);
        CHECK(reordered(average, order) == fixtures::published_average_row(n));
    }
}

TEST_CASE("worked-example rows use their own ordering") {
    for (long n : {7L, 11L}) {
        CAPTURE(n);
        Psl2Context ctx(n);
        CharacterTable table(ctx);

        const auto order = fixtures::published_example_order(n);
        CHECK(reordered(ramification_module(table), order) ==
              as_module(fixtures::published_example_gamma(n)));
        CHECK(reordered(jk_module(table), order) ==
              fixtures::published_example_average(n));
    }
}

TEST_CASE("truncated reference rows match per dimension block") {
    for (long n : {17L, 19L, 23L, 29L}) {
        CAPTURE(n);
        Psl2Context ctx(n);
        CharacterTable table(ctx);
        const std::vector<long> gamma_prefix = fixtures::published_gamma_prefix(n);
        check_block_prefix(table, ramification_module(table),
                           {gamma_prefix.begin(), gamma_prefix.end()});
        check_block_prefix(table, jk_module(table),
                           fixtures::published_average_prefix(n));
    }
}

TEST_CASE("definitional module equals the closed form") {
    for (long n : primes_between(7, 61)) {
        CAPTURE(n);
        Psl2Context ctx(n);
        CharacterTable table(ctx);
        const VirtualModule definitional = ramification_module(table);
        const VirtualModule closed = ramification_closed_form(table);
        CAPTURE(row_str(definitional));
        CAPTURE(row_str(closed));
        CHECK(definitional == closed);
    }
}

TEST_CASE("definitional module equals the literal induction sum") {
    for (long n : {7L, 11L, 13L, 17L}) {
        CAPTURE(n);
        Psl2Context ctx(n);
        CharacterTable table(ctx);

        VirtualModule literal(table.count(), Rational(0));
        auto add = [&](const ClassFunction& f, const Rational& weight) {
            const std::vector<Rational> mults = table.decompose(f);
            for (std::size_t i = 0; i < literal.size(); ++i) {
                literal[i] += weight * mults[i];
            }
        };
        add(table.induce_linear(1, 1), Rational(1) / 2);
        add(table.induce_linear(2, 1), Rational(1) / 3);
        add(table.induce_linear(2, 2), Rational(2) / 3);
        for (long l = 1; l < n; ++l) {
            add(table.induce_linear(3, l), Rational(l) / n);
        }

        CHECK(literal == ramification_module(table));
    }
}

TEST_CASE("closed-form induction columns match computed inductions") {
    for (long n : {7L, 11L, 13L, 17L, 19L, 23L}) {
        CAPTURE(n);
        Psl2Context ctx(n);
        CharacterTable table(ctx);
        const WeightedInductionTable cols = closed_form_induction_table(table);

        CHECK(cols.h1 == table.decompose(table.induce_linear(1, 1)));

        const auto from_omega = table.decompose(table.induce_linear(2, 1));
        const auto from_omega_sq = table.decompose(table.induce_linear(2, 2));
        VirtualModule h2(table.count());
        for (std::size_t i = 0; i < h2.size(); ++i) {
            h2[i] = from_omega[i] + Rational(2) * from_omega_sq[i];
        }
        CHECK(cols.h2 == h2);

        VirtualModule h3(table.count(), Rational(0));
        for (long l = 1; l < n; ++l) {
            const auto mults = table.decompose(table.induce_linear(3, l));
            for (std::size_t i = 0; i < h3.size(); ++i) {
                h3[i] += Rational(l) * mults[i];
            }
        }
        CHECK(cols.h3 == h3);

        // The columns assemble the module with weights 1/2, 1/3, 1/N.
        VirtualModule assembled(table.count());
        for (std::size_t i = 0; i < assembled.size(); ++i) {
            assembled[i] = cols.h1[i] / 2 + cols.h2[i] / 3 + cols.h3[i] / n;
        }
        CHECK(assembled == ramification_closed_form(table));
    }
}

TEST_CASE("galois invariance holds exactly at 1 mod 4") {
    for (long n : primes_between(7, 97)) {
        CAPTURE(n);
        Psl2Context ctx(n);
        CharacterTable table(ctx);
        const VirtualModule definitional = ramification_module(table);
        CHECK(is_galois_invariant(definitional, table) == (n % 4 == 1));
    }
}

TEST_CASE("shortcut module is the galois average") {
    for (long n : primes_between(7, 43)) {
        CAPTURE(n);
        Psl2Context ctx(n);
        CharacterTable table(ctx);
        const VirtualModule definitional = ramification_module(table);
        const VirtualModule average = jk_module(table);

        CHECK(average == table.galois_average(definitional));
        CHECK(is_galois_invariant(average, table));

        const VirtualModule closure = jk_closure(table);
        const Rational scale(table.galois_image_order());
        for (std::size_t i = 0; i < average.size(); ++i) {
            CHECK(closure[i] == scale * average[i]);
            CHECK(closure[i].get_den() == 1);
        }

        if (n % 4 == 1) {
            CHECK(average == definitional);
        } else {
            CHECK(average != definitional);
            const bool has_half_entry =
                std::any_of(average.begin(), average.end(),
                            [](const Rational& r) { return r.get_den() != 1; });
            CHECK(has_half_entry);
        }
    }
}

TEST_CASE("fixed space dimensions agree with restriction components") {
    for (long n : {7L, 11L, 13L, 19L}) {
        CAPTURE(n);
        Psl2Context ctx(n);
        CharacterTable table(ctx);
        for (std::size_t i = 0; i < table.count(); ++i) {
            for (int which = 1; which <= 3; ++which) {
                CAPTURE(i);
                CAPTURE(which);
                CHECK(fixed_space_dimension(table, i, which) ==
                      table.restrict_to_subgroup(i, which)[0]);
            }
        }
    }
}

TEST_CASE("report invariants") {
    for (long n : {7L, 11L, 13L, 17L, 19L, 23L, 29L}) {
        CAPTURE(n);
        Psl2Context ctx(n);
        CharacterTable table(ctx);
        const RamificationReport report = ramification_report(table);

        CHECK(report.N == n);
        CHECK(report.S_Q + report.S_N == n * (n - 1) / 2);
        if (n % 4 == 1) {
            CHECK(report.S_Q == report.S_N);
            CHECK(report.S_Q == n * (n - 1) / 4);
        } else {
            CHECK(report.S_Q != report.S_N);
        }

        // Bulk multiplicity: integral, and matching the residue-case value.
        CHECK(report.m_parameter.get_den() == 1);
        const long thirteen = 13 * n;
        long expected_m = 0;
        switch (n % 24) {
            case 1: case 13: expected_m = (thirteen - 13) / 12; break;
            case 5: case 17: expected_m = (thirteen - 5) / 12; break;
            case 7: case 19: expected_m = (thirteen - 7) / 12; break;
            default: expected_m = (thirteen + 1) / 12; break;
        }
        CHECK(report.m_parameter == expected_m);

        // Ramification weights: 1 at the stabilizer orders, 0 elsewhere.
        CHECK(report.R.at(2) == 1);
        CHECK(report.R.at(3) == 1);
        CHECK(report.R.at(n) == 1);
        for (long order : ctx.spurious_subgroup_scan().spurious) {
            CHECK(report.R.at(order) == 0);
        }

        CHECK(report.galois_invariant == (n % 4 == 1));

        // Dimension bookkeeping of the weighted induction sum:
        // |G|/4 + |G|/3 + (N-1)|G|/(2N), exactly.
        const Rational order(ctx.order());
        const Rational expected_dim =
            order / 4 + order / 3 + Rational(n - 1) * order / (2 * n);
        CHECK(module_dimension(table, report.definitional) == expected_dim);
    }

    Psl2Context ctx7(7);
    CharacterTable table7(ctx7);
    const RamificationReport report7 = ramification_report(table7);
    CHECK(report7.S_Q == 7);
    CHECK(report7.S_N == 14);
    CHECK(report7.m_parameter == 7);
    CHECK(report7.R.at(4) == 0);
    CHECK(report7.galois_image_order == 2);
    CHECK_FALSE(report7.galois_invariant);
}

TEST_CASE("row serialization") {
    Psl2Context ctx7(7);
    CharacterTable table7(ctx7);
    const RamificationReport report7 = ramification_report(table7);
    const auto order7 = report_row_order(7, table7.count());
    CHECK(module_row_csv(report7.definitional, order7) ==
          "[ 0, 3, 4, 6, 7, 8 ]");
    CHECK(module_row_csv(report7.jk, order7) == "[ 0, 7/2, 7/2, 6, 7, 8 ]");

    Psl2Context ctx11(11);
    CharacterTable table11(ctx11);
    const RamificationReport report11 = ramification_report(table11);
    const auto order11 = report_row_order(11, table11.count());
    CHECK(module_row_csv(report11.definitional, order11) ==
          "[ 0, 5, 6, 11, 10, 12, 12, 12 ]");
    CHECK(module_row_csv(report11.jk, order11) ==
          "[ 0, 11/2, 11/2, 11, 10, 12, 12, 12 ]");

    // Levels without a pinned reference ordering serialize canonically.
    Psl2Context ctx13(13);
    CharacterTable table13(ctx13);
    const auto order13 = report_row_order(13, table13.count());
    for (std::size_t i = 0; i < order13.size(); ++i) CHECK(order13[i] == i);

    const auto names = row_order_names(table11, order11);
    REQUIRE(names.size() == table11.count());
    CHECK(names[0] == table11.irreducibles()[0].str());

    const nlohmann::json j =
        nlohmann::json::parse(report_to_json(report7, table7));
    CHECK(j["level"] == 7);
    CHECK(j["group_order"] == 168);
    CHECK(j["definitional"] == nlohmann::json({0, 3, 4, 6, 7, 8}));
    CHECK(j["jk"][1] == "7/2");
    CHECK(j["jk_closure"] == nlohmann::json({0, 7, 7, 12, 14, 16}));
    CHECK(j["bulk_multiplicity"] == 7);
    CHECK(j["galois_invariant"] == false);
    CHECK(j["galois_image_order"] == 2);
    CHECK(j["sum_residues"] == 7);
    CHECK(j["sum_nonresidues"] == 14);
    CHECK(j["ramification_weights"]["4"] == 0);
    CHECK(j["ramification_weights"]["7"] == 1);
    CHECK(j["row"] == "[ 0, 3, 4, 6, 7, 8 ]");
    CHECK(j["average_row"] == "[ 0, 7/2, 7/2, 6, 7, 8 ]");
}

TEST_CASE("error paths") {
    Psl2Context ctx(7);
    CharacterTable table(ctx);

    CHECK_THROWS_AS(is_galois_invariant(VirtualModule(3, Rational(1)), table),
                    std::invalid_argument);
    CHECK_THROWS_AS(module_dimension(table, VirtualModule(2, Rational(1))),
                    std::invalid_argument);
    CHECK_THROWS_AS(fixed_space_dimension(table, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(bulk_multiplicity(6), std::invalid_argument);
    CHECK_THROWS_AS(report_row_order(7, 5), std::logic_error);
    CHECK_THROWS_AS(fixtures::published_gamma_row(37), std::out_of_range);
    CHECK_THROWS_AS(fixtures::published_example_order(13), std::out_of_range);
}

TEST_SUITE_END();
