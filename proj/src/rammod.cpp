#include "xn/rammod.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>

#include <json.hpp>

#include "xn/fixtures.hpp"
#include "xn/numtheory.hpp"

namespace xn {

namespace {

using nlohmann::json;

const ClassLabel kParabolicMain{ClassKind::Parabolic1, 0};
const ClassLabel kParabolicOther{ClassKind::ParabolicEps, 0};

Rational rational_value(const Cyclotomic& value, const char* what) {
    std::optional<Rational> r = value.as_rational();
    if (!r) {
        throw std::logic_error(std::string(what) +
                               " was expected to be rational");
    }
    return *r;
}

// Sum over l in [1, N-1] of l * <Res_{H3} chi_i, psi^l>.
//
// Each inner product is (1/N)(d + vP*P(-l) + vE*P'(-l)) where vP, vE are the
// two parabolic character values and P(x) is the Gauss period over the
// residue class of x (conjugation permutes the two periods: sigma_k fixes
// them for k a residue and swaps them otherwise).  Splitting the l-sum by
// the residue class of -l therefore leaves one exact expression in the two
// periods, evaluated with a couple of products instead of N of them.
Rational weighted_translation_sum(const CharacterTable& table, std::size_t i) {
    const long n = table.N();
    const long total = n * (n - 1) / 2;
    const long s_q = sum_of_quadratic_residues(n);
    // a = sum of l with -l a residue, b = the complementary sum.
    const long a = (n % 4 == 1) ? s_q : total - s_q;
    const long b = total - a;

    const Cyclotomic& v_p = table.value(i, kParabolicMain);
    const Cyclotomic& v_e = table.value(i, kParabolicOther);
    const GaussPeriods periods = gauss_periods(n);

    Cyclotomic acc = (v_p * Rational(a) + v_e * Rational(b)) * periods.q;
    acc += (v_p * Rational(b) + v_e * Rational(a)) * periods.q_prime;

    Rational result(table.irreducibles()[i].dim);
    result *= total;
    result += rational_value(acc, "weighted parabolic period sum");
    result /= n;
    return result;
}

long closed_form_h1(const CharacterTable& table, std::size_t i) {
    const long n = table.N();
    const Irreducible& irr = table.irreducibles()[i];
    switch (irr.kind) {
        case IrrKind::Trivial:
            return 0;
        case IrrKind::HalfA:
        case IrrKind::HalfB:
            switch (n % 8) {
                case 1: return (n - 1) / 4;
                case 5: return (n + 3) / 4;
                case 7: return (n + 1) / 4;
                default: return (n - 3) / 4;  // n = 3 mod 8
            }
        case IrrKind::Steinberg:
            return n % 4 == 1 ? (n - 1) / 2 : (n + 1) / 2;
        case IrrKind::Principal:
            if (n % 4 != 1) return (n + 1) / 2;
            return table.alpha_sign_at_involution(irr.index) == 1 ? (n - 1) / 2
                                                                  : (n + 3) / 2;
        case IrrKind::Discrete:
            if (n % 4 == 1) return (n - 1) / 2;
            return table.beta_sign_at_involution(irr.index) == 1 ? (n + 1) / 2
                                                                 : (n - 3) / 2;
    }
    throw std::logic_error("unreachable irreducible kind");
}

long closed_form_h2(const CharacterTable& table, std::size_t i) {
    const long n = table.N();
    const Irreducible& irr = table.irreducibles()[i];
    switch (irr.kind) {
        case IrrKind::Trivial:
            return 0;
        case IrrKind::HalfA:
        case IrrKind::HalfB:
            return n % 3 == 1 ? (n - 1) / 2 : (n + 1) / 2;
        case IrrKind::Steinberg:
            return n % 3 == 1 ? n - 1 : n + 1;
        case IrrKind::Principal:
            if (n % 3 != 1) return n + 1;
            return table.alpha_trivial_on_cubes(irr.index) ? n - 1 : n + 2;
        case IrrKind::Discrete:
            if (n % 3 == 1) return n - 1;
            return table.beta_trivial_on_cubes(irr.index) ? n + 1 : n - 2;
    }
    throw std::logic_error("unreachable irreducible kind");
}

long closed_form_h3(const CharacterTable& table, std::size_t i) {
    const long n = table.N();
    switch (table.irreducibles()[i].kind) {
        case IrrKind::Trivial:
            return 0;
        case IrrKind::HalfA:
            return sum_of_quadratic_residues(n);
        case IrrKind::HalfB:
            return sum_of_nonresidues(n);
        default:
            return n * (n - 1) / 2;
    }
}

Rational exact_div(long numerator, long denominator) {
    Rational r(numerator, denominator);
    r.canonicalize();
    if (r.get_den() != 1) {
        throw std::logic_error("expected exact division: " +
                               std::to_string(numerator) + "/" +
                               std::to_string(denominator));
    }
    return r;
}

long to_integer(const Rational& r, const char* what) {
    if (r.get_den() != 1) {
        throw std::runtime_error(std::string(what) +
                                 " is not integral: " + r.get_str());
    }
    return r.get_num().get_si();
}

json module_as_integers(const VirtualModule& mults, const char* what) {
    json out = json::array();
    for (const Rational& r : mults) out.push_back(to_integer(r, what));
    return out;
}

json module_as_strings(const VirtualModule& mults) {
    json out = json::array();
    for (const Rational& r : mults) out.push_back(r.get_str());
    return out;
}

}  // namespace

long sum_of_quadratic_residues(long n) {
    const std::vector<long> residues = quadratic_residues(n);
    return std::accumulate(residues.begin(), residues.end(), 0L);
}

long sum_of_nonresidues(long n) {
    return n * (n - 1) / 2 - sum_of_quadratic_residues(n);
}

VirtualModule ramification_module(const CharacterTable& table) {
    const long n = table.N();
    VirtualModule out(table.count());
    for (std::size_t i = 0; i < table.count(); ++i) {
        const std::vector<Rational> r1 = table.restrict_to_subgroup(i, 1);
        const std::vector<Rational> r2 = table.restrict_to_subgroup(i, 2);

        Rational mult = r1[1] / 2;
        mult += (r2[1] + Rational(2) * r2[2]) / 3;
        mult += weighted_translation_sum(table, i) / n;

        if (mult.get_den() != 1 || mult < 0) {
            throw std::runtime_error(
                "ramification multiplicity of " +
                table.irreducibles()[i].str() +
                " is not a nonnegative integer: " + mult.get_str());
        }
        out[i] = mult;
    }
    return out;
}

WeightedInductionTable closed_form_induction_table(const CharacterTable& table) {
    WeightedInductionTable t;
    t.h1.resize(table.count());
    t.h2.resize(table.count());
    t.h3.resize(table.count());
    for (std::size_t i = 0; i < table.count(); ++i) {
        t.h1[i] = closed_form_h1(table, i);
        t.h2[i] = closed_form_h2(table, i);
        t.h3[i] = closed_form_h3(table, i);
    }
    return t;
}

Rational bulk_multiplicity(long n) {
    switch (n % 24) {
        case 1:
        case 13:
            return exact_div(13 * n - 13, 12);
        case 5:
        case 17:
            return exact_div(13 * n - 5, 12);
        case 7:
        case 19:
            return exact_div(13 * n - 7, 12);
        case 11:
        case 23:
            return exact_div(13 * n + 1, 12);
        default:
            throw std::invalid_argument(
                "bulk multiplicity needs a prime level >= 5, got " +
                std::to_string(n));
    }
}

VirtualModule ramification_closed_form(const CharacterTable& table) {
    const long n = table.N();
    const Rational m = bulk_multiplicity(n);

    // Twin multiplicities.  For n = 1 mod 4 the twins share one value that
    // depends on n mod 8; otherwise they split as base + S_Q/n and
    // base + S_N/n with the base keyed on n mod 24.
    Rational twin_a, twin_b;
    if (n % 4 == 1) {
        const Rational shared =
            (n % 8 == 1) ? Rational(m / 2) : Rational((m + 1) / 2);
        twin_a = twin_b = shared;
    } else {
        Rational base;
        switch (n % 24) {
            case 7: base = exact_div(7 * n - 1, 24); break;
            case 11: base = exact_div(7 * n - 5, 24); break;
            case 19: base = exact_div(7 * n - 13, 24); break;
            default: base = exact_div(7 * n + 7, 24); break;  // n = 23 mod 24
        }
        twin_a = base + Rational(sum_of_quadratic_residues(n)) / n;
        twin_b = base + Rational(sum_of_nonresidues(n)) / n;
    }

    VirtualModule out(table.count());
    for (std::size_t i = 0; i < table.count(); ++i) {
        const Irreducible& irr = table.irreducibles()[i];
        switch (irr.kind) {
            case IrrKind::Trivial:
                out[i] = 0;
                break;
            case IrrKind::HalfA:
                out[i] = twin_a;
                break;
            case IrrKind::HalfB:
                out[i] = twin_b;
                break;
            case IrrKind::Steinberg:
                out[i] = m;
                break;
            case IrrKind::Principal: {
                long offset = 0;
                if (n % 4 == 1 &&
                    table.alpha_sign_at_involution(irr.index) != 1) {
                    offset += 1;
                }
                if (n % 3 == 1 && !table.alpha_trivial_on_cubes(irr.index)) {
                    offset += 1;
                }
                out[i] = m + offset;
                break;
            }
            case IrrKind::Discrete: {
                long offset = 0;
                if (n % 4 == 3 &&
                    table.beta_sign_at_involution(irr.index) != 1) {
                    offset -= 1;
                }
                if (n % 3 == 2 && !table.beta_trivial_on_cubes(irr.index)) {
                    offset -= 1;
                }
                out[i] = m + offset;
                break;
            }
        }
    }
    return out;
}

Rational fixed_space_dimension(const CharacterTable& table, std::size_t i,
                               int which) {
    const Psl2Context& ctx = table.context();
    const Rational dim(table.irreducibles()[i].dim);
    switch (which) {
        case 1: {
            const ClassLabel at = ctx.class_of(ctx.h_generator(1));
            const Rational v =
                rational_value(table.value(i, at), "involution value");
            return (dim + v) / 2;
        }
        case 2: {
            // The generator and its square are conjugate, so the two
            // nonidentity terms of the average coincide.
            const ClassLabel at = ctx.class_of(ctx.h_generator(2));
            const Rational v =
                rational_value(table.value(i, at), "order-3 value");
            return (dim + Rational(2) * v) / 3;
        }
        case 3: {
            // Summing either parabolic value over its residue class gives
            // (N-1)/2 copies of vP + vE, which is always rational.
            Rational parabolic_sum = rational_value(
                table.value(i, kParabolicMain) + table.value(i, kParabolicOther),
                "parabolic value sum");
            parabolic_sum *= (table.N() - 1) / 2;
            return (dim + parabolic_sum) / table.N();
        }
        default:
            throw std::invalid_argument("subgroup selector must be 1, 2 or 3");
    }
}

VirtualModule jk_module(const CharacterTable& table) {
    VirtualModule out(table.count());
    for (std::size_t i = 0; i < table.count(); ++i) {
        const Rational dim(table.irreducibles()[i].dim);
        Rational sum = 0;
        for (int which = 1; which <= 3; ++which) {
            sum += (dim - fixed_space_dimension(table, i, which)) / 2;
        }
        // Cyclic classes outside the three stabilizers carry weight 0, so
        // their codimension terms vanish identically and are elided.
        out[i] = sum;
    }
    return out;
}

VirtualModule jk_closure(const CharacterTable& table) {
    VirtualModule out = jk_module(table);
    const Rational scale(table.galois_image_order());
    for (Rational& r : out) r *= scale;
    return out;
}

bool is_galois_invariant(const VirtualModule& mults,
                         const CharacterTable& table) {
    if (mults.size() != table.count()) {
        throw std::invalid_argument("multiplicity vector has wrong length");
    }
    return table.is_galois_stable(mults);
}

Rational module_dimension(const CharacterTable& table,
                          const VirtualModule& mults) {
    if (mults.size() != table.count()) {
        throw std::invalid_argument("multiplicity vector has wrong length");
    }
    Rational total = 0;
    for (std::size_t i = 0; i < table.count(); ++i) {
        total += mults[i] * table.irreducibles()[i].dim;
    }
    return total;
}

RamificationReport ramification_report(const CharacterTable& table) {
    const long n = table.N();
    RamificationReport report;
    report.N = n;
    report.definitional = ramification_module(table);
    report.closed_form = ramification_closed_form(table);
    report.jk = jk_module(table);
    report.jk_closure = jk_closure(table);
    report.galois_invariant = is_galois_invariant(report.definitional, table);
    report.S_Q = sum_of_quadratic_residues(n);
    report.S_N = sum_of_nonresidues(n);
    if (report.S_Q + report.S_N != n * (n - 1) / 2) {
        throw std::logic_error("residue sums do not add up");
    }
    report.m_parameter = bulk_multiplicity(n);
    report.R[2] = 1;
    report.R[3] = 1;
    report.R[n] = 1;
    for (long order : table.context().spurious_subgroup_scan().spurious) {
        report.R[order] = 0;
    }
    report.galois_image_order = table.galois_image_order();
    return report;
}

std::vector<std::size_t> report_row_order(long n, std::size_t count) {
    if (n == 7 || n == 11) {
        std::vector<std::size_t> order = fixtures::published_table_order(n);
        if (order.size() != count) {
            throw std::logic_error("pinned row order has wrong length");
        }
        return order;
    }
    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = i;
    return order;
}

std::string module_row_csv(const VirtualModule& mults,
                           const std::vector<std::size_t>& order) {
    std::string row = "[ ";
    for (std::size_t p = 0; p < order.size(); ++p) {
        if (p != 0) row += ", ";
        row += mults.at(order[p]).get_str();
    }
    row += " ]";
    return row;
}

std::vector<std::string> row_order_names(
    const CharacterTable& table, const std::vector<std::size_t>& order) {
    std::vector<std::string> names;
    names.reserve(order.size());
    for (std::size_t index : order) {
        names.push_back(table.irreducibles().at(index).str());
    }
    return names;
}

std::string report_to_json(const RamificationReport& report,
                           const CharacterTable& table) {
    json j;
    j["level"] = report.N;
    j["group_order"] = table.context().order();

    json names = json::array();
    for (const Irreducible& irr : table.irreducibles()) {
        names.push_back(irr.str());
    }
    j["irreducibles"] = names;

    j["definitional"] = module_as_integers(report.definitional, "definitional");
    j["closed_form"] = module_as_integers(report.closed_form, "closed form");
    j["jk"] = module_as_strings(report.jk);
    j["jk_closure"] = module_as_integers(report.jk_closure, "jk closure");
    j["galois_invariant"] = report.galois_invariant;
    j["galois_image_order"] = report.galois_image_order;
    j["sum_residues"] = report.S_Q;
    j["sum_nonresidues"] = report.S_N;
    j["bulk_multiplicity"] = to_integer(report.m_parameter, "bulk multiplicity");

    json weights = json::object();
    for (const auto& [order, weight] : report.R) {
        weights[std::to_string(order)] = weight;
    }
    j["ramification_weights"] = weights;

    const std::vector<std::size_t> order =
        report_row_order(report.N, table.count());
    json order_json = json::array();
    for (std::size_t index : order) order_json.push_back(index);
    j["row_order"] = order_json;
    j["row_order_names"] = row_order_names(table, order);
    j["row"] = module_row_csv(report.definitional, order);
    j["average_row"] = module_row_csv(report.jk, order);

    return j.dump(2);
}

}  // namespace xn
