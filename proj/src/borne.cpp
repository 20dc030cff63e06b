#include "xn/borne.hpp"

#include <json.hpp>

#include <regex>
#include <sstream>
#include <stdexcept>

#include "xn/numtheory.hpp"

namespace xn {

namespace {

long checked_level(long n) {
    if (n < 5 || !is_prime(n)) {
        throw std::invalid_argument("level must be a prime >= 5, got " +
                                    std::to_string(n));
    }
    return n;
}

long to_integer(const Rational& value, const char* what) {
    Rational v = value;
    v.canonicalize();
    if (v.get_den() != 1) {
        throw std::runtime_error(std::string(what) +
                                 " is not an integer: " + v.get_str());
    }
    return v.get_num().get_si();
}

void add_scaled(VirtualModule& acc, const VirtualModule& term, long scale) {
    for (size_t i = 0; i < acc.size(); ++i) {
        acc[i] += Rational(scale) * term[i];
    }
}

}  // namespace

GDivisor parse_divisor(const std::string& spec) {
    static const std::regex term_re(
        R"(^\s*(?:(\d+)\s*\*\s*)?D([0123])\s*$)");
    GDivisor divisor;
    size_t start = 0;
    while (start <= spec.size()) {
        const size_t plus = spec.find('+', start);
        const std::string term =
            spec.substr(start, plus == std::string::npos ? std::string::npos
                                                         : plus - start);
        start = plus == std::string::npos ? spec.size() + 1 : plus + 1;
        std::smatch match;
        if (!std::regex_match(term, match, term_re)) {
            throw std::invalid_argument(
                "malformed divisor term '" + term +
                "' (expected e.g. \"2*D3\" or \"D1\")");
        }
        long mult = 1;
        if (match[1].matched) {
            try {
                mult = std::stol(match[1].str());
            } catch (const std::out_of_range&) {
                throw std::invalid_argument("divisor multiplier out of range: " +
                                            match[1].str());
            }
        }
        switch (match[2].str()[0]) {
            case '0': divisor.free += mult; break;
            case '1': divisor.order2 += mult; break;
            case '2': divisor.order3 += mult; break;
            case '3': divisor.orderN += mult; break;
        }
    }
    return divisor;
}

std::string divisor_str(const GDivisor& divisor) {
    std::ostringstream out;
    bool first = true;
    const long mults[4] = {divisor.free, divisor.order2, divisor.order3,
                           divisor.orderN};
    for (int kind = 0; kind < 4; ++kind) {
        if (mults[kind] == 0) {
            continue;
        }
        if (!first) {
            out << " + ";
        }
        if (mults[kind] != 1) {
            out << mults[kind] << "*";
        }
        out << "D" << kind;
        first = false;
    }
    if (first) {
        out << "0";
    }
    return out.str();
}

long genus(long n) {
    checked_level(n);
    return 1 + (n - 6) * (n * n - 1) / 24;
}

long canonical_degree(long n) { return 2 * genus(n) - 2; }

long divisor_degree(const Psl2Context& ctx, const GDivisor& divisor) {
    if (!divisor.effective()) {
        throw std::invalid_argument("divisor multiplicities must be >= 0");
    }
    const long order = ctx.order();
    return divisor.free * order + divisor.order2 * (order / 2) +
           divisor.order3 * (order / 3) + divisor.orderN * (order / ctx.N());
}

VirtualModule regular_module(const CharacterTable& table) {
    VirtualModule result;
    result.reserve(table.count());
    for (const Irreducible& irr : table.irreducibles()) {
        result.emplace_back(irr.dim);
    }
    return result;
}

VirtualModule equiv_deg(const CharacterTable& table, const GDivisor& divisor) {
    if (!divisor.effective()) {
        throw std::invalid_argument("divisor multiplicities must be >= 0");
    }
    const long n = table.N();
    VirtualModule result(table.count(), Rational(0));

    // Whole stabilizer-order multiples of an orbit are pullbacks of points on
    // the quotient line; each contributes one copy of the regular module.
    const long regular_copies = divisor.free + divisor.order2 / 2 +
                                divisor.order3 / 3 + divisor.orderN / n;
    if (regular_copies > 0) {
        add_scaled(result, regular_module(table), regular_copies);
    }

    // Order-2 remainder: one induction of the faithful character of the
    // distinguished involution's subgroup.
    if (divisor.order2 % 2 != 0) {
        add_scaled(result, table.decompose(table.induce_linear(1, 1)), 1);
    }

    // Order-3 remainder: the two nontrivial characters of the order-3
    // subgroup induce identically, so remainder r contributes r copies.
    if (const long r = divisor.order3 % 3; r != 0) {
        add_scaled(result, table.decompose(table.induce_linear(2, 1)), r);
    }

    // Order-N remainder s: sum of the inductions of the inverse powers
    // theta^(-1), ..., theta^(-s) of the local ramification character.  Each
    // induction contains every irreducible except the trivial one exactly
    // once, except that it picks exactly one of the twins: the one matching
    // the quadratic character of the exponent N - l.
    if (const long s = divisor.orderN % n; s != 0) {
        long residue_hits = 0;
        for (long l = 1; l <= s; ++l) {
            if (legendre(n - l, n) == 1) {
                ++residue_hits;
            }
        }
        const auto& irreps = table.irreducibles();
        for (size_t i = 0; i < irreps.size(); ++i) {
            switch (irreps[i].kind) {
                case IrrKind::Trivial: break;
                case IrrKind::HalfA: result[i] += Rational(residue_hits); break;
                case IrrKind::HalfB: result[i] += Rational(s - residue_hits); break;
                default: result[i] += Rational(s); break;
            }
        }
    }
    return result;
}

NonSpecialityCheck is_nonspecial(const Psl2Context& ctx,
                                 const GDivisor& divisor) {
    const long n = ctx.N();
    const long deg = divisor_degree(ctx, divisor);
    const long canon = canonical_degree(n);
    // Every sufficient criterion in use reduces to the degree bound:
    //   * a pure multiple r*D3 with 6r > N - 6 has degree r|G|/N above
    //     (N-6)|G|/(6N) = 2g - 2, and conversely;
    //   * a nonzero pullback of an effective divisor has degree at least
    //     |G| > 2g - 2.
    // The zero divisor (the degenerate pullback) really is special in genus
    // >= 1, so it must stay un-established.
    if (deg > canon) {
        std::ostringstream why;
        why << "degree " << deg << " exceeds the canonical degree " << canon;
        const bool pure_order_n = divisor.orderN > 0 && divisor.free == 0 &&
                                  divisor.order2 == 0 && divisor.order3 == 0;
        if (pure_order_n) {
            why << "; multiplicity " << divisor.orderN
                << " of the order-" << n << " orbit is above the threshold ("
                << n << " - 6)/6";
        }
        if (divisor.order2 % 2 == 0 && divisor.order3 % 3 == 0 &&
            divisor.orderN % n == 0) {
            why << "; the divisor is the pullback of an effective divisor of "
                   "degree "
                << divisor.free + divisor.order2 / 2 + divisor.order3 / 3 +
                       divisor.orderN / n
                << " on the quotient line";
        }
        return {true, why.str()};
    }
    std::ostringstream why;
    why << "degree " << deg << " does not exceed the canonical degree "
        << canon << " and no sufficient criterion applies";
    return {false, why.str()};
}

RRDecomposition riemann_roch_module(const CharacterTable& table,
                                    const GDivisor& divisor) {
    const NonSpecialityCheck check = is_nonspecial(table.context(), divisor);
    if (!check.established) {
        throw std::domain_error("cannot certify the invariant decomposition of L(" +
                                divisor_str(divisor) + ") at level " +
                                std::to_string(table.N()) + ": " +
                                check.reason);
    }

    RRDecomposition result;
    result.divisor = divisor;
    result.equiv_deg = equiv_deg(table, divisor);

    const VirtualModule gamma = ramification_module(table);
    const VirtualModule regular = regular_module(table);
    result.l_module.resize(table.count());
    for (size_t i = 0; i < table.count(); ++i) {
        Rational entry = regular[i] + result.equiv_deg[i] - gamma[i];
        entry.canonicalize();
        const long value =
            to_integer(entry, "Riemann-Roch module multiplicity");
        if (value < 0) {
            throw std::runtime_error(
                "negative multiplicity " + std::to_string(value) + " for " +
                table.irreducibles()[i].str() + " in L(" +
                divisor_str(divisor) + ") at level " +
                std::to_string(table.N()));
        }
        result.l_module[i] = entry;
    }

    const long deg = divisor_degree(table.context(), divisor);
    const long expected = deg - genus(table.N()) + 1;
    result.dimension =
        to_integer(module_dimension(table, result.l_module), "dimension");
    if (result.dimension != expected) {
        throw std::logic_error(
            "dimension " + std::to_string(result.dimension) +
            " of L(" + divisor_str(divisor) + ") disagrees with deg - g + 1 = " +
            std::to_string(expected));
    }
    return result;
}

std::string decomposition_to_json(const RRDecomposition& decomposition,
                                  const CharacterTable& table,
                                  const NonSpecialityCheck& check) {
    nlohmann::json doc;
    doc["level"] = table.N();
    doc["divisor"] = divisor_str(decomposition.divisor);
    doc["degree"] = divisor_degree(table.context(), decomposition.divisor);
    doc["genus"] = genus(table.N());
    doc["nonspecial"] = check.established;
    doc["reason"] = check.reason;

    std::vector<std::string> names;
    std::vector<long> degs, ls;
    for (size_t i = 0; i < table.count(); ++i) {
        names.push_back(table.irreducibles()[i].str());
        degs.push_back(to_integer(decomposition.equiv_deg[i],
                                  "equivariant degree entry"));
        ls.push_back(to_integer(decomposition.l_module[i],
                                "Riemann-Roch module entry"));
    }
    doc["irreducibles"] = names;
    doc["equiv_deg"] = degs;
    doc["L_module"] = ls;
    doc["dim"] = decomposition.dimension;
    return doc.dump(2);
}

}  // namespace xn
