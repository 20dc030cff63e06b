#pragma once
// Invariant divisors on the level-N curve and the equivariant refinement of
// the Riemann-Roch space: the group acts on L(D), and for non-special D the
// class [L(D)] is the regular module plus the equivariant degree minus the
// ramification module.  Divisors are nonnegative combinations of the four
// reduced-orbit kinds (trivial / order-2 / order-3 / order-N stabilizer);
// every invariant divisor on the curve is such a combination.

#include <cstddef>
#include <string>
#include <vector>

#include "xn/chartab.hpp"
#include "xn/rammod.hpp"

namespace xn {

// Multiplicities of the four reduced-orbit kinds.  Divisor addition is
// component-wise; parsing merges repeated kinds the same way.
struct GDivisor {
    long free = 0;    // D0: full free orbit (degree |G|)
    long order2 = 0;  // D1: the orbit with order-2 stabilizers (degree |G|/2)
    long order3 = 0;  // D2: the orbit with order-3 stabilizers (degree |G|/3)
    long orderN = 0;  // D3: the orbit with order-N stabilizers (degree |G|/N)

    bool operator==(const GDivisor&) const = default;

    GDivisor operator+(const GDivisor& o) const {
        return {free + o.free, order2 + o.order2, order3 + o.order3,
                orderN + o.orderN};
    }

    bool zero() const {
        return free == 0 && order2 == 0 && order3 == 0 && orderN == 0;
    }
    bool effective() const {
        return free >= 0 && order2 >= 0 && order3 >= 0 && orderN >= 0;
    }
};

// Mini-language: terms "D0".."D3" with optional nonnegative multiplier,
// joined by '+', e.g. "2*D3 + D1".  Repeated kinds accumulate.
// Throws std::invalid_argument on malformed input.
GDivisor parse_divisor(const std::string& spec);
std::string divisor_str(const GDivisor& divisor);

long genus(long n);
long canonical_degree(long n);  // 2g - 2

long divisor_degree(const Psl2Context& ctx, const GDivisor& divisor);

// The regular module [k[G]]: every irreducible with multiplicity = its
// dimension.
VirtualModule regular_module(const CharacterTable& table);

// Equivariant degree: for each orbit kind, the induction of the sum of the
// inverse powers of the ramification character of its stabilizer, additive
// over kinds.  Multiples of the stabilizer order peel off as copies of the
// regular module (those multiples are pullbacks from the base line).
VirtualModule equiv_deg(const CharacterTable& table, const GDivisor& divisor);

// Non-speciality is only ever *established* via sufficient conditions
// (degree above the canonical degree; equivalently, for a pure multiple of
// the order-N orbit, r > (N-6)/6; pullbacks of effective divisors).  A
// false `established` means unknown, not special.
struct NonSpecialityCheck {
    bool established = false;
    std::string reason;
};
NonSpecialityCheck is_nonspecial(const Psl2Context& ctx,
                                 const GDivisor& divisor);

struct RRDecomposition {
    GDivisor divisor;
    VirtualModule equiv_deg;
    VirtualModule l_module;
    long dimension = 0;
};

// [L(D)] = [k[G]] + [equiv_deg(D)] - [ramification module], valid when
// non-speciality has been established (otherwise refuses with
// std::domain_error).  Entries are validated to be nonnegative integers and
// the dimension must come out as deg(D) - g + 1; violations are hard
// failures (std::runtime_error / std::logic_error).
RRDecomposition riemann_roch_module(const CharacterTable& table,
                                    const GDivisor& divisor);

std::string decomposition_to_json(const RRDecomposition& decomposition,
                                  const CharacterTable& table,
                                  const NonSpecialityCheck& check);

}  // namespace xn
