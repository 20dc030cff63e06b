// Exact arithmetic in cyclotomic fields Q(zeta_m).
//
// Elements are stored in a canonical form: the coefficient vector of the
// residue modulo the m-th cyclotomic polynomial, so every field element has
// exactly one representation at a given conductor and equality is vector
// equality. Mixed-conductor operands are lifted to the lcm. All coefficients
// are arbitrary-precision rationals; nothing here ever touches floating
// point.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace xn {

using Integer = mpz_class;
using Rational = mpq_class;

// Coefficients of the m-th cyclotomic polynomial, ascending degree,
// length phi(m)+1, monic. Computed once per conductor and cached.
const std::vector<Integer>& cyclotomic_polynomial(long m);

class Cyclotomic {
public:
    Cyclotomic() : m_(1), c_(1, Rational(0)) {}
    explicit Cyclotomic(const Rational& r) : m_(1), c_(1, r) {}
    explicit Cyclotomic(long n) : m_(1), c_(1, Rational(n)) {}

    // zeta_m^e (e taken mod m).
    static Cyclotomic root_of_unity(long m, long e);

    // Sum of coeff * zeta_m^e terms; exponents may repeat and be negative.
    static Cyclotomic from_terms(long m,
                                 const std::vector<std::pair<long, Rational>>& terms);

    long conductor() const { return m_; }
    // Canonical coefficients c[e] of sum c[e]*zeta_m^e, size phi(m).
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    // Rational value iff the canonical form is supported on exponent 0 only.
    std::optional<Rational> as_rational() const;

    // Reinterpret at a conductor that is a multiple of the current one.
    Cyclotomic lifted_to(long big_m) const;

    // Galois action zeta_m^e -> zeta_m^{j e}; j must be coprime to the
    // conductor (j may be negative; j = -1 is complex conjugation).
    Cyclotomic galois(long j) const;
    Cyclotomic conjugate() const { return galois(-1); }

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rational& r);

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
    friend Cyclotomic operator*(const Rational& r, Cyclotomic a) { return a *= r; }

    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    // Debug rendering, e.g. "z7 + z7^2 + z7^4" or "-1/2".
    std::string str() const;

private:
    long m_;                   // conductor
    std::vector<Rational> c_;  // canonical coefficients, size phi(m_)

    static Cyclotomic reduce(long m, std::vector<Rational> raw);  // raw size m
};

// The two Gauss periods of the quadratic subfield of Q(zeta_N):
// q = sum over quadratic residues a of zeta_N^a, q_prime over non-residues.
// Satisfy q + q' = -1 and q q' = (1 -+ N)/4 according to N mod 4.
struct GaussPeriods {
    long N;
    Cyclotomic q;
    Cyclotomic q_prime;
};

GaussPeriods gauss_periods(long N);

}  // namespace xn
