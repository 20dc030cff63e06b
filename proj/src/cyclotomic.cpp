#include "xn/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "xn/numtheory.hpp"

namespace xn {

namespace {

// Exact division of integer polynomials (ascending coefficients), used to
// peel x^m - 1 down to the cyclotomic factor. Divisor must be monic.
std::vector<Integer> poly_div_exact(const std::vector<Integer>& num,
                                    const std::vector<Integer>& den) {
    std::vector<Integer> rem = num;
    const size_t dn = den.size() - 1;
    if (rem.size() <= dn) throw std::logic_error("poly_div_exact: divisor degree too high");
    std::vector<Integer> quo(rem.size() - dn, Integer(0));
    for (size_t deg = rem.size() - 1; deg >= dn; --deg) {
        Integer coef = rem[deg];
        if (coef != 0) {
            size_t shift = deg - dn;
            quo[shift] = coef;
            for (size_t i = 0; i <= dn; ++i) rem[shift + i] -= coef * den[i];
        }
        if (deg == dn) break;
    }
    for (const auto& r : rem)
        if (r != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
    return quo;
}

// Everything reduction needs for one conductor: the cyclotomic polynomial
// and precomputed integer rows x^e mod Phi_m for e in [phi, m).
struct ConductorData {
    long m = 1;
    long phi = 1;
    std::vector<Integer> poly;                    // Phi_m, ascending, monic
    std::vector<std::vector<Integer>> pow_rows;   // pow_rows[e - phi] = x^e mod Phi_m
};

const ConductorData& conductor_data(long m) {
    static std::map<long, ConductorData> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    // Compute Phi_d for all divisors d of m that are not yet cached, in
    // ascending order, via Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e.
    std::vector<long> divisors;
    for (long d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            divisors.push_back(d);
            if (d != m / d) divisors.push_back(m / d);
        }
    }
    std::sort(divisors.begin(), divisors.end());
    for (long d : divisors) {
        if (cache.count(d)) continue;
        ConductorData cd;
        cd.m = d;
        cd.phi = euler_phi(d);
        if (d == 1) {
            cd.poly = {Integer(-1), Integer(1)};  // x - 1
        } else {
            std::vector<Integer> num(d + 1, Integer(0));
            num[0] = -1;
            num[d] = 1;
            std::vector<Integer> acc = {Integer(1)};  // product of Phi_e, e | d, e < d
            for (long e : divisors) {
                if (e >= d || d % e != 0) continue;
                const auto& pe = cache.at(e).poly;
                std::vector<Integer> next(acc.size() + pe.size() - 1, Integer(0));
                for (size_t i = 0; i < acc.size(); ++i)
                    for (size_t j = 0; j < pe.size(); ++j) next[i + j] += acc[i] * pe[j];
                acc = std::move(next);
            }
            cd.poly = poly_div_exact(num, acc);
        }
        // Power rows: x^phi == -(low part of Phi), then shift-and-reduce.
        if (d > 1) {
            std::vector<Integer> row(cd.phi);
            for (long i = 0; i < cd.phi; ++i) row[i] = -cd.poly[i];
            cd.pow_rows.reserve(d - cd.phi);
            for (long e = cd.phi; e < d; ++e) {
                cd.pow_rows.push_back(row);
                if (e + 1 == d) break;
                // row(x) * x, reduced: the degree-phi coefficient folds back in.
                std::vector<Integer> next(cd.phi, Integer(0));
                Integer top = row[cd.phi - 1];
                for (long i = cd.phi - 1; i >= 1; --i) next[i] = row[i - 1];
                next[0] = 0;
                if (top != 0)
                    for (long i = 0; i < cd.phi; ++i) next[i] += top * cd.pow_rows[0][i];
                row = std::move(next);
            }
        }
        cache.emplace(d, std::move(cd));
    }
    return cache.at(m);
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(long m) {
    if (m <= 0) throw std::invalid_argument("cyclotomic_polynomial: m must be positive");
    return conductor_data(m).poly;
}

Cyclotomic Cyclotomic::reduce(long m, std::vector<Rational> raw) {
    const ConductorData& cd = conductor_data(m);
    Cyclotomic out;
    out.m_ = m;
    out.c_.assign(cd.phi, Rational(0));
    for (long e = 0; e < cd.phi && e < (long)raw.size(); ++e) out.c_[e] = raw[e];
    for (long e = cd.phi; e < (long)raw.size(); ++e) {
        if (raw[e] == 0) continue;
        const auto& row = cd.pow_rows[e - cd.phi];
        for (long i = 0; i < cd.phi; ++i)
            if (row[i] != 0) out.c_[i] += raw[e] * Rational(row[i]);
    }
    for (auto& x : out.c_) x.canonicalize();
    return out;
}

Cyclotomic Cyclotomic::root_of_unity(long m, long e) {
    if (m <= 0) throw std::invalid_argument("root_of_unity: conductor must be positive");
    std::vector<Rational> raw(m, Rational(0));
    raw[mod_pos(e, m)] = 1;
    return reduce(m, std::move(raw));
}

Cyclotomic Cyclotomic::from_terms(long m,
                                  const std::vector<std::pair<long, Rational>>& terms) {
    if (m <= 0) throw std::invalid_argument("from_terms: conductor must be positive");
    std::vector<Rational> raw(m, Rational(0));
    for (const auto& [e, coef] : terms) raw[mod_pos(e, m)] += coef;
    return reduce(m, std::move(raw));
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

std::optional<Rational> Cyclotomic::as_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return std::nullopt;
    return c_[0];
}

Cyclotomic Cyclotomic::lifted_to(long big_m) const {
    if (big_m == m_) return *this;
    if (big_m <= 0 || big_m % m_ != 0)
        throw std::invalid_argument("lifted_to: target conductor must be a multiple");
    long k = big_m / m_;
    std::vector<Rational> raw(big_m, Rational(0));
    for (long e = 0; e < (long)c_.size(); ++e)
        if (c_[e] != 0) raw[e * k] += c_[e];
    return reduce(big_m, std::move(raw));
}

Cyclotomic Cyclotomic::galois(long j) const {
    long jj = mod_pos(j, m_);
    if (m_ == 1) return *this;
    if (gcd_long(jj, m_) != 1)
        throw std::invalid_argument("galois: exponent multiplier not coprime to conductor");
    std::vector<Rational> raw(m_, Rational(0));
    for (long e = 0; e < (long)c_.size(); ++e)
        if (c_[e] != 0) raw[(jj * e) % m_] += c_[e];
    return reduce(m_, std::move(raw));
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
        *this = o;
        return *this;
    }
    if (m_ == o.m_) {
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    long big = lcm_long(m_, o.m_);
    *this = lifted_to(big);
    Cyclotomic rhs = o.lifted_to(big);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    // Scalar and zero factors need no lifting.
    if (is_zero() || o.is_zero()) {
        *this = Cyclotomic();
        return *this;
    }
    if (o.m_ == 1) return *this *= o.c_[0];
    if (m_ == 1) {
        Rational s = c_[0];
        *this = o;
        return *this *= s;
    }
    long big = lcm_long(m_, o.m_);
    Cyclotomic lhs = lifted_to(big);
    Cyclotomic rhs = o.lifted_to(big);
    // Convolve, folding exponents mod the conductor as we go.
    std::vector<Rational> raw(big, Rational(0));
    for (long i = 0; i < (long)lhs.c_.size(); ++i) {
        if (lhs.c_[i] == 0) continue;
        for (long j = 0; j < (long)rhs.c_.size(); ++j) {
            if (rhs.c_[j] == 0) continue;
            long e = i + j;
            if (e >= big) e -= big;
            raw[e] += lhs.c_[i] * rhs.c_[j];
        }
    }
    *this = reduce(big, std::move(raw));
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
    for (auto& x : c_) x *= r;
    return *this;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    if (m_ == o.m_) return c_ == o.c_;
    long big = lcm_long(m_, o.m_);
    return lifted_to(big).c_ == o.lifted_to(big).c_;
}

std::string Cyclotomic::str() const {
    std::ostringstream os;
    bool first = true;
    for (long e = 0; e < (long)c_.size(); ++e) {
        if (c_[e] == 0) continue;
        Rational a = c_[e];
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool unit_coef = (a == 1) && e != 0;
        if (!unit_coef) os << a.get_str();
        if (e != 0) {
            if (!unit_coef) os << "*";
            os << "z" << m_;
            if (e != 1) os << "^" << e;
        }
    }
    if (first) os << "0";
    return os.str();
}

GaussPeriods gauss_periods(long N) {
    if (!is_prime(N) || N == 2)
        throw std::invalid_argument("gauss_periods: N must be an odd prime");
    std::vector<std::pair<long, Rational>> qs, ns;
    for (long a = 1; a < N; ++a) {
        if (legendre(a, N) == 1)
            qs.emplace_back(a, Rational(1));
        else
            ns.emplace_back(a, Rational(1));
    }
    GaussPeriods gp;
    gp.N = N;
    gp.q = Cyclotomic::from_terms(N, qs);
    gp.q_prime = Cyclotomic::from_terms(N, ns);
    return gp;
}

}  // namespace xn
