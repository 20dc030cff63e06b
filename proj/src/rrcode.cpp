#include "xn/rrcode.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace xn {

// --- FieldPoly -------------------------------------------------------------

void FieldPoly::add_term(int i, int m, long c) {
    if (i < 0 || m < 0) {
        throw std::invalid_argument("FieldPoly: negative exponent");
    }
    c = field_.reduce(c);
    if (c == 0) return;
    std::array<int, 2> key{i, m};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
    } else {
        it->second = field_.add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
}

FieldPoly FieldPoly::plus(const FieldPoly& o) const {
    FieldPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e[0], e[1], c);
    return r;
}

FieldPoly FieldPoly::times(const FieldPoly& o) const {
    FieldPoly r(field_);
    for (const auto& [e, c] : terms_) {
        for (const auto& [f, d] : o.terms_) {
            r.add_term(e[0] + f[0], e[1] + f[1], field_.mul(c, d));
        }
    }
    return r;
}

FieldPoly FieldPoly::times_scalar(long c) const {
    FieldPoly r(field_);
    for (const auto& [e, d] : terms_) r.add_term(e[0], e[1], field_.mul(field_.reduce(c), d));
    return r;
}

FieldPoly FieldPoly::derivative(int var) const {
    if (var != 0 && var != 1) throw std::invalid_argument("FieldPoly: bad variable");
    FieldPoly r(field_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        std::array<int, 2> f = e;
        --f[var];
        r.add_term(f[0], f[1], field_.mul(c, field_.reduce(e[var])));
    }
    return r;
}

long FieldPoly::evaluate(long x0, long y0) const {
    long acc = 0;
    for (const auto& [e, c] : terms_) {
        long t = field_.mul(c, field_.pow(x0, e[0]));
        t = field_.mul(t, field_.pow(y0, e[1]));
        acc = field_.add(acc, t);
    }
    return acc;
}

int FieldPoly::degree_in(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

std::string FieldPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& e = it->first;
        long c = it->second;
        if (!first) out << " + ";
        first = false;
        const bool constant = e[0] == 0 && e[1] == 0;
        if (c != 1 || constant) {
            out << c;
            if (!constant) out << "*";
        }
        bool star = false;
        if (e[0] > 0) {
            out << "x";
            if (e[0] > 1) out << "^" << e[0];
            star = true;
        }
        if (e[1] > 0) {
            if (star) out << "*";
            out << "y";
            if (e[1] > 1) out << "^" << e[1];
        }
    }
    return out.str();
}

std::string CurveFunction::str() const {
    return "(" + numerator.str() + ") / (" + denominator.str() + ")";
}

long DivisorOnCurve::degree() const {
    long d = 0;
    for (const auto& [p, m] : coefficients) d += m;
    return d;
}

// --- local series machinery -------------------------------------------------

namespace {

using Elem = std::vector<long>;

// GF(p)[u] / (h(u)) for a monic h of degree 1..3 without repeated roots;
// the residue field of a closed point of the fiber.  Elements are
// coefficient vectors of length deg h.
struct Algebra {
    PrimeField F;
    std::vector<long> mod;  // monic, ascending, size d + 1

    Algebra(const PrimeField& f, std::vector<long> m) : F(f), mod(std::move(m)) {}

    std::size_t d() const { return mod.size() - 1; }
    Elem zero() const { return Elem(d(), 0); }
    Elem scalar(long c) const {
        Elem e(d(), 0);
        e[0] = F.reduce(c);
        return e;
    }
    // The class of u (the x-coordinate of the closed point).
    Elem gen() const {
        if (d() == 1) return scalar(F.neg(mod[0]));
        Elem e(d(), 0);
        e[1] = 1;
        return e;
    }
    bool is_zero(const Elem& a) const {
        return std::all_of(a.begin(), a.end(), [](long v) { return v == 0; });
    }
    Elem add(const Elem& a, const Elem& b) const {
        Elem r(d());
        for (std::size_t i = 0; i < d(); ++i) r[i] = F.add(a[i], b[i]);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(d());
        for (std::size_t i = 0; i < d(); ++i) r[i] = F.sub(a[i], b[i]);
        return r;
    }
    Elem smul(const Elem& a, long c) const {
        Elem r(d());
        for (std::size_t i = 0; i < d(); ++i) r[i] = F.mul(a[i], c);
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        std::vector<long> buf(2 * d() - 1, 0);
        for (std::size_t i = 0; i < d(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < d(); ++j) {
                buf[i + j] = F.add(buf[i + j], F.mul(a[i], b[j]));
            }
        }
        for (std::size_t k = buf.size(); k-- > d();) {
            long c = buf[k];
            if (c == 0) continue;
            for (std::size_t j = 0; j <= d(); ++j) {
                buf[k - d() + j] = F.sub(buf[k - d() + j], F.mul(c, mod[j]));
            }
        }
        return Elem(buf.begin(), buf.begin() + d());
    }
    Elem inv(const Elem& a) const {
        if (is_zero(a)) throw std::logic_error("Algebra: inverse of zero");
        // extended Euclid over GF(p)[u]
        auto trim = [](std::vector<long> v) {
            while (!v.empty() && v.back() == 0) v.pop_back();
            return v;
        };
        std::vector<long> r0 = mod, r1 = trim(a);
        std::vector<long> s0{}, s1{1};
        while (r1.size() > 1) {
            // divide r0 by r1
            std::vector<long> q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
            std::vector<long> rem = r0;
            long lead_inv = F.inv(r1.back());
            for (std::size_t k = q.size(); k-- > 0;) {
                if (rem.size() < r1.size() + k) continue;
                long f = F.mul(rem[r1.size() - 1 + k], lead_inv);
                q[k] = f;
                for (std::size_t j = 0; j < r1.size(); ++j) {
                    rem[j + k] = F.sub(rem[j + k], F.mul(f, r1[j]));
                }
            }
            rem = trim(rem);
            // s2 = s0 - q * s1
            std::vector<long> qs(q.size() + s1.size(), 0);
            for (std::size_t i = 0; i < q.size(); ++i) {
                for (std::size_t j = 0; j < s1.size(); ++j) {
                    qs[i + j] = F.add(qs[i + j], F.mul(q[i], s1[j]));
                }
            }
            std::vector<long> s2(std::max(s0.size(), qs.size()), 0);
            for (std::size_t i = 0; i < s2.size(); ++i) {
                long a0 = i < s0.size() ? s0[i] : 0;
                long b0 = i < qs.size() ? qs[i] : 0;
                s2[i] = F.sub(a0, b0);
            }
            r0 = trim(r1);
            r1 = rem;
            s0 = s1;
            s1 = trim(s2);
        }
        if (r1.empty()) throw std::logic_error("Algebra: zero divisor");
        long c_inv = F.inv(r1[0]);
        Elem out = zero();
        for (std::size_t i = 0; i < s1.size() && i < d(); ++i) {
            out[i] = F.mul(s1[i], c_inv);
        }
        return out;
    }
};

// Truncated Laurent series sum_k c[k] t^(off + k); coefficients with
// exponent >= off + c.size() are unknown (absolute precision off + size).
struct Ser {
    long off = 0;
    std::vector<Elem> c;

    long prec() const { return off + static_cast<long>(c.size()); }
};

void ser_trim(const Algebra& A, Ser& s) {
    std::size_t k = 0;
    while (k < s.c.size() && A.is_zero(s.c[k])) ++k;
    if (k > 0) {
        s.off += static_cast<long>(k);
        s.c.erase(s.c.begin(), s.c.begin() + static_cast<long>(k));
    }
}

Ser ser_exact(const Algebra& A, long off, std::vector<Elem> coeffs, long len) {
    Ser s;
    s.off = off;
    s.c = std::move(coeffs);
    while (static_cast<long>(s.c.size()) < len) s.c.push_back(A.zero());
    return s;
}

Ser ser_add(const Algebra& A, const Ser& a, const Ser& b) {
    long off = std::min(a.off, b.off);
    long prec = std::min(a.prec(), b.prec());
    Ser r;
    r.off = off;
    if (prec > off) {
        r.c.assign(static_cast<std::size_t>(prec - off), A.zero());
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            long e = a.off + static_cast<long>(i);
            if (e < prec) r.c[e - off] = A.add(r.c[e - off], a.c[i]);
        }
        for (std::size_t i = 0; i < b.c.size(); ++i) {
            long e = b.off + static_cast<long>(i);
            if (e < prec) r.c[e - off] = A.add(r.c[e - off], b.c[i]);
        }
    } else {
        r.off = prec;
    }
    ser_trim(A, r);
    return r;
}

Ser ser_sub(const Algebra& A, const Ser& a, const Ser& b) {
    Ser nb = b;
    for (auto& e : nb.c) e = A.sub(A.zero(), e);
    return ser_add(A, a, nb);
}

Ser ser_scale(const Algebra& A, const Ser& a, const Elem& c) {
    Ser r = a;
    for (auto& e : r.c) e = A.mul(e, c);
    ser_trim(A, r);
    return r;
}

Ser ser_mul(const Algebra& A, const Ser& a, const Ser& b) {
    Ser r;
    if (a.c.empty() || b.c.empty()) {
        r.off = a.off + b.off;
        return r;
    }
    std::size_t len = std::min(a.c.size(), b.c.size());
    r.off = a.off + b.off;
    r.c.assign(len, A.zero());
    for (std::size_t i = 0; i < a.c.size() && i < len; ++i) {
        if (A.is_zero(a.c[i])) continue;
        for (std::size_t j = 0; j < b.c.size() && i + j < len; ++j) {
            r.c[i + j] = A.add(r.c[i + j], A.mul(a.c[i], b.c[j]));
        }
    }
    ser_trim(A, r);
    return r;
}

// Multiplicative inverse; the series must have a unit leading coefficient
// after trimming.
Ser ser_inv(const Algebra& A, Ser a) {
    ser_trim(A, a);
    if (a.c.empty()) throw std::logic_error("series inverse of zero");
    Ser r;
    r.off = -a.off;
    r.c.assign(a.c.size(), A.zero());
    Elem lead_inv = A.inv(a.c[0]);
    r.c[0] = lead_inv;
    for (std::size_t k = 1; k < a.c.size(); ++k) {
        Elem acc = A.zero();
        for (std::size_t j = 1; j <= k; ++j) {
            if (j < a.c.size()) acc = A.add(acc, A.mul(a.c[j], r.c[k - j]));
        }
        r.c[k] = A.sub(A.zero(), A.mul(lead_inv, acc));
    }
    return r;
}

std::optional<long> ser_val(const Algebra& A, const Ser& s) {
    for (std::size_t i = 0; i < s.c.size(); ++i) {
        if (!A.is_zero(s.c[i])) return s.off + static_cast<long>(i);
    }
    return std::nullopt;
}

// Coefficient of t^k; exact zero below the offset, error beyond precision.
Elem coefficient_at(const Algebra& A, const Ser& s, long k) {
    if (k < s.off) return A.zero();
    if (k >= s.prec()) throw std::logic_error("series coefficient beyond precision");
    return s.c[static_cast<std::size_t>(k - s.off)];
}

// Powers base^0 .. base^upto, all over the same algebra.
std::vector<Ser> power_table(const Algebra& A, const Ser& base, int upto) {
    std::vector<Ser> p;
    p.reserve(static_cast<std::size_t>(upto) + 1);
    long len = static_cast<long>(base.c.size()) + 8;
    p.push_back(ser_exact(A, 0, {A.scalar(1)}, len));
    for (int j = 1; j <= upto; ++j) p.push_back(ser_mul(A, p.back(), base));
    return p;
}

// P(X(t), Y(t)) accumulated with the x-powers factored out, so the cost is
// one series product per x-degree rather than per term.
Ser poly_on_series(const Algebra& A, const FieldPoly& P, const std::vector<Ser>& xp,
                   const std::vector<Ser>& yp) {
    Ser total;
    total.off = 0;
    total.c.clear();
    bool any = false;
    int degx = P.degree_in(0);
    for (int i = 0; i <= degx; ++i) {
        Ser inner;
        bool inner_any = false;
        for (const auto& [e, c] : P.terms()) {
            if (e[0] != i) continue;
            Ser term = ser_scale(A, yp[static_cast<std::size_t>(e[1])], A.scalar(c));
            inner = inner_any ? ser_add(A, inner, term) : term;
            inner_any = true;
        }
        if (!inner_any) continue;
        Ser part = ser_mul(A, xp[static_cast<std::size_t>(i)], inner);
        total = any ? ser_add(A, total, part) : part;
        any = true;
    }
    if (!any) {
        Ser zero;
        zero.off = 1 << 20;  // exact zero: nothing known is never queried
        return zero;
    }
    return total;
}

// Solves G = 0 for one variable as a series in t = (other variable) - v0,
// starting at the simple root u0: requires G(u0, v0) = 0 with an invertible
// partial derivative there.  solve_var 0 returns x(t) with y = v0 + t;
// solve_var 1 returns y(t) with x = v0 + t.
Ser solve_branch(const Algebra& A, const FieldPoly& G, int solve_var, const Elem& u0,
                 long v0, long len) {
    FieldPoly Gd = G.derivative(solve_var);
    Ser T = ser_exact(A, 0, {A.scalar(v0), A.scalar(1)}, len + 8);
    Ser U = ser_exact(A, 0, {u0}, 1);
    auto eval_pair = [&](const FieldPoly& P, const Ser& u) {
        long plen = static_cast<long>(u.c.size());
        Ser Tcut = ser_exact(A, 0, {A.scalar(v0), A.scalar(1)}, plen);
        const Ser& X = solve_var == 0 ? u : Tcut;
        const Ser& Y = solve_var == 0 ? Tcut : u;
        auto xp = power_table(A, X, P.degree_in(0));
        auto yp = power_table(A, Y, P.degree_in(1));
        return poly_on_series(A, P, xp, yp);
    };
    {
        Ser g0 = eval_pair(G, U);
        if (ser_val(A, g0).has_value()) {
            throw std::logic_error("solve_branch: base point is not on the locus");
        }
        Ser d0 = eval_pair(Gd, U);
        auto dv = ser_val(A, d0);
        if (!dv.has_value() || *dv != 0) {
            throw std::logic_error("solve_branch: branch is not simple here");
        }
    }
    long cur = 1;
    while (cur < len) {
        cur = std::min(2 * cur, len);
        while (static_cast<long>(U.c.size()) < cur) U.c.push_back(A.zero());
        Ser g = eval_pair(G, U);
        Ser d = eval_pair(Gd, U);
        U = ser_sub(A, U, ser_mul(A, g, ser_inv(A, d)));
        // keep the representation anchored at offset 0 with exactly cur terms
        Ser fixed;
        fixed.off = 0;
        fixed.c.assign(static_cast<std::size_t>(cur), A.zero());
        for (std::size_t i = 0; i < U.c.size(); ++i) {
            long e = U.off + static_cast<long>(i);
            if (e >= 0 && e < cur) fixed.c[static_cast<std::size_t>(e)] = U.c[i];
        }
        U = fixed;
    }
    Ser residual = eval_pair(G, U);
    if (ser_val(A, residual).has_value()) {
        throw std::logic_error("solve_branch: Newton iteration failed to converge");
    }
    (void)T;
    return U;
}

// Expansion of the affine coordinate functions (x/z, y/z) at one closed
// point, in a local parameter t.
struct LocalSeries {
    Algebra A;
    Ser xs, ys;
};

FieldPoly affine_curve_poly(const PrimeField& field) {
    FieldPoly F(field);
    F.add_term(3, 1, 1);
    F.add_term(0, 3, 1);
    F.add_term(1, 0, 1);
    return F;
}

// Finite rational point (x0 : y0 : 1); the parameter is y - y0 where the
// fiber is transverse, x - x0 otherwise.
LocalSeries finite_chart(const PrimeField& field, long x0, long y0, long len) {
    Algebra A(field, {0, 1});
    FieldPoly F = affine_curve_poly(field);
    long fx = F.derivative(0).evaluate(x0, y0);
    LocalSeries L{A, {}, {}};
    if (fx != 0) {
        L.xs = solve_branch(A, F, 0, A.scalar(x0), y0, len);
        L.ys = ser_exact(A, 0, {A.scalar(y0), A.scalar(1)}, len + 8);
    } else {
        long fy = F.derivative(1).evaluate(x0, y0);
        if (fy == 0) throw std::logic_error("finite_chart: singular point");
        L.ys = solve_branch(A, F, 1, A.scalar(y0), x0, len);
        L.xs = ser_exact(A, 0, {A.scalar(x0), A.scalar(1)}, len + 8);
    }
    return L;
}

// Closed point of the fiber y = a with residue field GF(p)[u]/(h); h is a
// transverse factor of the fiber cubic.
LocalSeries fiber_chart(const PrimeField& field, const std::vector<long>& h, long a,
                        long len) {
    Algebra A(field, h);
    FieldPoly F = affine_curve_poly(field);
    LocalSeries L{A, {}, {}};
    L.xs = solve_branch(A, F, 0, A.gen(), a, len);
    L.ys = ser_exact(A, 0, {A.scalar(a), A.scalar(1)}, len + 8);
    return L;
}

// (1 : 0 : 0): chart x = 1 with curve y' + y'^3 z' + z'^3 = 0, parameter
// t = z'; here x/z = 1/t and y/z = y'(t)/t (so v(x) = -1, v(y) = 2).
LocalSeries p100_chart(const PrimeField& field, long len) {
    Algebra A(field, {0, 1});
    FieldPoly G(field);
    G.add_term(1, 0, 1);  // y'
    G.add_term(3, 1, 1);  // y'^3 z'
    G.add_term(0, 3, 1);  // z'^3
    Ser yprime = solve_branch(A, G, 0, A.scalar(0), 0, len);
    Ser tinv = ser_exact(A, -1, {A.scalar(1)}, len + 8);
    LocalSeries L{A, {}, {}};
    L.xs = tinv;
    L.ys = ser_mul(A, yprime, tinv);
    return L;
}

// (0 : 1 : 0): chart y = 1 with curve x'^3 + z' + z'^3 x' = 0, parameter
// t = x'; here x/z = t/z'(t) and y/z = 1/z'(t) (so v(x) = -2, v(y) = -3).
LocalSeries p010_chart(const PrimeField& field, long len) {
    Algebra A(field, {0, 1});
    FieldPoly G(field);
    G.add_term(1, 0, 1);  // z'
    G.add_term(0, 3, 1);  // x'^3
    G.add_term(3, 1, 1);  // z'^3 x'
    Ser zprime = solve_branch(A, G, 0, A.scalar(0), 0, len);
    Ser zinv = ser_inv(A, zprime);
    Ser t = ser_exact(A, 1, {A.scalar(1)}, len + 8);
    LocalSeries L{A, {}, {}};
    L.xs = ser_mul(A, t, zinv);
    L.ys = zinv;
    return L;
}

bool is_infinity_100(const ProjectivePoint& p) {
    return p.coords == std::vector<long>{1, 0, 0};
}
bool is_infinity_010(const ProjectivePoint& p) {
    return p.coords == std::vector<long>{0, 1, 0};
}

bool point_on_quartic(const PrimeField& field, const ProjectivePoint& p) {
    if (p.coords.size() != 3) return false;
    long x = p.coords[0], y = p.coords[1], z = p.coords[2];
    long v = field.add(field.mul(field.mul(field.mul(x, x), x), y),
                       field.mul(field.mul(field.mul(y, y), y), z));
    v = field.add(v, field.mul(field.mul(field.mul(z, z), z), x));
    return v == 0;
}

LocalSeries build_local(const KleinContext& ctx, const ProjectivePoint& p, long len) {
    if (is_infinity_100(p)) return p100_chart(ctx.field, len);
    if (is_infinity_010(p)) return p010_chart(ctx.field, len);
    return finite_chart(ctx.field, p.coords[0], p.coords[1], len);
}

// Cached expansion of a point together with coordinate power tables.
struct PointExpansion {
    LocalSeries chart;
    std::vector<Ser> xp, yp;
};

PointExpansion expand_point(const KleinContext& ctx, const ProjectivePoint& p, long len,
                            int degx, int degy) {
    PointExpansion pe{build_local(ctx, p, len), {}, {}};
    pe.xp = power_table(pe.chart.A, pe.chart.xs, degx);
    pe.yp = power_table(pe.chart.A, pe.chart.ys, degy);
    return pe;
}

std::optional<long> try_valuation(const PointExpansion& pe, const FieldPoly& num,
                                  const FieldPoly& den) {
    Ser ns = poly_on_series(pe.chart.A, num, pe.xp, pe.yp);
    Ser ds = poly_on_series(pe.chart.A, den, pe.xp, pe.yp);
    auto vn = ser_val(pe.chart.A, ns);
    auto vd = ser_val(pe.chart.A, ds);
    if (!vn || !vd) return std::nullopt;
    return *vn - *vd;
}

constexpr long kPrecisionStart = 16;
constexpr long kPrecisionCap = 512;

// --- linear algebra over GF(p) ----------------------------------------------

// In-place reduced row echelon form; returns the pivot columns in order.
std::vector<std::size_t> rref(const PrimeField& F, std::vector<std::vector<long>>& rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        long inv = F.inv(rows[r][c]);
        for (std::size_t j = c; j < cols; ++j) rows[r][j] = F.mul(rows[r][j], inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            long f = rows[i][c];
            for (std::size_t j = c; j < cols; ++j) {
                rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
            }
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(pivots.size());
    return pivots;
}

// Canonical kernel basis (one vector per free column, ascending).
std::vector<std::vector<long>> kernel_basis(const PrimeField& F,
                                            std::vector<std::vector<long>> rows,
                                            std::size_t cols) {
    for (const auto& row : rows) {
        if (row.size() != cols) throw std::logic_error("kernel_basis: ragged matrix");
    }
    auto pivots = rref(F, rows);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<long>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<long> v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            v[pivots[i]] = F.neg(rows[i][f]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

long vector_weight(const std::vector<long>& v) {
    long w = 0;
    for (long x : v) w += x != 0;
    return w;
}

// --- Riemann-Roch candidate assembly ----------------------------------------

struct Monomial {
    int i;
    int m;
};

// One orbit point sits over each finite fiber value; returns its x.
long orbit_x_over(const KleinContext& ctx, long a) {
    long found = -1;
    for (const auto& p : ctx.orbit_points) {
        if (p.coords[2] == 1 && p.coords[1] == a) {
            if (found != -1) throw std::logic_error("two orbit points over one fiber");
            found = p.coords[0];
        }
    }
    if (found == -1) throw std::logic_error("no orbit point over fiber value");
    return found;
}

// Transverse factors (monic, degree 1 or 2) of the non-orbit part of the
// fiber x-polynomial a x^3 + x + a^3 over GF(p).
std::vector<std::vector<long>> non_orbit_fiber_factors(const PrimeField& F, long a,
                                                       long x0) {
    std::vector<std::vector<long>> out;
    if (a == 0) return out;  // fiber polynomial is x itself: orbit point only
    // synthetic division of a x^3 + 0 x^2 + 1 x + a^3 by (x - x0)
    long a3 = F.mul(F.mul(a, a), a);
    long q2 = a;
    long q1 = F.mul(q2, x0);
    long q0 = F.add(1, F.mul(q1, x0));
    long rem = F.add(a3, F.mul(q0, x0));
    if (rem != 0) throw std::logic_error("orbit point is not on its fiber");
    // monic quadratic x^2 + B x + C
    long ai = F.inv(q2);
    long B = F.mul(q1, ai), C = F.mul(q0, ai);
    long disc = F.sub(F.mul(B, B), F.mul(4, C));
    auto s = F.square_root(disc);
    if (s.has_value()) {
        if (*s == 0) throw std::logic_error("unexpected fiber ramification");
        long half = F.inv(2);
        long r1 = F.mul(F.sub(*s, B), half);
        long r2 = F.mul(F.sub(F.neg(*s), B), half);
        if (r1 == x0 || r2 == x0) {
            throw std::logic_error("orbit point has multiplicity in its fiber");
        }
        out.push_back({F.neg(r1), 1});
        out.push_back({F.neg(r2), 1});
    } else {
        out.push_back({C, B, 1});
    }
    return out;
}

std::vector<Monomial> candidate_monomials(long r, long slack) {
    std::vector<Monomial> mons;
    for (int i = 0; i <= 2; ++i) {
        long top = 67 * r + slack - 2 * i;
        for (long m = 0; 3 * m <= top; ++m) {
            mons.push_back({i, static_cast<int>(m)});
        }
    }
    return mons;
}

}  // namespace

// --- context ----------------------------------------------------------------

KleinContext make_klein_context(long p) {
    if (p != 43) {
        throw std::invalid_argument(
            "the evaluation-code construction is pinned to GF(43)");
    }
    PrimeField field(p);
    const long zeta = 41;
    if (field.pow(zeta, 7) != 1 || zeta == 1) {
        throw std::logic_error("chosen root of unity has the wrong order");
    }
    IntPoly quartic = klein_quartic_xyz();
    auto points = rational_points({quartic}, field, 3);

    std::vector<FMatrix> gens = {
        rho_matrix_xyz(field, zeta, {1, 1, 0, 1}),
        rho_matrix_xyz(field, zeta, {2, 0, 0, 4}),
        rho_matrix_xyz(field, zeta, {0, 1, 6, 0}),
    };
    auto orb = orbit(normalize_point({1, 0, 0}, field), gens, field, 200);

    std::vector<ProjectivePoint> evals;
    std::set_difference(points.begin(), points.end(), orb.begin(), orb.end(),
                        std::back_inserter(evals));

    std::vector<long> fibers;
    for (const auto& q : orb) {
        if (q.coords[2] == 1) fibers.push_back(q.coords[1]);
    }
    std::sort(fibers.begin(), fibers.end());
    fibers.erase(std::unique(fibers.begin(), fibers.end()), fibers.end());

    if (points.size() != 80 || orb.size() != 24 || evals.size() != 56 ||
        fibers.size() != 22) {
        throw std::logic_error("curve data does not have the expected shape");
    }

    KleinContext ctx{field, zeta, affine_curve_poly(field), std::move(points),
                     std::move(orb), std::move(evals), std::move(fibers)};
    return ctx;
}

DivisorOnCurve orbit_divisor(const KleinContext& ctx, long r) {
    if (r < 0) throw std::invalid_argument("orbit_divisor: negative multiplicity");
    DivisorOnCurve d;
    if (r == 0) return d;
    d.coefficients.reserve(ctx.orbit_points.size());
    for (const auto& p : ctx.orbit_points) d.coefficients.emplace_back(p, r);
    return d;
}

FieldPoly fiber_denominator(const KleinContext& ctx, long r) {
    if (r < 0) throw std::invalid_argument("fiber_denominator: negative exponent");
    FieldPoly q(ctx.field);
    q.add_term(0, 0, 1);
    for (long cnt = 0; cnt < r; ++cnt) {
        for (long a : ctx.fiber_values) {
            FieldPoly lin(ctx.field);
            lin.add_term(0, 1, 1);
            lin.add_term(0, 0, ctx.field.neg(a));
            q = q.times(lin);
        }
    }
    return q;
}

// --- valuations and evaluation ----------------------------------------------

long valuation(const KleinContext& ctx, const CurveFunction& f,
               const ProjectivePoint& point) {
    if (f.numerator.is_zero()) {
        throw std::invalid_argument("valuation of the zero function");
    }
    if (f.denominator.is_zero()) {
        throw std::invalid_argument("valuation with zero denominator");
    }
    if (!point_on_quartic(ctx.field, point)) {
        throw std::invalid_argument("valuation at a point off the curve");
    }
    int degx = std::max(f.numerator.degree_in(0), f.denominator.degree_in(0));
    int degy = std::max(f.numerator.degree_in(1), f.denominator.degree_in(1));
    for (long len = kPrecisionStart; len <= kPrecisionCap; len *= 2) {
        PointExpansion pe = expand_point(ctx, point, len, degx, degy);
        auto v = try_valuation(pe, f.numerator, f.denominator);
        if (v.has_value()) return *v;
    }
    throw std::runtime_error(
        "valuation unresolved at precision cap (function vanishes on the curve?)");
}

long evaluate_function(const KleinContext& ctx, const CurveFunction& f,
                       const ProjectivePoint& point) {
    if (f.numerator.is_zero()) return 0;
    if (f.denominator.is_zero()) {
        throw std::invalid_argument("evaluation with zero denominator");
    }
    if (!point_on_quartic(ctx.field, point)) {
        throw std::invalid_argument("evaluation at a point off the curve");
    }
    const PrimeField& F = ctx.field;
    if (point.coords[2] == 1) {
        long dv = f.denominator.evaluate(point.coords[0], point.coords[1]);
        if (dv != 0) {
            return F.mul(f.numerator.evaluate(point.coords[0], point.coords[1]),
                         F.inv(dv));
        }
    }
    int degx = std::max(f.numerator.degree_in(0), f.denominator.degree_in(0));
    int degy = std::max(f.numerator.degree_in(1), f.denominator.degree_in(1));
    for (long len = kPrecisionStart; len <= kPrecisionCap; len *= 2) {
        PointExpansion pe = expand_point(ctx, point, len, degx, degy);
        Ser ns = poly_on_series(pe.chart.A, f.numerator, pe.xp, pe.yp);
        Ser ds = poly_on_series(pe.chart.A, f.denominator, pe.xp, pe.yp);
        auto vd = ser_val(pe.chart.A, ds);
        if (!vd) continue;
        auto vn = ser_val(pe.chart.A, ns);
        if (!vn) {
            if (ns.prec() > *vd) return 0;  // numerator vanishes past the pole order
            continue;
        }
        if (*vn < *vd) throw std::runtime_error("pole at an evaluation point");
        if (*vn > *vd) return 0;
        long num_lead = coefficient_at(pe.chart.A, ns, *vn)[0];
        long den_lead = coefficient_at(pe.chart.A, ds, *vd)[0];
        return F.mul(num_lead, F.inv(den_lead));
    }
    throw std::runtime_error("evaluation unresolved at precision cap");
}

// --- Riemann-Roch basis -------------------------------------------------------

std::vector<CurveFunction> rr_basis(const KleinContext& ctx, long r) {
    if (r < 0 || r > 3) {
        throw std::invalid_argument("rr_basis: the multiplicity must be 0..3");
    }
    const PrimeField& F = ctx.field;
    const long target = r == 0 ? 1 : 24 * r - 2;

    std::vector<std::vector<long>> kernel;
    std::vector<Monomial> mons;
    bool reached = false;
    for (long slack : {0L, 6L, 12L}) {
        mons = candidate_monomials(r, slack);
        const std::size_t ncand = mons.size();
        std::vector<std::vector<long>> rows;

        // cancel the denominator at the non-orbit points of each shared fiber
        for (long a : ctx.fiber_values) {
            long x0 = orbit_x_over(ctx, a);
            for (const auto& h : non_orbit_fiber_factors(F, a, x0)) {
                LocalSeries chart = fiber_chart(F, h, a, r + 2);
                auto xp = power_table(chart.A, chart.xs, 2);
                auto yp = power_table(chart.A, chart.ys,
                                      static_cast<int>((67 * r + slack) / 3));
                std::size_t d = chart.A.d();
                for (long k = 0; k < r; ++k) {
                    std::vector<std::vector<long>> block(
                        d, std::vector<long>(ncand, 0));
                    for (std::size_t col = 0; col < ncand; ++col) {
                        Ser s = ser_mul(chart.A, xp[static_cast<std::size_t>(mons[col].i)],
                                        yp[static_cast<std::size_t>(mons[col].m)]);
                        Elem e = coefficient_at(chart.A, s, k);
                        for (std::size_t j = 0; j < d; ++j) block[j][col] = e[j];
                    }
                    for (auto& b : block) rows.push_back(std::move(b));
                }
            }
        }

        // cut the pole at (1:0:0) down to order r: the denominator vanishes
        // to order 2r there, so the numerator must vanish to order r
        {
            PointExpansion pe =
                expand_point(ctx, normalize_point({1, 0, 0}, F), r + 12, 2,
                             static_cast<int>((67 * r + slack) / 3));
            for (long k = -2; k < r; ++k) {
                std::vector<long> row(ncand, 0);
                for (std::size_t col = 0; col < ncand; ++col) {
                    Ser s = ser_mul(pe.chart.A, pe.xp[static_cast<std::size_t>(mons[col].i)],
                                    pe.yp[static_cast<std::size_t>(mons[col].m)]);
                    row[col] = coefficient_at(pe.chart.A, s, k)[0];
                }
                rows.push_back(std::move(row));
            }
        }

        // widened caps admit candidates below the pole bound at (0:1:0);
        // cancel their excess there (no rows when slack = 0)
        if (slack > 0) {
            PointExpansion pe =
                expand_point(ctx, normalize_point({0, 1, 0}, F), slack + 24, 2,
                             static_cast<int>((67 * r + slack) / 3));
            for (long k = -(67 * r + slack); k < -67 * r; ++k) {
                std::vector<long> row(ncand, 0);
                for (std::size_t col = 0; col < ncand; ++col) {
                    Ser s = ser_mul(pe.chart.A, pe.xp[static_cast<std::size_t>(mons[col].i)],
                                    pe.yp[static_cast<std::size_t>(mons[col].m)]);
                    row[col] = coefficient_at(pe.chart.A, s, k)[0];
                }
                rows.push_back(std::move(row));
            }
        }

        kernel = kernel_basis(F, std::move(rows), ncand);
        if (static_cast<long>(kernel.size()) == target) {
            reached = true;
            break;
        }
        if (static_cast<long>(kernel.size()) > target) {
            throw std::runtime_error(
                "certified space exceeds the Riemann-Roch dimension");
        }
        kernel.clear();
    }
    if (!reached) {
        throw std::runtime_error(
            "Riemann-Roch dimension not reached after widening the caps");
    }

    FieldPoly den = fiber_denominator(ctx, r);
    std::vector<CurveFunction> basis;
    basis.reserve(kernel.size());
    for (const auto& v : kernel) {
        FieldPoly num(F);
        for (std::size_t col = 0; col < mons.size(); ++col) {
            if (v[col] != 0) num.add_term(mons[col].i, mons[col].m, v[col]);
        }
        basis.push_back(CurveFunction{std::move(num), den});
    }

    // pointwise certification: order >= -r on the orbit, regular on E
    for (const auto& p : ctx.orbit_points) {
        for (const auto& f : basis) {
            if (valuation(ctx, f, p) < -r) {
                throw std::logic_error("basis function exceeds the allowed pole order");
            }
        }
    }
    for (const auto& p : ctx.eval_points) {
        for (const auto& f : basis) {
            (void)evaluate_function(ctx, f, p);  // throws on a pole
        }
    }
    return basis;
}

// --- evaluation codes ---------------------------------------------------------

EvaluationCode evaluation_code(const KleinContext& ctx,
                               const std::vector<CurveFunction>& basis, long r) {
    if (basis.empty()) throw std::invalid_argument("evaluation_code: empty basis");
    const PrimeField& F = ctx.field;
    const std::size_t n = ctx.eval_points.size();

    std::vector<std::vector<long>> m(basis.size(), std::vector<long>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            m[i][j] = evaluate_function(ctx, basis[i], ctx.eval_points[j]);
        }
    }
    auto pivots = rref(F, m);
    const std::size_t k = pivots.size();

    std::vector<long> perm;
    perm.reserve(n);
    std::vector<bool> used(n, false);
    for (auto c : pivots) {
        perm.push_back(static_cast<long>(c));
        used[c] = true;
    }
    for (std::size_t c = 0; c < n; ++c) {
        if (!used[c]) perm.push_back(static_cast<long>(c));
    }

    EvaluationCode code;
    code.n = static_cast<long>(n);
    code.k = static_cast<long>(k);
    code.generator.assign(k, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            code.generator[i][j] = m[i][static_cast<std::size_t>(perm[j])];
        }
    }
    code.column_permutation = std::move(perm);
    code.divisor = orbit_divisor(ctx, r);
    long designed = code.n - code.divisor.degree();
    if (designed > 0) code.designed_distance = designed;
    return code;
}

namespace {

// Generator rows in evaluation-point order (standard form columns undone).
std::vector<std::vector<long>> rows_in_point_order(const EvaluationCode& code) {
    std::vector<std::vector<long>> rows(
        static_cast<std::size_t>(code.k),
        std::vector<long>(static_cast<std::size_t>(code.n), 0));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (long j = 0; j < code.n; ++j) {
            rows[i][static_cast<std::size_t>(code.column_permutation[j])] =
                code.generator[i][static_cast<std::size_t>(j)];
        }
    }
    return rows;
}

}  // namespace

DistanceBounds distance_bounds(const KleinContext& ctx, const EvaluationCode& code,
                               std::uint64_t seed, std::uint64_t budget) {
    if (code.k <= 0) throw std::invalid_argument("distance_bounds: empty code");
    const PrimeField& F = ctx.field;
    const std::size_t n = static_cast<std::size_t>(code.n);
    const std::size_t k = static_cast<std::size_t>(code.k);
    auto rows = rows_in_point_order(code);

    DistanceBounds out;
    out.lower = code.designed_distance.value_or(1);
    out.witness_upper = code.n + 1;
    out.examined = 0;

    auto note = [&](const std::vector<long>& word) {
        long w = vector_weight(word);
        if (w > 0 && w < out.witness_upper) out.witness_upper = w;
        ++out.examined;
    };
    for (const auto& row : rows) note(row);

    std::mt19937_64 rng(seed);

    // tiny codes: walk every codeword once (projectively)
    double full = 1.0;
    for (std::size_t i = 0; i < k && full <= static_cast<double>(budget); ++i) {
        full *= static_cast<double>(F.p());
    }
    if (full <= static_cast<double>(budget)) {
        std::vector<long> v(k, 0);
        std::vector<long> word(n, 0);
        while (true) {
            std::size_t pos = 0;
            while (pos < k && v[pos] == F.p() - 1) v[pos++] = 0;
            if (pos == k) break;
            ++v[pos];
            // normalize: skip unless the last nonzero entry is 1
            std::size_t last = k;
            for (std::size_t i = k; i-- > 0;) {
                if (v[i] != 0) {
                    last = i;
                    break;
                }
            }
            if (last == k || v[last] != 1) continue;
            std::fill(word.begin(), word.end(), 0);
            for (std::size_t i = 0; i < k; ++i) {
                if (v[i] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    word[j] = F.add(word[j], F.mul(v[i], rows[i][j]));
                }
            }
            note(word);
        }
        return out;
    }

    // structured phase: prescribe k-1 zero coordinates and solve; any extra
    // zeros the kernel function happens to have push the weight down
    std::vector<long> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<long>(i);
    std::uint64_t structured_budget = budget / 2;
    const std::uint64_t trial_cost = 8 * k;  // one trial solves a k x (k-1) system
    std::uint64_t spent = 0;
    while (spent + trial_cost <= structured_budget) {
        spent += trial_cost;
        for (std::size_t i = 0; i < k - 1; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
            std::swap(idx[i], idx[j]);
        }
        std::vector<std::vector<long>> sys(k - 1, std::vector<long>(k, 0));
        for (std::size_t e = 0; e + 1 < k; ++e) {
            for (std::size_t i = 0; i < k; ++i) {
                sys[e][i] = rows[i][static_cast<std::size_t>(idx[e])];
            }
        }
        auto kern = kernel_basis(F, std::move(sys), k);
        if (kern.empty()) continue;
        const auto& v = kern.front();
        std::vector<long> word(n, 0);
        for (std::size_t i = 0; i < k; ++i) {
            if (v[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                word[j] = F.add(word[j], F.mul(v[i], rows[i][j]));
            }
        }
        note(word);
    }

    // sparse phase: low-support random combinations
    while (out.examined < budget) {
        std::size_t support = 1 + static_cast<std::size_t>(rng() % 3);
        std::vector<long> word(n, 0);
        for (std::size_t s = 0; s < support; ++s) {
            std::size_t i = static_cast<std::size_t>(rng() % k);
            long c = 1 + static_cast<long>(rng() % (F.p() - 1));
            for (std::size_t j = 0; j < n; ++j) {
                word[j] = F.add(word[j], F.mul(c, rows[i][j]));
            }
        }
        note(word);
    }
    return out;
}

std::vector<long> permutation_action(const KleinContext& ctx, const EvaluationCode& code,
                                     const std::array<long, 4>& g) {
    const PrimeField& F = ctx.field;
    FMatrix m = rho_matrix_xyz(F, ctx.zeta, g);
    const auto& pts = ctx.eval_points;
    std::vector<long> perm(pts.size(), -1);
    std::vector<bool> hit(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ProjectivePoint q = apply_matrix(F, m, pts[i]);
        auto it = std::lower_bound(pts.begin(), pts.end(), q);
        if (it == pts.end() || !(*it == q)) {
            throw std::runtime_error("the action moves an evaluation point off E");
        }
        std::size_t j = static_cast<std::size_t>(it - pts.begin());
        if (hit[j]) throw std::logic_error("action is not injective on E");
        hit[j] = true;
        perm[i] = static_cast<long>(j);
    }

    // permuted codewords must stay inside the row space
    auto rows = rows_in_point_order(code);
    auto reduced = rows;
    auto pivots = rref(F, reduced);
    for (const auto& row : rows) {
        std::vector<long> w(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            w[static_cast<std::size_t>(perm[i])] = row[i];
        }
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            long f = w[pivots[i]];
            if (f == 0) continue;
            for (std::size_t j = 0; j < w.size(); ++j) {
                w[j] = F.sub(w[j], F.mul(f, reduced[i][j]));
            }
        }
        if (vector_weight(w) != 0) {
            throw std::runtime_error("permuted codeword escapes the row space");
        }
    }
    return perm;
}

std::string code_to_json(const EvaluationCode& code, const DistanceBounds* bounds) {
    nlohmann::json doc;
    doc["n"] = code.n;
    doc["k"] = code.k;
    if (code.designed_distance.has_value()) {
        doc["designed_d"] = *code.designed_distance;
    } else {
        doc["designed_d"] = nullptr;
    }
    if (bounds != nullptr) {
        doc["witness_d"] = bounds->witness_upper;
    } else {
        doc["witness_d"] = nullptr;
    }
    doc["column_permutation"] = code.column_permutation;
    return doc.dump(2);
}

}  // namespace xn
