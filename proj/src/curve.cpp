#include "xn/curve.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "xn/numtheory.hpp"

namespace xn {

// --- PrimeField -----------------------------------------------------------

PrimeField::PrimeField(long p) : p_(p) {
    if (p < 2 || !is_prime(p)) {
        throw std::invalid_argument("field characteristic must be prime, got " +
                                    std::to_string(p));
    }
}

long PrimeField::reduce(long a) const { return mod_pos(a, p_); }
long PrimeField::add(long a, long b) const { return (reduce(a) + reduce(b)) % p_; }
long PrimeField::sub(long a, long b) const { return mod_pos(reduce(a) - reduce(b), p_); }
long PrimeField::mul(long a, long b) const { return (reduce(a) * reduce(b)) % p_; }
long PrimeField::neg(long a) const { return mod_pos(-reduce(a), p_); }

long PrimeField::inv(long a) const {
    const long r = reduce(a);
    if (r == 0) {
        throw std::invalid_argument("division by zero in GF(" +
                                    std::to_string(p_) + ")");
    }
    return inv_mod(r, p_);
}

long PrimeField::pow(long a, long e) const {
    if (e < 0) return pow_mod(inv(a), -e, p_);
    return pow_mod(reduce(a), e, p_);
}

std::optional<long> PrimeField::root_of_unity(long n) const {
    if (n < 2 || !is_prime(n)) {
        throw std::invalid_argument("root order must be a prime >= 2");
    }
    if ((p_ - 1) % n != 0) return std::nullopt;
    for (long x = 2; x < p_; ++x) {
        if (pow(x, n) == 1) return x;
    }
    return std::nullopt;  // unreachable for prime p with n | p-1
}

std::optional<long> PrimeField::square_root(long a) const {
    const long target = reduce(a);
    for (long r = 0; r < p_; ++r) {
        if (mul(r, r) == target) return r;
    }
    return std::nullopt;
}

// --- IntPoly ---------------------------------------------------------------

void IntPoly::add_term(const std::vector<int>& exps, long coeff) {
    if (exps.size() != vars_) {
        throw std::invalid_argument("exponent vector has wrong arity");
    }
    for (int e : exps) {
        if (e < 0) throw std::invalid_argument("negative exponent");
    }
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(exps, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

void IntPoly::normalize() {
    if (terms_.empty()) return;
    long content = 0;
    for (const auto& [exps, coeff] : terms_) {
        content = gcd_long(content, coeff < 0 ? -coeff : coeff);
    }
    const long sign = terms_.rbegin()->second < 0 ? -1 : 1;
    const long scale = sign * content;
    if (scale != 1) {
        for (auto& [exps, coeff] : terms_) coeff /= scale;
    }
}

long IntPoly::evaluate(const PrimeField& field,
                       const std::vector<long>& coords) const {
    if (coords.size() != vars_) {
        throw std::invalid_argument("coordinate vector has wrong arity");
    }
    long acc = 0;
    for (const auto& [exps, coeff] : terms_) {
        long term = field.reduce(coeff);
        for (std::size_t i = 0; i < vars_; ++i) {
            if (exps[i] != 0) term = field.mul(term, field.pow(coords[i], exps[i]));
        }
        acc = field.add(acc, term);
    }
    return acc;
}

long IntPoly::total_degree() const {
    long best = 0;
    for (const auto& [exps, coeff] : terms_) {
        best = std::max(best, std::accumulate(exps.begin(), exps.end(), 0L));
    }
    return best;
}

std::string IntPoly::str(const std::string& var_prefix) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const long coeff = it->second;
        if (first) {
            if (coeff < 0) out << "-";
            first = false;
        } else {
            out << (coeff < 0 ? " - " : " + ");
        }
        const long mag = coeff < 0 ? -coeff : coeff;
        bool printed = false;
        if (mag != 1) {
            out << mag;
            printed = true;
        }
        for (std::size_t i = 0; i < vars_; ++i) {
            const int e = it->first[i];
            if (e == 0) continue;
            if (printed) out << "*";
            out << var_prefix << (i + 1);
            if (e > 1) out << "^" << e;
            printed = true;
        }
        if (!printed) out << 1;
    }
    return out.str();
}

// --- Klein system -----------------------------------------------------------

namespace {

// y_m in the reduced model: (sign, 1-based variable index), sign 0 for y_0.
std::pair<int, long> reduced_var(long m, long n) {
    m = mod_pos(m, n);
    if (m == 0) return {0, 0};
    if (m <= (n - 1) / 2) return {1, m};
    return {-1, n - m};
}

void add_quartic_term(IntPoly& poly, long n, std::array<long, 4> indices) {
    int sign = 1;
    std::vector<int> exps(static_cast<std::size_t>((n - 1) / 2), 0);
    for (long m : indices) {
        const auto [s, var] = reduced_var(m, n);
        if (s == 0) return;  // a factor y_0 kills the term
        sign *= s;
        ++exps[static_cast<std::size_t>(var - 1)];
    }
    poly.add_term(exps, sign);
}

}  // namespace

KleinSystem klein_relations(long n) {
    if (n < 7 || !is_prime(n)) {
        throw std::invalid_argument("level must be a prime >= 7, got " +
                                    std::to_string(n));
    }
    const std::size_t vars = static_cast<std::size_t>((n - 1) / 2);
    std::set<IntPoly> seen;
    for (long a = 0; a < n; ++a) {
        for (long b = 0; b < n; ++b) {
            for (long c = 0; c < n; ++c) {
                for (long d = 0; d < n; ++d) {
                    IntPoly poly(vars);
                    add_quartic_term(poly, n, {a + b, a - b, c + d, c - d});
                    add_quartic_term(poly, n, {a + c, a - c, d + b, d - b});
                    add_quartic_term(poly, n, {a + d, a - d, b + c, b - c});
                    if (poly.is_zero()) continue;
                    poly.normalize();
                    seen.insert(std::move(poly));
                }
            }
        }
    }
    KleinSystem system;
    system.N = n;
    system.vars = vars;
    system.relations.assign(seen.begin(), seen.end());
    return system;
}

IntPoly klein_quartic_xyz() {
    IntPoly poly(3);
    poly.add_term({3, 1, 0}, 1);
    poly.add_term({0, 3, 1}, 1);
    poly.add_term({1, 0, 3}, 1);
    return poly;
}

// --- projective points -------------------------------------------------------

std::string ProjectivePoint::str() const {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) out << " : ";
        out << coords[i];
    }
    out << ")";
    return out.str();
}

ProjectivePoint normalize_point(std::vector<long> coords,
                                const PrimeField& field) {
    for (long& c : coords) c = field.reduce(c);
    std::size_t last = coords.size();
    for (std::size_t i = coords.size(); i-- > 0;) {
        if (coords[i] != 0) {
            last = i;
            break;
        }
    }
    if (last == coords.size()) {
        throw std::invalid_argument("projective point cannot be the zero vector");
    }
    const long scale = field.inv(coords[last]);
    for (long& c : coords) c = field.mul(c, scale);
    return ProjectivePoint{std::move(coords)};
}

std::vector<ProjectivePoint> rational_points(
    const std::vector<IntPoly>& relations, const PrimeField& field,
    std::size_t vars) {
    for (const IntPoly& f : relations) {
        if (f.vars() != vars) {
            throw std::invalid_argument("relation arity mismatch");
        }
    }
    std::vector<ProjectivePoint> found;
    std::vector<long> coords(vars, 0);
    // Stratify by the position of the last nonzero coordinate (scaled to 1):
    // positions after it are 0, positions before it range over the field.
    for (std::size_t level = 0; level < vars; ++level) {
        std::fill(coords.begin(), coords.end(), 0);
        coords[level] = 1;
        while (true) {
            bool ok = true;
            for (const IntPoly& f : relations) {
                if (f.evaluate(field, coords) != 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) found.push_back(ProjectivePoint{coords});
            // odometer over coords[0..level-1]
            std::size_t i = 0;
            while (i < level && ++coords[i] == field.p()) {
                coords[i] = 0;
                ++i;
            }
            if (i == level) break;
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

// --- matrices ---------------------------------------------------------------

FMatrix fmat_mul(const PrimeField& field, const FMatrix& a, const FMatrix& b) {
    const std::size_t rows = a.size();
    const std::size_t inner = b.size();
    const std::size_t cols = b.empty() ? 0 : b[0].size();
    FMatrix out(rows, std::vector<long>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i) {
        if (a[i].size() != inner) throw std::invalid_argument("matrix shape");
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                out[i][j] = field.add(out[i][j], field.mul(a[i][k], b[k][j]));
            }
        }
    }
    return out;
}

bool projectively_equal(const PrimeField& field, const FMatrix& a,
                        const FMatrix& b) {
    if (a.size() != b.size()) return false;
    long scale = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (std::size_t j = 0; j < a[i].size(); ++j) {
            const long x = field.reduce(a[i][j]);
            const long y = field.reduce(b[i][j]);
            if (scale == 0) {
                if ((x == 0) != (y == 0)) return false;
                if (x != 0) scale = field.mul(y, field.inv(x));
            } else if (field.mul(scale, x) != y) {
                return false;
            }
        }
    }
    return scale != 0;
}

ProjectivePoint apply_matrix(const PrimeField& field, const FMatrix& m,
                             const ProjectivePoint& point) {
    std::vector<long> out(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != point.coords.size()) {
            throw std::invalid_argument("matrix/point shape mismatch");
        }
        for (std::size_t j = 0; j < point.coords.size(); ++j) {
            out[i] = field.add(out[i], field.mul(m[i][j], point.coords[j]));
        }
    }
    return normalize_point(std::move(out), field);
}

namespace {

IntPoly poly_mul_mod(const PrimeField& field, const IntPoly& a,
                     const IntPoly& b) {
    IntPoly out(a.vars());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            std::vector<int> exps(ea.size());
            for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = ea[i] + eb[i];
            out.add_term(exps, field.mul(ca, cb));
        }
    }
    return out;
}

}  // namespace

IntPoly transform_poly(const PrimeField& field, const IntPoly& f,
                       const FMatrix& m) {
    const std::size_t vars = f.vars();
    if (m.size() != vars) {
        throw std::invalid_argument("matrix size does not match arity");
    }
    std::vector<IntPoly> linear;
    linear.reserve(vars);
    for (std::size_t i = 0; i < vars; ++i) {
        IntPoly li(vars);
        for (std::size_t j = 0; j < vars; ++j) {
            std::vector<int> exps(vars, 0);
            exps[j] = 1;
            li.add_term(exps, field.reduce(m[i][j]));
        }
        linear.push_back(std::move(li));
    }
    IntPoly result(vars);
    for (const auto& [exps, coeff] : f.terms()) {
        IntPoly prod(vars);
        prod.add_term(std::vector<int>(vars, 0), 1);
        for (std::size_t i = 0; i < vars; ++i) {
            for (int e = 0; e < exps[i]; ++e) {
                prod = poly_mul_mod(field, prod, linear[i]);
            }
        }
        for (const auto& [pe, pc] : prod.terms()) {
            result.add_term(pe, field.mul(field.reduce(coeff), pc));
        }
    }
    // keep coefficients in canonical [0, p) form
    IntPoly reduced(vars);
    for (const auto& [exps, coeff] : result.terms()) {
        reduced.add_term(exps, field.reduce(coeff));
    }
    return reduced;
}

long poly_rank(const PrimeField& field, const std::vector<IntPoly>& polys) {
    std::map<std::vector<int>, std::size_t> columns;
    for (const IntPoly& f : polys) {
        for (const auto& [exps, coeff] : f.terms()) {
            columns.try_emplace(exps, columns.size());
        }
    }
    std::vector<std::vector<long>> rows;
    rows.reserve(polys.size());
    for (const IntPoly& f : polys) {
        std::vector<long> row(columns.size(), 0);
        for (const auto& [exps, coeff] : f.terms()) {
            row[columns.at(exps)] = field.reduce(coeff);
        }
        rows.push_back(std::move(row));
    }
    long rank = 0;
    std::size_t col = 0;
    for (std::size_t pivot_row = 0;
         pivot_row < rows.size() && col < columns.size(); ++col) {
        std::size_t candidate = pivot_row;
        while (candidate < rows.size() && rows[candidate][col] == 0) ++candidate;
        if (candidate == rows.size()) continue;
        std::swap(rows[pivot_row], rows[candidate]);
        const long scale = field.inv(rows[pivot_row][col]);
        for (std::size_t j = col; j < columns.size(); ++j) {
            rows[pivot_row][j] = field.mul(rows[pivot_row][j], scale);
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == pivot_row || rows[i][col] == 0) continue;
            const long factor = rows[i][col];
            for (std::size_t j = col; j < columns.size(); ++j) {
                rows[i][j] =
                    field.sub(rows[i][j], field.mul(factor, rows[pivot_row][j]));
            }
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

// --- the curve action --------------------------------------------------------

FMatrix rho_unreduced(const PrimeField& field, long zeta, long n,
                      const std::array<long, 4>& g) {
    if (!is_prime(n) || n < 5) {
        throw std::invalid_argument("level must be a prime >= 5");
    }
    if (field.p() == n) {
        throw std::invalid_argument("field characteristic equals the level");
    }
    if (field.reduce(zeta) == 1 || field.pow(zeta, n) != 1) {
        throw std::invalid_argument("field element lacks multiplicative order " +
                                    std::to_string(n));
    }
    const long a = mod_pos(g[0], n), b = mod_pos(g[1], n);
    const long c = mod_pos(g[2], n), d = mod_pos(g[3], n);
    if (mod_pos(a * d - b * c, n) != 1) {
        throw std::invalid_argument("matrix determinant is not 1 mod " +
                                    std::to_string(n));
    }
    FMatrix u(static_cast<std::size_t>(n),
              std::vector<long>(static_cast<std::size_t>(n), 0));
    for (long j = 0; j < n; ++j) {
        for (long t = 0; t < n; ++t) {
            const long col = mod_pos(a * j + t * c, n);
            const long e = mod_pos(b * (a * j * j + 2 * j * t * c) + t * t * c * d, n);
            u[static_cast<std::size_t>(j)][static_cast<std::size_t>(col)] =
                field.add(u[static_cast<std::size_t>(j)][static_cast<std::size_t>(col)],
                          field.pow(zeta, e));
        }
    }
    return u;
}

FMatrix rho_matrix(const PrimeField& field, long zeta, long n,
                   const std::array<long, 4>& g) {
    const FMatrix u = rho_unreduced(field, zeta, n, g);
    const std::size_t half = static_cast<std::size_t>((n - 1) / 2);
    const auto un = [&](long row, long col) {
        return u[static_cast<std::size_t>(mod_pos(row, n))]
                [static_cast<std::size_t>(mod_pos(col, n))];
    };
    // The odd subspace (y_{-j} = -y_j, y_0 = 0) must be preserved exactly:
    // row 0 must vanish on it and rows j, N-j must be opposite on it.
    for (long s = 1; s <= static_cast<long>(half); ++s) {
        if (un(0, s) != un(0, n - s)) {
            throw std::logic_error("curve action does not annihilate y_0");
        }
        for (long j = 1; j <= static_cast<long>(half); ++j) {
            const long direct = field.sub(un(j, s), un(j, n - s));
            const long mirrored = field.sub(un(n - j, s), un(n - j, n - s));
            if (mirrored != field.neg(direct)) {
                throw std::logic_error("curve action does not respect y_{-j} = -y_j");
            }
        }
    }
    FMatrix r(half, std::vector<long>(half, 0));
    for (std::size_t j = 1; j <= half; ++j) {
        for (std::size_t s = 1; s <= half; ++s) {
            r[j - 1][s - 1] = field.sub(un(static_cast<long>(j), static_cast<long>(s)),
                                        un(static_cast<long>(j), n - static_cast<long>(s)));
        }
    }
    return r;
}

FMatrix rho_matrix_xyz(const PrimeField& field, long zeta,
                       const std::array<long, 4>& g) {
    const FMatrix r = rho_matrix(field, zeta, 7, g);
    const long minus = field.neg(1);
    const FMatrix t = {{0, 1, 0}, {0, 0, minus}, {1, 0, 0}};
    const FMatrix t_inv = {{0, 0, 1}, {1, 0, 0}, {0, minus, 0}};
    return fmat_mul(field, fmat_mul(field, t, r), t_inv);
}

std::vector<ProjectivePoint> orbit(const ProjectivePoint& start,
                                   const std::vector<FMatrix>& generators,
                                   const PrimeField& field,
                                   std::size_t max_size) {
    std::set<ProjectivePoint> visited;
    std::deque<ProjectivePoint> queue;
    queue.push_back(normalize_point(start.coords, field));
    visited.insert(queue.back());
    while (!queue.empty()) {
        const ProjectivePoint point = queue.front();
        queue.pop_front();
        for (const FMatrix& m : generators) {
            ProjectivePoint next = apply_matrix(field, m, point);
            if (visited.insert(next).second) {
                if (visited.size() > max_size) {
                    throw std::runtime_error(
                        "orbit exceeded " + std::to_string(max_size) +
                        " points; the generators do not act as expected");
                }
                queue.push_back(std::move(next));
            }
        }
    }
    return {visited.begin(), visited.end()};
}

// --- serialization ------------------------------------------------------------

std::string points_to_json(const std::vector<ProjectivePoint>& points) {
    nlohmann::json doc = nlohmann::json::array();
    for (const ProjectivePoint& p : points) doc.push_back(p.coords);
    return doc.dump();
}

std::string klein_system_to_json(const KleinSystem& system) {
    nlohmann::json doc;
    doc["level"] = system.N;
    doc["variables"] = system.vars;
    nlohmann::json rels = nlohmann::json::array();
    for (const IntPoly& f : system.relations) {
        nlohmann::json rel;
        rel["str"] = f.str();
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [exps, coeff] : f.terms()) {
            terms.push_back({{"coeff", coeff}, {"exps", exps}});
        }
        rel["terms"] = std::move(terms);
        rels.push_back(std::move(rel));
    }
    doc["relations"] = std::move(rels);
    return doc.dump(2);
}

}  // namespace xn
