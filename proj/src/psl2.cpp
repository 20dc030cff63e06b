#include "xn/psl2.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "xn/numtheory.hpp"

namespace xn {

namespace {

// Smallest generator of GF(N)^x.
long primitive_root(long n) {
    std::vector<long> prime_factors;
    long m = n - 1;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            prime_factors.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) prime_factors.push_back(m);
    for (long g = 2; g < n; ++g) {
        bool ok = true;
        for (long p : prime_factors) {
            if (pow_mod(g, (n - 1) / p, n) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root found");
}

std::vector<long> divisors_above_one(long n) {
    std::vector<long> out;
    for (long d = 2; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

long encode(const GroupElement& g, long n) {
    return ((g.m[0] * n + g.m[1]) * n + g.m[2]) * n + g.m[3];
}

}  // namespace

std::string ClassLabel::str() const {
    switch (kind) {
        case ClassKind::Identity: return "1";
        case ClassKind::Parabolic1: return "P1";
        case ClassKind::ParabolicEps: return "Pe";
        case ClassKind::Split: return "S" + std::to_string(k);
        case ClassKind::NonSplit: return "T" + std::to_string(k);
    }
    return "?";
}

Psl2Context::Psl2Context(long N) : n_(N) {
    if (N < 5 || !is_prime(N))
        throw std::invalid_argument("group modulus must be a prime >= 5, got " +
                                    std::to_string(N));
    order_ = N * (N * N - 1) / 2;
    eps_ = primitive_root(N);

    eps_log_.assign(N, -1);
    long v = 1;
    for (long k = 0; k < N - 1; ++k) {
        eps_log_[v] = k;
        v = v * eps_ % N;
    }

    // Norm-one torus generator: first (x,y) with y != 0, x^2 - eps*y^2 = 1
    // and multiplicative order exactly N+1.
    for (long x = 0; x < N && tau_pow_.empty(); ++x) {
        for (long y = 1; y < N; ++y) {
            if (mod_pos(x * x - eps_ * y * y, N) != 1) continue;
            QuadExt t{x, y}, p{1, 0};
            long ord = 0;
            do {
                p = quad_mul(p, t);
                ++ord;
            } while (!(p == QuadExt{1, 0}));
            if (ord == N + 1) {
                tau_pow_.clear();
                QuadExt acc{1, 0};
                for (long k = 0; k <= N; ++k) {
                    tau_pow_.push_back(acc);
                    tau_log_[{acc.x, acc.y}] = k;
                    acc = quad_mul(acc, t);
                }
                break;
            }
        }
    }
    if (tau_pow_.empty()) throw std::logic_error("norm-one torus generator not found");

    if (N <= kEnumerationLimit) {
        elements_.reserve(order_);
        std::set<long> seen;
        for (long a = 0; a < N; ++a) {
            for (long b = 0; b < N; ++b) {
                for (long c = 0; c < N; ++c) {
                    if (a == 0) {
                        if (b == 0) continue;
                        // -bc = 1; d free
                        long cc = mod_pos(-inv_mod(b, N), N);
                        if (cc != c) continue;
                        for (long d = 0; d < N; ++d) {
                            GroupElement g = canonical(a, b, c, d);
                            if (seen.insert(encode(g, N)).second) elements_.push_back(g);
                        }
                    } else {
                        long d = mod_pos((1 + b * c) % N * inv_mod(a, N), N);
                        GroupElement g = canonical(a, b, c, d);
                        if (seen.insert(encode(g, N)).second) elements_.push_back(g);
                    }
                }
            }
        }
        std::sort(elements_.begin(), elements_.end());
        if ((long)elements_.size() != order_)
            throw std::logic_error("element enumeration size mismatch");
    }

    build_classes();
    build_subgroups();
}

const std::vector<GroupElement>& Psl2Context::elements() const {
    if (!enumerated())
        throw std::logic_error("element list not kept for N = " + std::to_string(n_));
    return elements_;
}

QuadExt Psl2Context::quad_mul(const QuadExt& a, const QuadExt& b) const {
    return {mod_pos(a.x * b.x + eps_ * a.y * b.y, n_), mod_pos(a.x * b.y + a.y * b.x, n_)};
}

GroupElement Psl2Context::canonical(long a, long b, long c, long d) const {
    long e[4] = {mod_pos(a, n_), mod_pos(b, n_), mod_pos(c, n_), mod_pos(d, n_)};
    for (long x : e) {
        if (x == 0) continue;
        if (x > (n_ - 1) / 2)
            for (auto& y : e) y = y == 0 ? 0 : n_ - y;
        break;
    }
    return GroupElement{{e[0], e[1], e[2], e[3]}};
}

GroupElement Psl2Context::identity() const { return GroupElement{{1, 0, 0, 1}}; }

GroupElement Psl2Context::make(long a, long b, long c, long d) const {
    long det = mod_pos(mod_pos(a, n_) * mod_pos(d, n_) - mod_pos(b, n_) * mod_pos(c, n_), n_);
    if (det != 1)
        throw std::invalid_argument("matrix determinant is " + std::to_string(det) +
                                    " mod " + std::to_string(n_) + ", expected 1");
    return canonical(a, b, c, d);
}

GroupElement Psl2Context::mul(const GroupElement& x, const GroupElement& y) const {
    const auto& a = x.m;
    const auto& b = y.m;
    return canonical(a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                     a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]);
}

GroupElement Psl2Context::inverse(const GroupElement& x) const {
    return canonical(x.m[3], -x.m[1], -x.m[2], x.m[0]);
}

long Psl2Context::element_order(const GroupElement& g) const {
    GroupElement p = g;
    GroupElement id = identity();
    long ord = 1;
    while (!(p == id)) {
        p = mul(p, g);
        ++ord;
        if (ord > 2 * n_ + 2) throw std::logic_error("element order out of range");
    }
    return ord;
}

long Psl2Context::sqrt_mod(long a) const {
    a = mod_pos(a, n_);
    for (long x = 0; x <= (n_ - 1) / 2; ++x)
        if (x * x % n_ == a) return x;
    return -1;
}

long Psl2Context::split_canonical_k(long k) const {
    long n1 = n_ - 1, h = n1 / 2;
    k = mod_pos(k, n1);
    long cands[4] = {k, mod_pos(-k, n1), mod_pos(k + h, n1), mod_pos(-k + h, n1)};
    return *std::min_element(cands, cands + 4);
}

long Psl2Context::nonsplit_canonical_k(long k) const {
    long n2 = n_ + 1, h = n2 / 2;
    k = mod_pos(k, n2);
    long cands[4] = {k, mod_pos(-k, n2), mod_pos(k + h, n2), mod_pos(-k + h, n2)};
    return *std::min_element(cands, cands + 4);
}

void Psl2Context::build_classes() {
    classes_.clear();
    classes_.push_back({{ClassKind::Identity, 0}, identity(), 1});
    classes_.push_back({{ClassKind::Parabolic1, 0}, make(1, 1, 0, 1), (n_ * n_ - 1) / 2});
    classes_.push_back({{ClassKind::ParabolicEps, 0}, make(1, eps_, 0, 1), (n_ * n_ - 1) / 2});

    std::set<long> split_ks, nonsplit_ks;
    for (long k = 1; k < n_ - 1; ++k)
        if (k != (n_ - 1) / 2) split_ks.insert(split_canonical_k(k));
    for (long k = 1; k < n_ + 1; ++k)
        if (k != (n_ + 1) / 2) nonsplit_ks.insert(nonsplit_canonical_k(k));

    for (long k : split_ks) {
        long lam = pow_mod(eps_, k, n_);
        GroupElement rep = make(lam, 0, 0, inv_mod(lam, n_));
        bool involution = mod_pos(2 * k, n_ - 1) == (n_ - 1) / 2;
        long size = involution ? n_ * (n_ + 1) / 2 : n_ * (n_ + 1);
        classes_.push_back({{ClassKind::Split, k}, rep, size});
    }
    for (long k : nonsplit_ks) {
        QuadExt t = tau_pow_[k];
        GroupElement rep = make(t.x, eps_ * t.y, t.y, t.x);
        bool involution = mod_pos(2 * k, n_ + 1) == (n_ + 1) / 2;
        long size = involution ? n_ * (n_ - 1) / 2 : n_ * (n_ - 1);
        classes_.push_back({{ClassKind::NonSplit, k}, rep, size});
    }

    long total = 0;
    for (size_t i = 0; i < classes_.size(); ++i) {
        class_index_[classes_[i].label] = i;
        total += classes_[i].size;
    }
    if (total != order_) throw std::logic_error("class sizes do not sum to group order");
}

const ConjugacyClass& Psl2Context::class_by_label(const ClassLabel& l) const {
    auto it = class_index_.find(l);
    if (it == class_index_.end())
        throw std::out_of_range("no conjugacy class labeled " + l.str());
    return classes_[it->second];
}

ClassLabel Psl2Context::class_of(const GroupElement& g) const {
    if (g == identity()) return {ClassKind::Identity, 0};
    long t = mod_pos(g.m[0] + g.m[3], n_);
    long disc = mod_pos(t * t - 4, n_);

    if (disc == 0) {
        // Unipotent up to sign: pick the lift with trace +2, conjugate to
        // [[1,x],[0,1]] via a basis whose first vector is fixed, and read
        // off the square class of x.
        long e[4];
        if (t == 2)
            for (int i = 0; i < 4; ++i) e[i] = g.m[i];
        else
            for (int i = 0; i < 4; ++i) e[i] = mod_pos(-g.m[i], n_);
        long n00 = mod_pos(e[0] - 1, n_), n10 = e[2];
        long n01 = e[1], n11 = mod_pos(e[3] - 1, n_);
        long v1, v2;
        if (n00 != 0 || n10 != 0) {
            v1 = n00;
            v2 = n10;
        } else {
            v1 = n01;
            v2 = n11;
        }
        long u1, u2;
        if (v1 != 0) {
            u1 = 0;
            u2 = inv_mod(v1, n_);
        } else {
            u1 = mod_pos(-inv_mod(v2, n_), n_);
            u2 = 0;
        }
        // x = top-right entry of h^-1 g' h with h = (v | u).
        long p1 = mod_pos(e[0] * u1 + e[1] * u2, n_);
        long p2 = mod_pos(e[2] * u1 + e[3] * u2, n_);
        long x = mod_pos(u2 * p1 - u1 * p2, n_);
        if (x == 0) throw std::logic_error("degenerate unipotent conjugation");
        return {legendre(x, n_) == 1 ? ClassKind::Parabolic1 : ClassKind::ParabolicEps, 0};
    }

    if (legendre(disc, n_) == 1) {
        long s = sqrt_mod(disc);
        long lam = mod_pos((t + s) * inv_mod(2, n_), n_);
        return {ClassKind::Split, split_canonical_k(eps_log_[lam])};
    }

    // Eigenvalue x0 + y0*sqrt(eps) in the quadratic extension.
    long x0 = mod_pos(t * inv_mod(2, n_), n_);
    long y0 = sqrt_mod(mod_pos((x0 * x0 - 1) % n_ * inv_mod(eps_, n_), n_));
    if (y0 < 0) throw std::logic_error("nonsplit eigenvalue not on the norm-one torus");
    return {ClassKind::NonSplit, nonsplit_canonical_k(tau_log_.at({x0, y0}))};
}

void Psl2Context::build_subgroups() {
    GroupElement s = make(0, 1, -1, 0);
    GroupElement t = make(0, 1, -1, 1);
    subgroups_[0] = {identity(), s};
    subgroups_[1] = {identity(), t, mul(t, t)};
    subgroups_[2].clear();
    for (long k = 0; k < n_; ++k) subgroups_[2].push_back(make(1, k, 0, 1));
}

const std::vector<GroupElement>& Psl2Context::H(int which) const {
    if (which < 1 || which > 3) throw std::invalid_argument("subgroup index must be 1, 2 or 3");
    return subgroups_[which - 1];
}

GroupElement Psl2Context::h_generator(int which) const { return H(which)[1]; }

std::map<ClassLabel, Cyclotomic> Psl2Context::induced_character_oracle(
    int which, const std::vector<Cyclotomic>& theta_values) const {
    const auto& sub = H(which);
    const long h = (long)sub.size();
    if ((long)theta_values.size() != h)
        throw std::invalid_argument("need one character value per subgroup element");
    if (!(theta_values[0] == Cyclotomic(1)))
        throw std::invalid_argument("character must send the identity to 1");
    Cyclotomic p(1);
    for (long i = 0; i < h; ++i) {
        if (!(theta_values[i] == p))
            throw std::invalid_argument("character values are not multiplicative");
        p *= theta_values[1];
    }
    if (!(p == Cyclotomic(1)))
        throw std::invalid_argument("character value has wrong multiplicative order");

    const auto& all = elements();  // throws when not enumerated

    std::map<long, long> h_index;
    for (long i = 0; i < h; ++i) h_index[encode(sub[i], n_)] = i;

    // Left transversal: greedy sweep in canonical element order.
    std::vector<GroupElement> transversal;
    std::set<long> covered;
    for (const auto& g : all) {
        if (covered.count(encode(g, n_))) continue;
        transversal.push_back(g);
        for (const auto& x : sub) covered.insert(encode(mul(g, x), n_));
    }
    if ((long)transversal.size() * h != order_)
        throw std::logic_error("coset transversal has wrong size");

    std::map<ClassLabel, Cyclotomic> out;
    for (const auto& cls : classes_) {
        Cyclotomic sum(0);
        for (const auto& r : transversal) {
            GroupElement y = mul(mul(inverse(r), cls.rep), r);
            auto it = h_index.find(encode(y, n_));
            if (it != h_index.end()) sum += theta_values[it->second];
        }
        out.emplace(cls.label, sum);
    }
    return out;
}

Psl2Context::CyclicScan Psl2Context::spurious_subgroup_scan() const {
    std::set<long> orders;
    for (long d : divisors_above_one((n_ - 1) / 2)) orders.insert(d);
    for (long d : divisors_above_one((n_ + 1) / 2)) orders.insert(d);
    orders.insert(n_);

    if (enumerated()) {
        std::set<long> seen;
        for (const auto& g : elements_) {
            long o = element_order(g);
            if (o > 1) seen.insert(o);
        }
        if (seen != orders) throw std::logic_error("cyclic order census disagrees with formula");
    }

    CyclicScan scan;
    scan.orders.assign(orders.begin(), orders.end());
    for (long o : scan.orders)
        if (o != 2 && o != 3 && o != n_) scan.spurious.push_back(o);
    return scan;
}

long Psl2Context::centralizer_order_brute(const GroupElement& g) const {
    long count = 0;
    for (const auto& x : elements())
        if (mul(x, g) == mul(g, x)) ++count;
    return count;
}

long Psl2Context::centralizer_order(const ClassLabel& l) const {
    switch (l.kind) {
        case ClassKind::Identity: return order_;
        case ClassKind::Parabolic1:
        case ClassKind::ParabolicEps: return n_;
        case ClassKind::Split:
            return mod_pos(2 * l.k, n_ - 1) == (n_ - 1) / 2 ? n_ - 1 : (n_ - 1) / 2;
        case ClassKind::NonSplit:
            return mod_pos(2 * l.k, n_ + 1) == (n_ + 1) / 2 ? n_ + 1 : (n_ + 1) / 2;
    }
    throw std::logic_error("unreachable");
}

}  // namespace xn
