#include "xn/chartab.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "xn/numtheory.hpp"

namespace xn {

namespace {

long canonical_mod_negation(long x, long m) {
    x = mod_pos(x, m);
    return std::min(x, m - x);
}

}  // namespace

std::string Irreducible::str() const {
    switch (kind) {
        case IrrKind::Trivial: return "triv";
        case IrrKind::HalfA: return "half+";
        case IrrKind::HalfB: return "half-";
        case IrrKind::Discrete: return "disc" + std::to_string(index);
        case IrrKind::Steinberg: return "st";
        case IrrKind::Principal: return "prin" + std::to_string(index);
    }
    return "?";
}

CharacterTable::CharacterTable(const Psl2Context& ctx) : ctx_(&ctx) {
    const long n = ctx.N();
    const long m1 = (n - 1) / 2, m2 = (n + 1) / 2;

    // Canonical index transversals modulo negation, with 0 and (for even
    // modulus) the self-negating order-2 point excluded.
    for (long s = 1; s <= (m1 - 1) / 2; ++s) principal_.push_back(s);
    for (long t = 1; t <= (m2 - 1) / 2; ++t) discrete_.push_back(t);

    const long half_dim = n % 4 == 1 ? (n + 1) / 2 : (n - 1) / 2;
    irreps_.push_back({IrrKind::Trivial, 0, 1});
    irreps_.push_back({IrrKind::HalfA, 0, half_dim});
    irreps_.push_back({IrrKind::HalfB, 0, half_dim});
    for (long t : discrete_) irreps_.push_back({IrrKind::Discrete, t, n - 1});
    irreps_.push_back({IrrKind::Steinberg, 0, n});
    for (long s : principal_) irreps_.push_back({IrrKind::Principal, s, n + 1});

    for (size_t i = 0; i < irreps_.size(); ++i)
        lookup_[{(int)irreps_[i].kind, irreps_[i].index}] = i;
    for (size_t c = 0; c < ctx.classes().size(); ++c)
        class_pos_[ctx.classes()[c].label] = c;

    if (irreps_.size() != ctx.classes().size())
        throw std::logic_error("irreducible count differs from class count");

    build_rows();

    for (int which = 1; which <= 3; ++which) {
        const auto& sub = ctx.H(which);
        for (const auto& g : sub) sub_labels_[which - 1].push_back(ctx.class_of(g));
    }
}

void CharacterTable::build_rows() {
    const long n = ctx_->N();
    const long m1 = (n - 1) / 2, m2 = (n + 1) / 2;
    const auto& classes = ctx_->classes();
    auto periods = gauss_periods(n);
    const bool one_mod_4 = n % 4 == 1;

    rows_.assign(irreps_.size(), ClassFunction(classes.size()));
    for (size_t i = 0; i < irreps_.size(); ++i) {
        const auto& irr = irreps_[i];
        for (size_t c = 0; c < classes.size(); ++c) {
            const auto& cl = classes[c];
            Cyclotomic v;
            switch (irr.kind) {
                case IrrKind::Trivial:
                    v = Cyclotomic(1);
                    break;
                case IrrKind::Steinberg:
                    switch (cl.label.kind) {
                        case ClassKind::Identity: v = Cyclotomic(n); break;
                        case ClassKind::Parabolic1:
                        case ClassKind::ParabolicEps: v = Cyclotomic(0); break;
                        case ClassKind::Split: v = Cyclotomic(1); break;
                        case ClassKind::NonSplit: v = Cyclotomic(-1); break;
                    }
                    break;
                case IrrKind::Principal:
                    switch (cl.label.kind) {
                        case ClassKind::Identity: v = Cyclotomic(n + 1); break;
                        case ClassKind::Parabolic1:
                        case ClassKind::ParabolicEps: v = Cyclotomic(1); break;
                        case ClassKind::Split:
                            v = Cyclotomic::root_of_unity(m1, irr.index * cl.label.k) +
                                Cyclotomic::root_of_unity(m1, -irr.index * cl.label.k);
                            break;
                        case ClassKind::NonSplit: v = Cyclotomic(0); break;
                    }
                    break;
                case IrrKind::Discrete:
                    switch (cl.label.kind) {
                        case ClassKind::Identity: v = Cyclotomic(n - 1); break;
                        case ClassKind::Parabolic1:
                        case ClassKind::ParabolicEps: v = Cyclotomic(-1); break;
                        case ClassKind::Split: v = Cyclotomic(0); break;
                        case ClassKind::NonSplit:
                            v = -(Cyclotomic::root_of_unity(m2, irr.index * cl.label.k) +
                                  Cyclotomic::root_of_unity(m2, -irr.index * cl.label.k));
                            break;
                    }
                    break;
                case IrrKind::HalfA:
                case IrrKind::HalfB: {
                    const Cyclotomic& mine =
                        irr.kind == IrrKind::HalfA ? periods.q : periods.q_prime;
                    const Cyclotomic& other =
                        irr.kind == IrrKind::HalfA ? periods.q_prime : periods.q;
                    switch (cl.label.kind) {
                        case ClassKind::Identity: v = Cyclotomic(irr.dim); break;
                        case ClassKind::Parabolic1:
                            v = one_mod_4 ? Cyclotomic(1) + mine : mine;
                            break;
                        case ClassKind::ParabolicEps:
                            v = one_mod_4 ? Cyclotomic(1) + other : other;
                            break;
                        case ClassKind::Split:
                            v = one_mod_4 ? Cyclotomic(cl.label.k % 2 == 0 ? 1 : -1)
                                          : Cyclotomic(0);
                            break;
                        case ClassKind::NonSplit:
                            v = one_mod_4 ? Cyclotomic(0)
                                          : Cyclotomic(cl.label.k % 2 == 0 ? -1 : 1);
                            break;
                    }
                    break;
                }
            }
            rows_[i][c] = v;
        }
    }
}

size_t CharacterTable::index_of(IrrKind kind, long index) const {
    auto it = lookup_.find({(int)kind, index});
    if (it == lookup_.end())
        throw std::out_of_range("no irreducible with the requested kind/index");
    return it->second;
}

const Cyclotomic& CharacterTable::value(size_t i, const ClassLabel& l) const {
    return rows_.at(i)[class_position(l)];
}

size_t CharacterTable::class_position(const ClassLabel& l) const {
    auto it = class_pos_.find(l);
    if (it == class_pos_.end()) throw std::out_of_range("unknown class label " + l.str());
    return it->second;
}

ClassFunction CharacterTable::class_function(
    const std::map<ClassLabel, Cyclotomic>& by_label) const {
    const auto& classes = ctx_->classes();
    if (by_label.size() != classes.size())
        throw std::invalid_argument("class function must assign a value to every class");
    ClassFunction f(classes.size());
    for (size_t c = 0; c < classes.size(); ++c) f[c] = by_label.at(classes[c].label);
    return f;
}

Rational CharacterTable::schur_inner_product(const ClassFunction& f,
                                             const ClassFunction& g) const {
    const auto& classes = ctx_->classes();
    if (f.size() != classes.size() || g.size() != classes.size())
        throw std::invalid_argument("class function has wrong length");
    Cyclotomic bucket[3];
    for (size_t c = 0; c < classes.size(); ++c) {
        int b;
        switch (classes[c].label.kind) {
            case ClassKind::Split: b = 1; break;
            case ClassKind::NonSplit: b = 2; break;
            default: b = 0; break;
        }
        Cyclotomic term = f[c] * g[c].conjugate();
        term *= Rational(classes[c].size);
        bucket[b] += term;
    }
    Rational total(0);
    for (const auto& b : bucket) {
        auto r = b.as_rational();
        if (!r)
            throw std::domain_error(
                "inner product has irrational per-kind partial sums; "
                "not a rational-valued pairing");
        total += *r;
    }
    total /= Rational(ctx_->order());
    return total;
}

std::vector<Rational> CharacterTable::decompose(const ClassFunction& f) const {
    std::vector<Rational> out;
    out.reserve(rows_.size());
    for (size_t i = 0; i < rows_.size(); ++i) out.push_back(schur_inner_product(f, rows_[i]));
    return out;
}

ClassFunction CharacterTable::combine(const std::vector<Rational>& mults) const {
    if (mults.size() != rows_.size())
        throw std::invalid_argument("multiplicity vector has wrong length");
    ClassFunction f(ctx_->classes().size());
    for (size_t i = 0; i < rows_.size(); ++i) {
        if (mults[i] == 0) continue;
        for (size_t c = 0; c < f.size(); ++c) {
            Cyclotomic term = rows_[i][c];
            term *= mults[i];
            f[c] += term;
        }
    }
    return f;
}

void CharacterTable::verify_orthogonality() const {
    const auto& classes = ctx_->classes();
    for (size_t i = 0; i < rows_.size(); ++i) {
        for (size_t j = i; j < rows_.size(); ++j) {
            Rational ip = schur_inner_product(rows_[i], rows_[j]);
            if (ip != Rational(i == j ? 1 : 0))
                throw std::logic_error("row orthogonality fails at (" +
                                       irreps_[i].str() + ", " + irreps_[j].str() + ")");
        }
    }
    for (size_t c = 0; c < classes.size(); ++c) {
        for (size_t d = c; d < classes.size(); ++d) {
            Cyclotomic sum;
            for (size_t i = 0; i < rows_.size(); ++i)
                sum += rows_[i][c] * rows_[i][d].conjugate();
            Cyclotomic expect(c == d ? Rational(ctx_->centralizer_order(classes[c].label))
                                     : Rational(0));
            if (!(sum == expect))
                throw std::logic_error("column orthogonality fails at (" +
                                       classes[c].label.str() + ", " +
                                       classes[d].label.str() + ")");
        }
    }
}

std::vector<Rational> CharacterTable::restrict_to_subgroup(size_t i, int which) const {
    const auto& labels = sub_labels_.at(which - 1);
    const long h = (long)labels.size();
    std::vector<Rational> mults;
    mults.reserve(h);
    for (long j = 0; j < h; ++j) {
        Cyclotomic sum;
        for (long a = 0; a < h; ++a)
            sum += value(i, labels[a]) * Cyclotomic::root_of_unity(h, -j * a);
        auto r = sum.as_rational();
        if (!r) throw std::domain_error("restriction multiplicity is not rational");
        mults.push_back(*r / h);
    }
    return mults;
}

ClassFunction CharacterTable::induce_linear(int which, long j) const {
    const auto& labels = sub_labels_.at(which - 1);
    const long h = (long)labels.size();
    const auto& classes = ctx_->classes();
    ClassFunction out(classes.size());
    for (long a = 0; a < h; ++a) {
        size_t c = class_position(labels[a]);
        out[c] += Cyclotomic::root_of_unity(h, j * a);
    }
    for (size_t c = 0; c < classes.size(); ++c) {
        Rational scale(ctx_->centralizer_order(classes[c].label), h);
        scale.canonicalize();
        out[c] *= scale;
    }
    return out;
}

std::vector<std::vector<size_t>> CharacterTable::galois_orbits() const {
    std::vector<std::vector<size_t>> orbits;
    orbits.push_back({index_of(IrrKind::Trivial)});
    orbits.push_back({index_of(IrrKind::HalfA), index_of(IrrKind::HalfB)});
    orbits.push_back({index_of(IrrKind::Steinberg)});

    auto block = [&](const std::vector<long>& indices, long m, IrrKind kind) {
        std::set<long> left(indices.begin(), indices.end());
        while (!left.empty()) {
            long seed = *left.begin();
            std::vector<size_t> orbit;
            for (long u = 1; u < m; ++u) {
                if (gcd_long(u, m) != 1) continue;
                long img = canonical_mod_negation(u * seed, m);
                if (left.erase(img)) orbit.push_back(index_of(kind, img));
            }
            std::sort(orbit.begin(), orbit.end());
            orbits.push_back(orbit);
        }
    };
    block(discrete_, (N() + 1) / 2, IrrKind::Discrete);
    block(principal_, (N() - 1) / 2, IrrKind::Principal);
    return orbits;
}

long CharacterTable::galois_image_order() const {
    auto half_units = [](long m) { return m > 2 ? euler_phi(m) / 2 : 1L; };
    return 2 * half_units((N() - 1) / 2) * half_units((N() + 1) / 2);
}

bool CharacterTable::is_galois_stable(const std::vector<Rational>& mults) const {
    for (const auto& orbit : galois_orbits())
        for (size_t i : orbit)
            if (mults.at(i) != mults.at(orbit[0])) return false;
    return true;
}

std::vector<Rational> CharacterTable::galois_average(const std::vector<Rational>& mults) const {
    std::vector<Rational> out(mults.size());
    for (const auto& orbit : galois_orbits()) {
        Rational sum(0);
        for (size_t i : orbit) sum += mults.at(i);
        sum /= Rational((long)orbit.size());
        for (size_t i : orbit) out[i] = sum;
    }
    return out;
}

int CharacterTable::alpha_sign_at_involution(long s) const {
    if (N() % 4 != 1) throw std::logic_error("order-4 scalar needs N = 1 mod 4");
    return s % 2 == 0 ? 1 : -1;
}

int CharacterTable::beta_sign_at_involution(long t) const {
    if (N() % 4 != 3) throw std::logic_error("torus order-4 scalar needs N = 3 mod 4");
    return t % 2 == 0 ? 1 : -1;
}

bool CharacterTable::alpha_trivial_on_cubes(long s) const {
    if (N() % 3 != 1) throw std::logic_error("cube-root scalar needs N = 1 mod 3");
    return s % 3 == 0;
}

bool CharacterTable::beta_trivial_on_cubes(long t) const {
    if (N() % 3 != 2) throw std::logic_error("torus cube-root scalar needs N = 2 mod 3");
    return t % 3 == 0;
}

bool CharacterTable::half_even_at_involution() const {
    long r = N() % 8;
    return N() % 4 == 1 ? r == 1 : r == 7;
}

}  // namespace xn
