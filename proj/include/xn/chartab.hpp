// Exact ordinary character table of PSL(2,N), N prime >= 5, together with
// Schur inner products, restriction/induction to the three distinguished
// cyclic subgroups, and the Galois (field-automorphism) action on the set of
// irreducibles.
//
// Irreducible families, in the fixed row order used everywhere downstream:
//   Trivial                                 dim 1
//   HalfA, HalfB   twin pair                dim (N+1)/2 if N = 1 mod 4,
//                                               (N-1)/2 if N = 3 mod 4
//   Discrete(t)    t ascending              dim N-1
//   Steinberg                               dim N
//   Principal(s)   s ascending              dim N+1
//
// Principal(s) is parametrized by the torus character eps -> zeta_{N-1}^{2s},
// Discrete(t) by tau -> zeta_{N+1}^{2t}; both indices are canonical modulo
// negation, with the quadratic character excluded (it yields the twin pair).
// HalfA is, by convention, the twin whose value on the unipotent class with
// quadratic-residue offset involves the residue Gauss period
// q = sum_{r in QR(N)} zeta_N^r (and HalfB the one with q').
#pragma once

#include <map>
#include <string>
#include <vector>

#include "xn/cyclotomic.hpp"
#include "xn/psl2.hpp"

namespace xn {

enum class IrrKind { Trivial, HalfA, HalfB, Discrete, Steinberg, Principal };

struct Irreducible {
    IrrKind kind = IrrKind::Trivial;
    long index = 0;  // s or t for Principal/Discrete, 0 otherwise
    long dim = 1;
    std::string str() const;
};

// Exact class function, indexed like Psl2Context::classes().
using ClassFunction = std::vector<Cyclotomic>;

class CharacterTable {
public:
    explicit CharacterTable(const Psl2Context& ctx);

    const Psl2Context& context() const { return *ctx_; }
    long N() const { return ctx_->N(); }

    const std::vector<Irreducible>& irreducibles() const { return irreps_; }
    size_t count() const { return irreps_.size(); }
    size_t index_of(IrrKind kind, long index = 0) const;

    const ClassFunction& character(size_t i) const { return rows_[i]; }
    const Cyclotomic& value(size_t i, const ClassLabel& l) const;
    size_t class_position(const ClassLabel& l) const;

    ClassFunction class_function(const std::map<ClassLabel, Cyclotomic>& by_label) const;

    // (1/|G|) sum over classes of size * f * conj(g). The sum is accumulated
    // per class kind; each partial sum lies in a distinct cyclotomic field
    // whose pairwise intersections are Q, so for any class function with a
    // rational inner product every partial sum is itself rational. A
    // non-rational partial therefore means the total is irrational, and the
    // computation throws rather than mixing conductors.
    Rational schur_inner_product(const ClassFunction& f, const ClassFunction& g) const;

    std::vector<Rational> decompose(const ClassFunction& f) const;
    ClassFunction combine(const std::vector<Rational>& mults) const;

    // First and second orthogonality relations, exactly; throws on failure.
    void verify_orthogonality() const;

    // Multiplicities of the |H_which| linear characters theta_j
    // (theta_j(gen^a) = zeta^(ja)) in the restriction of irreducible i.
    std::vector<Rational> restrict_to_subgroup(size_t i, int which) const;

    // Frobenius-formula induction of theta_j from H_which; exact, needs no
    // element enumeration.
    ClassFunction induce_linear(int which, long j) const;

    // --- Galois action on the set of irreducibles -------------------------
    std::vector<std::vector<size_t>> galois_orbits() const;
    long galois_image_order() const;
    bool is_galois_stable(const std::vector<Rational>& mults) const;
    std::vector<Rational> galois_average(const std::vector<Rational>& mults) const;

    // --- bucket predicates for closed-form coefficient tables -------------
    int alpha_sign_at_involution(long s) const;  // alpha_s at the order-4 scalar; N = 1 mod 4
    int beta_sign_at_involution(long t) const;   // N = 3 mod 4
    bool alpha_trivial_on_cubes(long s) const;   // alpha_s kills the order-3 subgroup; N = 1 mod 3
    bool beta_trivial_on_cubes(long t) const;    // N = 2 mod 3
    // Whether the quadratic character is +1 on the order-4 scalar i; decides
    // which twin-half restriction to H1 picks up the extra trivial summand.
    bool half_even_at_involution() const;

    const std::vector<long>& principal_indices() const { return principal_; }
    const std::vector<long>& discrete_indices() const { return discrete_; }

private:
    const Psl2Context* ctx_;
    std::vector<Irreducible> irreps_;
    std::vector<ClassFunction> rows_;
    std::map<std::pair<int, long>, size_t> lookup_;
    std::map<ClassLabel, size_t> class_pos_;
    std::vector<long> principal_, discrete_;
    // class labels of gen^a for each distinguished subgroup
    std::array<std::vector<ClassLabel>, 3> sub_labels_;

    void build_rows();
};

}  // namespace xn
