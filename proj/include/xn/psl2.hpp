// Concrete model of G = PSL(2,N) for prime N: canonical matrix
// representatives, conjugacy classes labeled by trace type, the three
// distinguished cyclic stabilizer subgroups, and a literal coset-sum
// induced-character oracle used as ground truth by the character-table
// module.
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "xn/cyclotomic.hpp"

namespace xn {

// Canonical representative of {M, -M}: the first nonzero entry in reading
// order (a,b,c,d) lies in {1..(N-1)/2}.
struct GroupElement {
    std::array<long, 4> m{1, 0, 0, 1};  // a b / c d, det = 1 mod N

    bool operator==(const GroupElement& o) const { return m == o.m; }
    bool operator<(const GroupElement& o) const { return m < o.m; }
};

enum class ClassKind { Identity, Parabolic1, ParabolicEps, Split, NonSplit };

// Split(k): conjugate to diag(eps^k, eps^-k); k canonical in
// (Z/(N-1)) \ {0, (N-1)/2} modulo {k -> -k, k -> k+(N-1)/2}.
// NonSplit(k): conjugate to the image of tau^k; same normalization mod N+1.
struct ClassLabel {
    ClassKind kind = ClassKind::Identity;
    long k = 0;

    bool operator==(const ClassLabel& o) const { return kind == o.kind && k == o.k; }
    bool operator<(const ClassLabel& o) const {
        return kind != o.kind ? kind < o.kind : k < o.k;
    }
    std::string str() const;
};

struct ConjugacyClass {
    ClassLabel label;
    GroupElement rep;
    long size = 0;
};

// x + y*sqrt(eps) in GF(N)(sqrt(eps)).
struct QuadExt {
    long x = 1, y = 0;
    bool operator==(const QuadExt& o) const { return x == o.x && y == o.y; }
};

class Psl2Context {
public:
    // N must be prime and >= 7; N = 5 is accepted but flagged.
    explicit Psl2Context(long N);

    long N() const { return n_; }
    long order() const { return order_; }
    bool small_warning() const { return n_ == 5; }
    long epsilon() const { return eps_; }

    // Full element enumeration is kept only for moderate group sizes; the
    // closed-form class data is always available.
    bool enumerated() const { return !elements_.empty(); }
    const std::vector<GroupElement>& elements() const;

    const std::vector<ConjugacyClass>& classes() const { return classes_; }
    const ConjugacyClass& class_by_label(const ClassLabel& l) const;

    ClassLabel class_of(const GroupElement& g) const;

    // which in {1,2,3}: |H1| = 2, |H2| = 3, |H3| = N; element i is gen^i.
    const std::vector<GroupElement>& H(int which) const;
    GroupElement h_generator(int which) const;

    // Powers tau^0 .. tau^N of the fixed order-(N+1) generator of the
    // norm-one torus.
    const std::vector<QuadExt>& tau_powers() const { return tau_pow_; }
    QuadExt quad_mul(const QuadExt& a, const QuadExt& b) const;

    GroupElement identity() const;
    GroupElement make(long a, long b, long c, long d) const;  // checks det
    GroupElement mul(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& a) const;
    long element_order(const GroupElement& g) const;

    // Induced class function of the character theta on H_which, computed
    // literally as a sum of theta over coset conjugates. theta is given by
    // its values on generator powers: theta(gen^i) = values[i]; it must be a
    // homomorphism (values[0] = 1, values[i] = values[1]^i, values[1]^|H|=1).
    // Requires enumeration.
    std::map<ClassLabel, Cyclotomic> induced_character_oracle(
        int which, const std::vector<Cyclotomic>& theta_values) const;

    struct CyclicScan {
        std::vector<long> orders;    // all cyclic subgroup orders > 1
        std::vector<long> spurious;  // those outside {2, 3, N}
    };
    // Closed form always; verified against enumeration when available.
    CyclicScan spurious_subgroup_scan() const;

    long centralizer_order_brute(const GroupElement& g) const;  // needs enumeration

    // Closed-form centralizer order for the class of g.
    long centralizer_order(const ClassLabel& l) const;

    // Largest N for which the constructor keeps the full element list.
    static constexpr long kEnumerationLimit = 61;

private:
    long n_ = 0;
    long order_ = 0;
    long eps_ = 0;
    std::vector<long> eps_log_;            // eps_log_[x] = k with eps^k = x
    std::vector<QuadExt> tau_pow_;
    std::map<std::pair<long, long>, long> tau_log_;
    std::vector<GroupElement> elements_;
    std::vector<ConjugacyClass> classes_;
    std::map<ClassLabel, size_t> class_index_;
    std::array<std::vector<GroupElement>, 3> subgroups_;

    GroupElement canonical(long a, long b, long c, long d) const;
    long split_canonical_k(long k) const;     // orbit minimum mod N-1
    long nonsplit_canonical_k(long k) const;  // orbit minimum mod N+1
    long sqrt_mod(long a) const;              // any square root, -1 if none
    void build_classes();
    void build_subgroups();
};

}  // namespace xn
