#pragma once
// Geometric substrate for the code pipeline: the level-N curve model cut out
// by the classical quartic relations on the odd theta coordinates
// (y_{-j} = -y_j, y_0 = 0), the projective action of SL(2,N) on those
// coordinates over a prime field containing an N-th root of unity, and
// exhaustive rational-point enumeration with group orbits.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace xn {

// Arithmetic in GF(p), elements canonically represented in [0, p).
class PrimeField {
public:
    explicit PrimeField(long p);

    long p() const { return p_; }
    long reduce(long a) const;
    long add(long a, long b) const;
    long sub(long a, long b) const;
    long mul(long a, long b) const;
    long neg(long a) const;
    long inv(long a) const;  // throws on 0
    long pow(long a, long e) const;

    // Smallest x != 1 with x^n = 1, for prime n (so x has order exactly n);
    // empty when p = 1 mod n fails.
    std::optional<long> root_of_unity(long n) const;
    // Smallest r with r^2 = a, if a is a square.
    std::optional<long> square_root(long a) const;

private:
    long p_;
};

// Sparse multivariate polynomial with integer coefficients over a fixed
// number of variables; used both exactly (curve relations over Z) and with
// coefficients read modulo a prime.
class IntPoly {
public:
    explicit IntPoly(std::size_t vars) : vars_(vars) {}

    std::size_t vars() const { return vars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, long>& terms() const { return terms_; }

    void add_term(const std::vector<int>& exps, long coeff);

    // Sign convention (largest monomial positive) plus content division;
    // makes "equal up to scalar" literal equality.
    void normalize();

    long evaluate(const PrimeField& field, const std::vector<long>& coords) const;

    long total_degree() const;

    std::string str(const std::string& var_prefix = "y") const;

    bool operator==(const IntPoly& o) const {
        return vars_ == o.vars_ && terms_ == o.terms_;
    }
    bool operator<(const IntPoly& o) const {
        return terms_ != o.terms_ ? terms_ < o.terms_ : vars_ < o.vars_;
    }

private:
    std::size_t vars_;
    std::map<std::vector<int>, long> terms_;
};

// The reduced coordinate model at level N: variables y_1 .. y_(N-1)/2 after
// imposing y_{-j} = -y_j, with every quartic relation instantiated,
// normalized, and deduplicated.
struct KleinSystem {
    long N = 0;
    std::size_t vars = 0;
    std::vector<IntPoly> relations;  // sorted canonically
};

KleinSystem klein_relations(long n);

// The level-7 curve in the printed coordinates: x^3 y + y^3 z + z^3 x,
// related to the reduced model by (x, y, z) = (y_2, -y_3, y_1).
IntPoly klein_quartic_xyz();

// --- projective points --------------------------------------------------

struct ProjectivePoint {
    std::vector<long> coords;  // last nonzero coordinate scaled to 1

    bool operator==(const ProjectivePoint& o) const = default;
    bool operator<(const ProjectivePoint& o) const { return coords < o.coords; }
    std::string str() const;  // "(a : b : c)"
};

// Scales so the last nonzero coordinate is 1; throws on the zero vector.
ProjectivePoint normalize_point(std::vector<long> coords,
                                const PrimeField& field);

// Exhaustive scan of projective space; a point is kept when every relation
// vanishes on it. Output is lexicographically sorted.
std::vector<ProjectivePoint> rational_points(
    const std::vector<IntPoly>& relations, const PrimeField& field,
    std::size_t vars);

// --- matrices over GF(p) and the curve action ----------------------------

using FMatrix = std::vector<std::vector<long>>;

FMatrix fmat_mul(const PrimeField& field, const FMatrix& a, const FMatrix& b);
bool projectively_equal(const PrimeField& field, const FMatrix& a,
                        const FMatrix& b);
ProjectivePoint apply_matrix(const PrimeField& field, const FMatrix& m,
                             const ProjectivePoint& point);

// Substitute y_i <- sum_j m[i][j] y_j into f, coefficients modulo p.
IntPoly transform_poly(const PrimeField& field, const IntPoly& f,
                       const FMatrix& m);

// Rank over GF(p) of the span of the given polynomials (monomial basis).
long poly_rank(const PrimeField& field, const std::vector<IntPoly>& polys);

// The unreduced action matrix on (y_0 .. y_{N-1}) of g = [a b; c d] with
// det = 1 mod n: row j has entries zeta^(b(a j^2 + 2 j t c) + t^2 c d) in
// column a j + t c, summed over t. Projective (an overall scalar is left in
// place); zeta must have multiplicative order n in the field and p != n.
FMatrix rho_unreduced(const PrimeField& field, long zeta, long n,
                      const std::array<long, 4>& g);

// The reduced (N-1)/2-dimensional action on y_1 .. y_(N-1)/2, obtained from
// the unreduced model via y_{-j} = -y_j. Internal consistency of the
// quotient (row 0 annihilated, rows j and N-j opposite) is verified.
FMatrix rho_matrix(const PrimeField& field, long zeta, long n,
                   const std::array<long, 4>& g);

// Level-7 action conjugated into the printed (x, y, z) coordinates.
FMatrix rho_matrix_xyz(const PrimeField& field, long zeta,
                       const std::array<long, 4>& g);

// Closure of the point under the generated group, lexicographically sorted;
// throws if the orbit exceeds max_size (non-invariant curve or bad
// generators).
std::vector<ProjectivePoint> orbit(const ProjectivePoint& start,
                                   const std::vector<FMatrix>& generators,
                                   const PrimeField& field,
                                   std::size_t max_size);

// --- serialization --------------------------------------------------------

std::string points_to_json(const std::vector<ProjectivePoint>& points);
std::string klein_system_to_json(const KleinSystem& system);

}  // namespace xn
