#pragma once
// Function-field side of the level-7 curve over GF(43): explicit functions
// on the quartic x^3 y + y^3 z + z^3 x = 0 written in the z = 1 chart,
// local valuations via truncated power series, Riemann-Roch bases for
// multiples of the 24-point orbit divisor, and the evaluation codes those
// bases cut out on the remaining 56 rational points, together with the
// induced coordinate action of the group.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xn/curve.hpp"

namespace xn {

// Sparse bivariate polynomial over GF(p) in the affine chart coordinates
// (x, y) = (x/z, y/z); exponent keys are {i, m} for x^i y^m and every
// stored coefficient is nonzero and reduced into [0, p).
class FieldPoly {
public:
    explicit FieldPoly(const PrimeField& field) : field_(field) {}

    const PrimeField& field() const { return field_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::array<int, 2>, long>& terms() const { return terms_; }

    // Adds c * x^i y^m (coefficient taken mod p, zero entries dropped).
    void add_term(int i, int m, long c);

    FieldPoly plus(const FieldPoly& o) const;
    FieldPoly times(const FieldPoly& o) const;
    FieldPoly times_scalar(long c) const;
    // Partial derivative; var 0 differentiates in x, var 1 in y.
    FieldPoly derivative(int var) const;

    long evaluate(long x0, long y0) const;
    int degree_in(int var) const;

    std::string str() const;  // e.g. "x^2*y + 42*y^3 + 1"

    bool operator==(const FieldPoly& o) const {
        return field_.p() == o.field_.p() && terms_ == o.terms_;
    }

private:
    PrimeField field_;
    std::map<std::array<int, 2>, long> terms_;
};

// A rational function on the curve, written as numerator / denominator in
// the z = 1 chart coordinates; both entries live over the same field.
struct CurveFunction {
    FieldPoly numerator;
    FieldPoly denominator;

    std::string str() const;
};

// A formal sum of rational points with integer multiplicities (sorted by
// point, no zero multiplicities).
struct DivisorOnCurve {
    std::vector<std::pair<ProjectivePoint, long>> coefficients;

    long degree() const;
};

// Everything the function-field computations need about the curve over
// GF(43): the full rational point set (80 points), the orbit of (1:0:0)
// under the group action (24 points), the complementary evaluation set E
// (56 points), and the 22 distinct finite y-values below the orbit.
struct KleinContext {
    PrimeField field;
    long zeta = 0;                              // order-7 root used by the action
    FieldPoly affine_curve;                     // x^3 y + y^3 + x
    std::vector<ProjectivePoint> points;        // all rational points, sorted
    std::vector<ProjectivePoint> orbit_points;  // 24, sorted
    std::vector<ProjectivePoint> eval_points;   // the other 56, sorted
    std::vector<long> fiber_values;             // finite orbit y-values, sorted
};

// Builds the GF(43) context (the construction's constants are specific to
// that field; other primes are rejected).
KleinContext make_klein_context(long p = 43);

// r copies of every orbit point (r >= 0).
DivisorOnCurve orbit_divisor(const KleinContext& ctx, long r);

// prod (y - a)^r over the finite orbit y-values: the common denominator of
// the Riemann-Roch bases below.
FieldPoly fiber_denominator(const KleinContext& ctx, long r);

// Order of vanishing of f at a rational point of the curve (negative at a
// pole).  Works in the chart where the point is finite and expands both
// entries of f as truncated series in a local parameter, doubling the
// precision until the order is resolved; a function that vanishes beyond
// the hard precision cap (it is zero on the curve) is reported as an error,
// as is a zero numerator or a point off the curve.
long valuation(const KleinContext& ctx, const CurveFunction& f,
               const ProjectivePoint& point);

// Value of f at a rational point, resolving 0/0 by local series; throws
// when f genuinely has a pole there.
long evaluate_function(const KleinContext& ctx, const CurveFunction& f,
                       const ProjectivePoint& point);

// Basis of the space L(r * orbit divisor) of functions with poles of order
// at most r confined to the orbit, for 0 <= r <= 3.  Candidates are
// p(x, y) / fiber_denominator^r with deg_x p <= 2 and the y-degrees capped
// by the pole bound at (0:1:0); linear conditions cancel the denominator's
// poles at the non-orbit points of the shared fibers (conjugate points are
// handled in their residue fields) and cut the pole at (1:0:0) down to
// order r.  The caps grow automatically until the dimension reaches the
// Riemann-Roch count 24r - 2 (dim 1 for r = 0); every returned function is
// then certified pointwise: order >= -r on the orbit, no pole on E.
std::vector<CurveFunction> rr_basis(const KleinContext& ctx, long r);

// Linear code obtained by evaluating the basis at the 56 points of E.
struct EvaluationCode {
    long n = 0;  // block length (56)
    long k = 0;  // dimension = rank of the evaluation map
    // k x n over GF(43) in standard form (I | A); generator column j holds
    // evaluations at eval point column_permutation[j].
    FMatrix generator;
    std::vector<long> column_permutation;
    DivisorOnCurve divisor;
    // n - deg(divisor) when that is positive (the usual floor on the
    // minimum distance of an evaluation code).
    std::optional<long> designed_distance;
};

EvaluationCode evaluation_code(const KleinContext& ctx,
                               const std::vector<CurveFunction>& basis,
                               long r);

// Minimum-distance information: the designed floor, plus the smallest
// codeword weight seen by a seeded randomized search (an upper bound that
// is reported, never asserted, to equal the floor).
struct DistanceBounds {
    long lower = 0;
    long witness_upper = 0;
    std::uint64_t examined = 0;  // codewords inspected by the search
};

DistanceBounds distance_bounds(const KleinContext& ctx,
                               const EvaluationCode& code,
                               std::uint64_t seed,
                               std::uint64_t budget = 1'000'000);

// The permutation of E induced by the group element g = [a b; c d] (mod 7)
// acting through the printed 3x3 matrices: position i maps to perm[i] with
// g . eval_points[i] = eval_points[perm[i]].  Verifies that the permuted
// generator rows stay inside the code's row space and throws otherwise.
std::vector<long> permutation_action(const KleinContext& ctx,
                                     const EvaluationCode& code,
                                     const std::array<long, 4>& g);

// {"n", "k", "designed_d", "witness_d", "column_permutation"}; witness_d is
// null unless bounds are supplied.
std::string code_to_json(const EvaluationCode& code,
                         const DistanceBounds* bounds = nullptr);

}  // namespace xn
