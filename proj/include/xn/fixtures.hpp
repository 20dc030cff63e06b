#pragma once
// Frozen reference data: multiplicity rows and row orderings from
// independently tabulated computations, used to validate our results.
//
// The reference tables list irreducibles in their own order, which differs
// from ours only within blocks of equal dimension.  For small levels the
// full permutation is pinned here; for larger levels the tables are
// truncated, so only a row prefix is available and comparisons must be made
// per dimension block (see the tests).
//
// Conventions:
//   * an "order" is a permutation given as canonical indices, i.e.
//     row[p] == canonical[order[p]];
//   * "table" rows come from the big summary table (one row per level);
//   * "example" rows come from the two worked examples, which use a
//     slightly different irreducible numbering than the summary table.

#include <array>
#include <cstddef>
#include <vector>

#include "xn/cyclotomic.hpp"

namespace xn::fixtures {

// Levels with a complete reference row: 5, 7, 11, 13.
std::vector<std::size_t> published_table_order(long n);
std::vector<long> published_gamma_row(long n);
std::vector<Rational> published_average_row(long n);

// Levels with a truncated reference row: 17, 19, 23, 29.
std::vector<long> published_gamma_prefix(long n);
std::vector<Rational> published_average_prefix(long n);

// Worked-example rows and their ordering: levels 7 and 11.
std::vector<std::size_t> published_example_order(long n);
std::vector<long> published_example_gamma(long n);
std::vector<Rational> published_example_average(long n);

// --- frozen GF(43) data for the level-7 curve x^3 y + y^3 z + z^3 x -------

// All 80 rational points, lexicographically sorted (the source list prints
// one block twice; this is the deduplicated set).
const std::vector<std::array<long, 3>>& klein_rational_points_43();

// The 24-point orbit of (1 : 0 : 0) under the curve action.
const std::vector<std::array<long, 3>>& klein_base_orbit_43();

// The three printed generator matrices of the action (the third is fixed
// only up to a scalar by its source).
std::array<std::array<std::array<long, 3>, 3>, 3> klein_rho_generators_43();

// The ten quartic relations of the level-11 model, each as a list of terms
// {coeff, e1, e2, e3, e4, e5}.
std::vector<std::vector<std::array<long, 6>>> published_relations_11();

}  // namespace xn::fixtures
