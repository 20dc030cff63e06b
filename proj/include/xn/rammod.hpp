#pragma once
// The ramification module of the level-N principal congruence cover: the
// G-module measuring how ramification is distributed over the irreducible
// constituents, with multiplicities normalized by |G|.
//
// The module is computed three independent ways and cross-checked:
//   * ramification_module       — the definitional weighted sum of the
//                                 inductions of the stabilizer characters
//                                 (evaluated through Frobenius reciprocity);
//   * ramification_closed_form  — per-family closed forms keyed on the
//                                 residue of N mod 24, together with the
//                                 intermediate per-column tables;
//   * jk_module / jk_closure    — the fixed-space codimension shortcut,
//                                 which recovers the module exactly when it
//                                 is Galois-invariant and its Galois average
//                                 otherwise.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "xn/chartab.hpp"

namespace xn {

// Formal rational combination of irreducibles, aligned with
// CharacterTable::irreducibles().
using VirtualModule = std::vector<Rational>;

// Multiplicity columns of the three weighted inductions that assemble the
// ramification module:
//   h1: Ind from the order-2 subgroup of its faithful character;
//   h2: Ind from the order-3 subgroup of omega + 2*omega^2;
//   h3: Ind from the order-N subgroup of sum_l l*psi^l.
// All three are given in closed form, keyed on residues of N.
struct WeightedInductionTable {
    VirtualModule h1;
    VirtualModule h2;
    VirtualModule h3;
};

struct RamificationReport {
    long N = 0;
    VirtualModule definitional;
    VirtualModule closed_form;
    VirtualModule jk;          // entries may be half-integral
    VirtualModule jk_closure;  // jk scaled by the Galois image order
    bool galois_invariant = false;
    long S_Q = 0;  // sum of the quadratic residues in [1, N-1]
    long S_N = 0;  // sum of the non-residues in [1, N-1]
    Rational m_parameter;      // the common bulk multiplicity
    std::map<long, long> R;    // cyclic stabilizer order -> ramification weight
    long galois_image_order = 0;
};

// Sum of quadratic residues / non-residues in [1, N-1].
long sum_of_quadratic_residues(long n);
long sum_of_nonresidues(long n);

// The definitional module: multiplicity of each irreducible chi equals
//   (1/2)<Res_{H1} chi, th1> + (1/3)(<Res_{H2} chi, th2> + 2<Res_{H2} chi, th2^2>)
//     + (1/N) sum_{l=1}^{N-1} l * <Res_{H3} chi, th3^l>,
// which by Frobenius reciprocity is the coefficient vector of the weighted
// induction sum.  Entries must come out as nonnegative integers; anything
// else means inconsistent character data and raises std::runtime_error.
VirtualModule ramification_module(const CharacterTable& table);

// Closed forms for the three induction columns (h1, h2, h3 above).
WeightedInductionTable closed_form_induction_table(const CharacterTable& table);

// Closed form for the whole module, organized by the residues of N mod 4,
// mod 3 and mod 8, with per-constituent offsets determined by the values of
// the parametrizing torus character at the order-2 and order-3 elements.
VirtualModule ramification_closed_form(const CharacterTable& table);

// The bulk multiplicity m shared by most constituents (exact; integral for
// every prime N >= 5).
Rational bulk_multiplicity(long n);

// dim of the subspace of irrep i fixed by the order-2/3/N subgroup
// (which = 1, 2, 3), as an exact rational (always integral in fact).
Rational fixed_space_dimension(const CharacterTable& table, std::size_t i,
                               int which);

// The codimension shortcut: mult(pi) = sum_H (dim pi - dim pi^H) * R_H / 2
// over the cyclic stabilizer classes; unramified cyclic classes carry R = 0
// and contribute nothing.  Equals the Galois average of the definitional
// module, so entries may be half-integral.
VirtualModule jk_module(const CharacterTable& table);

// jk_module scaled by the order of the Galois image: the smallest
// Galois-stable module dominating the ramification module, integrally.
VirtualModule jk_closure(const CharacterTable& table);

// True iff the multiplicity vector is constant on every Galois orbit of
// irreducibles (equivalently, fixed by every permutation in the image).
bool is_galois_invariant(const VirtualModule& mults,
                         const CharacterTable& table);

// Total dimension sum mult_i * dim_i of a virtual module.
Rational module_dimension(const CharacterTable& table,
                          const VirtualModule& mults);

// Everything above, bundled.
RamificationReport ramification_report(const CharacterTable& table);

// Row serialization.  The reference ordering is applied for the levels
// where it is pinned (7 and 11); otherwise rows are emitted in canonical
// order and the caller should emit the ordering labels alongside.
std::vector<std::size_t> report_row_order(long n, std::size_t count);
std::string module_row_csv(const VirtualModule& mults,
                           const std::vector<std::size_t>& order);
std::vector<std::string> row_order_names(const CharacterTable& table,
                                         const std::vector<std::size_t>& order);
std::string report_to_json(const RamificationReport& report,
                           const CharacterTable& table);

}  // namespace xn
