/*
 * Kurakin's iterative annihilator algorithm.
 *
 * For a partial sequence S over A^n it computes, for every i < d, a canceling
 * polynomial P_i of minimal degree whose leading coefficient is exactly x^i.
 * For e >= 2*delta these generate ann(S), and their images together with
 * alpha^d form a lexicographic Groebner basis of the bivariate ideal.
 *
 * The state is a table of A-submodules of A^n indexed by the number k of
 * leading zeros of the tracked sequences; membership and reduction questions
 * on the table are answered through right approximant bases in Popov form.
 */
#pragma once

#include "trunclin/polymat.hpp"
#include "trunclin/sequence.hpp"

#include <optional>
#include <vector>

namespace trunclin {

struct SubmoduleTable {
    struct Slot {
        std::vector<VecA> gens;              // generators of I[k], at most n
        std::vector<AnnPoly> polys;          // companion polynomials
        std::vector<PartialSequence> seqs;   // companion sequences
    };
    std::vector<Slot> slots;                 // indexed by leading-zero count k

    explicit SubmoduleTable(std::size_t e) : slots(e) {}
};

// Decide target in span_A(gens) and return coefficients c with
// target = sum_j c_j gens[j].  Computed from the right approximant basis of
// [gens | target] at order d in Popov form: a basis column whose last entry
// is a unit of A encodes a solution.
std::optional<std::vector<TruncPoly>> submodule_membership_and_solve(
    const Ring& R, const std::vector<VecA>& gens, const VecA& target);

// Append (gen, poly, seq) to slot k.  When the generator count would exceed
// n, one redundant generator (located through a unit entry of the approximant
// basis of the generator matrix) is removed together with its companions.
// Requires gen not already in span(I[k]); check_pre enforces this at a cost.
void submodule_insert_and_reduce(const Ring& R, SubmoduleTable& T, std::size_t k,
                                 const VecA& gen, const AnnPoly& poly,
                                 const PartialSequence& seq, bool check_pre = false);

struct KurakinResult {
    std::vector<AnnPoly> polys;   // polys[i] has leading coefficient x^i
    u64 subiterations = 0;        // cancellation steps (the t counter)
    u64 membership_calls = 0;
};

// check_invariants recomputes the tracked sequences and leading coefficients
// at every step (for tests; quadratic overhead)
KurakinResult kurakin_annihilator(const Ring& R, const PartialSequence& S,
                                  bool check_invariants = false);

} // namespace trunclin
