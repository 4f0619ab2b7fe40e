/*
 * Lazy variant of Kurakin's algorithm.
 *
 * Instead of tracking all d monomials x^0..x^{d-1}, a list U of potentially
 * useful monomials is grown on demand (starting from U = {0}).  A candidate
 * i' > i becomes useful when either
 *   u2: multiplying the tracked sequence of x^i by x^{i'-i} changes the index
 *       of its first nonzero term, or
 *   u3: the leading element of x^i's sequence is not in the table submodule
 *       but its x^{i'-i} multiple is.
 * For i not in U the polynomial is reconstructed as x^{i-i1} P_{i1} from the
 * largest tracked i1 < i; the resulting family has the same degree staircase
 * as the full algorithm's output.
 */
#pragma once

#include "trunclin/kurakin.hpp"

namespace trunclin {

// u2: true iff multiplying x^i's tracked sequence by x^{ip-i} moves the index
// of the first nonzero term (requires ip > i; false for all-zero sequences)
bool check_u2(const Ring& R, const PartialSequence& Sq, unsigned i, unsigned ip);

// minimal i' in (i, d) with x^{i'-i} * s_k in span(gens), found by binary
// search (membership is monotone in the exponent); nullopt if there is none.
// Each membership test increments *calls when given.
std::optional<unsigned> find_min_useful_u3(const Ring& R,
                                           const std::vector<VecA>& gens,
                                           const VecA& s_k, unsigned i,
                                           u64* calls = nullptr);

struct LazyKurakinResult {
    std::vector<unsigned> useful;   // U, ascending, useful[0] == 0
    std::vector<AnnPoly> polys;     // aligned with useful
    u64 subiterations = 0;
    u64 membership_calls = 0;

    std::size_t dstar() const { return useful.size(); }
};

LazyKurakinResult lazy_kurakin_annihilator(const Ring& R, const PartialSequence& S,
                                           bool check_invariants = false);

// all d polynomials, filling the gaps by the reconstruction rule
std::vector<AnnPoly> reconstruct_full(const Ring& R, const LazyKurakinResult& L);

} // namespace trunclin
