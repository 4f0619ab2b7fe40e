/*
 * Annihilators through the block-Hankel matrix of a sequence.
 *
 * A sequence S_0..S_{2e-1} of vectors in A^n yields a block-Hankel matrix
 * H with mu = e+1 rows and e blocks of n columns, block (i, j) = S_{i+j}
 * lifted to F_p[x].  Left approximants of H at order d correspond exactly
 * to the annihilator polynomials of degree <= e, so a Popov order basis
 * computes a generating set of ann(S) once e reaches the order of S.
 *
 * The compressed variant multiplies H on the right by a random constant
 * matrix C with r = mu columns and runs the order-basis computation on the
 * much smaller H*C.  The product exploits the Hankel structure: each
 * (coordinate, column) pair costs one univariate polynomial product.  The
 * result is Monte Carlo; with entries sampled from a set of size kappa the
 * compressed module equals the true one with probability >= 1 - mu/kappa,
 * and an optional majority vote over three draws hardens the answer.
 */
#pragma once

#include "trunclin/polymat.hpp"
#include "trunclin/rng.hpp"
#include "trunclin/sequence.hpp"

namespace trunclin {

struct BlockHankel {
    PolyMatrix gens;           // (mu + e - 1) x n, row k = generator F_k
    std::size_t mu = 0;        // rows of the materialized matrix
    std::size_t e = 0;         // block-columns
    std::size_t n = 0;         // block width
};

struct CompressionConfig {
    std::size_t r = 0;         // target column count; 0 means the default mu
    u64 kappa = 2;             // sample-set size (entries drawn below min(kappa, p))
    u64 seed = 0;
    bool verified = false;     // majority vote over 3 independent compressions
};

// block-Hankel matrix of the first 2e terms (mu = e + 1 rows)
BlockHankel build_hankel(const Ring& R, const PartialSequence& S, std::size_t e);

// dense mu x (e*n) lift of H over F_p[x]
PolyMatrix materialize(const BlockHankel& H);

// exact product H * C for a constant C of shape (e*n) x r, computed from the
// generators by n*r univariate correlation products, never materializing H
PolyMatrix structured_right_multiply(const Fp& fp, const BlockHankel& H,
                                     const FpMat& C);

// column shift {0, d+1, 2(d+1), ...} for a basis with mu rows: it weighs a
// y-power heavier than any x-degree below d, so the pivots of the shifted
// Popov basis realize, for every y-degree, the canceler with the smallest
// leading x-valuation.  An unshifted Popov basis generates the same module
// but its rows generically all have y-degree e, hiding the staircase.
std::vector<i64> staircase_shift(std::size_t mu, unsigned d);

// generators of ann(S) restricted to degree <= e, from an order-d basis of
// the left approximants of the block-Hankel matrix.  Computed under
// staircase_shift, so the leading terms x^{v_j} y^j of the output form the
// minimal staircase of the generated ideal directly.
std::vector<AnnPoly> hankel_kernel_annihilator(const Ring& R,
                                               const PartialSequence& S,
                                               std::size_t e);

// w-Popov basis of App_d(H), compressed when mu < e*n (Monte Carlo), exact
// fall-through to the uncompressed computation otherwise
ApproximantBasis hankel_pm_basis(const Fp& fp, unsigned d, const BlockHankel& H,
                                 std::vector<i64> w, const CompressionConfig& cfg);

// annihilator polynomials read off a reduced order basis: rows are truncated
// at x^d and the nonzero ones are returned as polynomials in y
std::vector<AnnPoly> basis_to_annihilators(const Ring& R, const ApproximantBasis& B);

} // namespace trunclin
