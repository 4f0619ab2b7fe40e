/*
 * Sparse matrices over A = F_p[x]/(x^d) and two applications of sequence
 * annihilators: the minimal-polynomial ideal of a matrix via randomly
 * projected Krylov sequences with a doubling strategy, and the determinant
 * via a random diagonal preconditioner.
 *
 * ann(A) = { P : P(A) = 0 } equals the annihilator of the full family of
 * coordinate sequences ((A^k)_{ij})_k.  Random projections u^T A^k v see a
 * superset; projections are added (1, 2, 4, ... of them) until the computed
 * generators also cancel an independent validation projection, falling back
 * to all coordinate sequences when the count exceeds n^2.
 *
 * For the determinant, a constant diagonal D makes A*D generically
 * nonderogatory in its constant part; then ann(A*D) is principal, generated
 * by a monic P of degree n, and det(A) = (-1)^n P(0) / prod(D).  A draw is
 * rejected (retried) when the computed ideal does not have that shape.
 */
#pragma once

#include "trunclin/rng.hpp"
#include "trunclin/sequence.hpp"
#include "trunclin/truncpoly.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace trunclin {

struct SparseEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    TruncPoly value;
};

struct SparseMatrixA {
    std::size_t n = 0;                 // square size
    std::vector<SparseEntry> entries;  // at most one per position
};

// throws unless indices are in range and positions are unique
void sparse_check(const Ring& R, const SparseMatrixA& A);

VecA matvec(const Ring& R, const SparseMatrixA& A, const VecA& v);

// terms (u_j^T A^k v)_{j < |U|} for k < length, sharing one Krylov chain
PartialSequence krylov_sequence(const Ring& R, const SparseMatrixA& A,
                                const std::vector<VecA>& U, const VecA& v,
                                std::size_t length);

struct MinimalIdealReport {
    std::vector<AnnPoly> gens;
    std::size_t tau = 0;        // projections used by the accepted round
    bool brute_forced = false;  // fell back to all n^2 coordinate sequences
};

// generators of ann(A) from projected sequences of 2n terms, certified
// against one fresh validation projection per round (Monte Carlo)
MinimalIdealReport minimal_ideal_of_matrix(const Ring& R, const SparseMatrixA& A,
                                           u64 seed);

struct DeterminantReport {
    TruncPoly value;
    unsigned retries = 0;   // preconditioner draws consumed (1 = first try)
    bool ok = false;
};

// Monte Carlo determinant; at most 5 preconditioner draws before giving up
DeterminantReport determinant(const Ring& R, const SparseMatrixA& A, u64 seed);

// dense fraction-free determinant over F_p[x], reduced to A at the end;
// rows[i][j] is the (i, j) entry (the exact reference implementation)
TruncPoly dense_determinant(const Ring& R, const std::vector<VecA>& rows);

std::vector<VecA> sparse_to_dense(const Ring& R, const SparseMatrixA& A);

// about three entries per row (diagonal plus two random positions), each a
// unit of A, so the constant part is generically nonderogatory
SparseMatrixA random_sparse_matrix(const Ring& R, Rng& rng, std::size_t n);

// ---- coordinate-list text files -------------------------------------------
// header "p d n nnz", then one line "row col c_0 ... c_{d-1}" per entry

std::string matrix_to_text(const Ring& R, const SparseMatrixA& A);
std::pair<Ring, SparseMatrixA> matrix_from_text(std::istream& in);

} // namespace trunclin
