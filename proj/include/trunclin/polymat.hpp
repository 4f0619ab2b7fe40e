#pragma once
/*
 * Dense linear algebra over F_p and minimal approximant bases for matrices
 * over F_p[x].
 *
 * A PolyMatrix is stored as a list of constant coefficient matrices, which
 * keeps the inner loops of the order-basis iteration plain GEMMs.  pm_basis
 * computes a shift-reduced (in fact weak Popov) basis of the approximant
 * module  App_sigma(F) = { row p : p F = 0 mod x^sigma }  by the classic
 * M-Basis iteration (constant kernel + row shifts, one x-order at a time)
 * below a threshold and by divide-and-conquer on the order above it.
 * popov_normalize turns any such reduced basis into the canonical shifted
 * Popov form (Mulders-Storjohann collision elimination, then full term
 * reduction against the pivot rows).
 */

#include <cstddef>
#include <optional>
#include <vector>

#include "trunclin/fp.hpp"

namespace trunclin {

// ---- constant matrices over F_p --------------------------------------------

struct FpMat {
    std::size_t rows = 0, cols = 0;
    std::vector<u64> a;   // row-major

    FpMat() = default;
    FpMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    u64& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    u64 at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    u64* row(std::size_t i) { return a.data() + i * cols; }
    const u64* row(std::size_t i) const { return a.data() + i * cols; }

    bool is_zero() const
    {
        for (u64 v : a) if (v) return false;
        return true;
    }

    bool operator==(const FpMat&) const = default;
};

// C += A * B
void matmul_acc(const Fp& fp, FpMat& C, const FpMat& A, const FpMat& B);
FpMat matmul(const Fp& fp, const FpMat& A, const FpMat& B);

std::size_t fp_rank(const Fp& fp, FpMat M);
// basis of { v : v M = 0 } as rows (possibly 0 x rows matrix)
FpMat fp_left_nullspace(const Fp& fp, const FpMat& M);
// one solution of x M = b, if any
std::optional<std::vector<u64>> fp_solve_left(const Fp& fp, const FpMat& M,
                                              const std::vector<u64>& b);
std::optional<FpMat> fp_inverse(const Fp& fp, const FpMat& M);

// ---- polynomial matrices ----------------------------------------------------

struct PolyMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<FpMat> coeff;   // coeff[k] = coefficient of x^k; empty == 0

    PolyMatrix() = default;
    PolyMatrix(std::size_t r, std::size_t c) : rows(r), cols(c) {}

    std::size_t len() const { return coeff.size(); }
    void ensure_len(std::size_t l)
    {
        while (coeff.size() < l) coeff.emplace_back(rows, cols);
    }
    void trim()
    {
        while (!coeff.empty() && coeff.back().is_zero()) coeff.pop_back();
    }

    u64 coeff_at(std::size_t i, std::size_t j, std::size_t k) const
    {
        return k < coeff.size() ? coeff[k].at(i, j) : 0;
    }
    void set_coeff(std::size_t i, std::size_t j, std::size_t k, u64 v)
    {
        ensure_len(k + 1);
        coeff[k].at(i, j) = v;
    }

    // dense coefficient vector of entry (i, j), trimmed
    std::vector<u64> entry(std::size_t i, std::size_t j) const;
    // degree of entry (i, j); -1 for the zero entry
    i64 entry_deg(std::size_t i, std::size_t j) const;

    bool operator==(const PolyMatrix&) const = default;
};

PolyMatrix poly_identity(std::size_t n);
PolyMatrix poly_transpose(const PolyMatrix& A);
PolyMatrix poly_matmul(const Fp& fp, const PolyMatrix& A, const PolyMatrix& B);
// coefficients lo..hi-1 of A*B, reindexed to start at 0 (middle product)
PolyMatrix poly_matmul_range(const Fp& fp, const PolyMatrix& A,
                             const PolyMatrix& B, std::size_t lo, std::size_t hi);
// coefficient `ord` of P * F
FpMat residual_coeff(const Fp& fp, const PolyMatrix& P, const PolyMatrix& F,
                     std::size_t ord);

// shifted row degree max_j (deg P(i,j) + shift[j]); -2^62 for a zero row
i64 shifted_rdeg(const PolyMatrix& P, std::size_t i, const std::vector<i64>& shift);
// rightmost column attaining the shifted row degree
std::size_t pivot_col(const PolyMatrix& P, std::size_t i, const std::vector<i64>& shift);

// ---- approximant bases ------------------------------------------------------

enum class BasisForm { reduced, popov };

struct ApproximantBasis {
    PolyMatrix basis;            // square, rows span App_order(F)
    std::size_t order = 0;
    std::vector<i64> shift;
    BasisForm form = BasisForm::reduced;
    std::vector<i64> mindeg;     // shift-minimal (pivot) degrees, per row
};

// iterative base case; also usable on its own
ApproximantBasis m_basis(const Fp& fp, const PolyMatrix& F, std::size_t order,
                         std::vector<i64> shift);

// divide-and-conquer order basis; default shift is all zero
ApproximantBasis pm_basis(const Fp& fp, const PolyMatrix& F, std::size_t order,
                          std::vector<i64> shift = {});

// canonical shifted Popov form of a reduced basis of the same module
ApproximantBasis popov_normalize(const Fp& fp, const ApproximantBasis& B);

// divide v (a 1 x n polynomial row) by the rows of a Popov basis; the
// remainder is 0 exactly when v lies in the module spanned by the rows
std::vector<std::vector<u64>> reduce_row_mod_popov(const Fp& fp,
                                                   std::vector<std::vector<u64>> v,
                                                   const ApproximantBasis& P);

// checks used by tests and internal assertions
bool is_shift_reduced(const Fp& fp, const PolyMatrix& B, const std::vector<i64>& shift);
bool is_shift_popov(const Fp& fp, const PolyMatrix& B, const std::vector<i64>& shift);

// threshold below which pm_basis falls back to the iterative m_basis
inline constexpr std::size_t kPmBasisThreshold = 32;

} // namespace trunclin
