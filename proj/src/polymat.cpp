/*
 * Constant F_p linear algebra, polynomial matrices, order bases (M-Basis /
 * PM-Basis) and Popov normalization.
 */

#include "trunclin/polymat.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace trunclin {

// ======================= constant linear algebra =============================

void matmul_acc(const Fp& fp, FpMat& C, const FpMat& A, const FpMat& B)
{
    if (A.cols != B.rows || C.rows != A.rows || C.cols != B.cols)
        throw std::invalid_argument("matmul: dimension mismatch");
    const std::size_t n = A.cols, m = B.cols;
    for (std::size_t i = 0; i < A.rows; ++i) {
        u64* crow = C.row(i);
        std::size_t k0 = 0;
        while (k0 < n) {
            const std::size_t k1 = std::min(n, k0 + fp.lazy_stride);
            for (std::size_t k = k0; k < k1; ++k) {
                const u64 aik = A.at(i, k);
                if (!aik) continue;
                const u64* brow = B.row(k);
                for (std::size_t j = 0; j < m; ++j) crow[j] += aik * brow[j];
            }
            for (std::size_t j = 0; j < m; ++j) crow[j] = fp.reduce(crow[j]);
            k0 = k1;
        }
    }
}

FpMat matmul(const Fp& fp, const FpMat& A, const FpMat& B)
{
    FpMat C(A.rows, B.cols);
    matmul_acc(fp, C, A, B);
    return C;
}

namespace {

// in-place forward elimination, processing rows in order; returns the pivot
// (column -> row) assignments.  Pivot rows are scaled monic.
std::vector<std::pair<std::size_t, std::size_t>> echelonize(const Fp& fp, FpMat& W,
                                                            std::size_t active_cols)
{
    std::vector<std::pair<std::size_t, std::size_t>> pivots;   // (col, row)
    for (std::size_t i = 0; i < W.rows; ++i) {
        for (auto [c, r] : pivots) {
            const u64 f = W.at(i, c);
            if (!f) continue;
            const u64* src = W.row(r);
            u64* dst = W.row(i);
            for (std::size_t j = 0; j < W.cols; ++j)
                dst[j] = fp.sub(dst[j], fp.mul(f, src[j]));
        }
        std::size_t c = 0;
        while (c < active_cols && W.at(i, c) == 0) ++c;
        if (c == active_cols) continue;
        const u64 s = fp.inv(W.at(i, c));
        u64* dst = W.row(i);
        for (std::size_t j = 0; j < W.cols; ++j) dst[j] = fp.mul(s, dst[j]);
        pivots.emplace_back(c, i);
    }
    return pivots;
}

} // namespace

std::size_t fp_rank(const Fp& fp, FpMat M)
{
    return echelonize(fp, M, M.cols).size();
}

FpMat fp_left_nullspace(const Fp& fp, const FpMat& M)
{
    // eliminate [M | I]; rows whose M-part vanished carry a kernel vector
    FpMat W(M.rows, M.cols + M.rows);
    for (std::size_t i = 0; i < M.rows; ++i) {
        std::copy(M.row(i), M.row(i) + M.cols, W.row(i));
        W.at(i, M.cols + i) = 1;
    }
    echelonize(fp, W, M.cols);
    std::vector<std::size_t> null_rows;
    for (std::size_t i = 0; i < M.rows; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < M.cols && zero; ++j) zero = W.at(i, j) == 0;
        if (zero) null_rows.push_back(i);
    }
    FpMat N(null_rows.size(), M.rows);
    for (std::size_t k = 0; k < null_rows.size(); ++k)
        std::copy(W.row(null_rows[k]) + M.cols, W.row(null_rows[k]) + W.cols, N.row(k));
    return N;
}

std::optional<std::vector<u64>> fp_solve_left(const Fp& fp, const FpMat& M,
                                              const std::vector<u64>& b)
{
    if (b.size() != M.cols)
        throw std::invalid_argument("fp_solve_left: dimension mismatch");
    // x M = b  <=>  M^T x^T = b^T; eliminate the augmented transpose
    FpMat W(M.cols, M.rows + 1);
    for (std::size_t i = 0; i < M.cols; ++i) {
        for (std::size_t j = 0; j < M.rows; ++j) W.at(i, j) = M.at(j, i);
        W.at(i, M.rows) = fp.reduce(b[i]);
    }
    auto pivots = echelonize(fp, W, M.rows);
    for (std::size_t i = 0; i < W.rows; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < M.rows && zero; ++j) zero = W.at(i, j) == 0;
        if (zero && W.at(i, M.rows) != 0) return std::nullopt;   // inconsistent
    }
    // back substitution over the echelon rows (free unknowns set to 0)
    std::vector<u64> x(M.rows, 0);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        auto [c, r] = *it;
        u64 v = W.at(r, M.rows);
        for (std::size_t j = c + 1; j < M.rows; ++j)
            v = fp.sub(v, fp.mul(W.at(r, j), x[j]));
        x[c] = v;   // pivot is monic
    }
    return x;
}

std::optional<FpMat> fp_inverse(const Fp& fp, const FpMat& M)
{
    if (M.rows != M.cols) return std::nullopt;
    FpMat W(M.rows, 2 * M.rows);
    for (std::size_t i = 0; i < M.rows; ++i) {
        std::copy(M.row(i), M.row(i) + M.cols, W.row(i));
        W.at(i, M.cols + i) = 1;
    }
    auto pivots = echelonize(fp, W, M.cols);
    if (pivots.size() != M.rows) return std::nullopt;
    // back-eliminate above the pivots (reverse insertion order)
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        auto [c, r] = *it;
        for (std::size_t i = 0; i < M.rows; ++i) {
            if (i == r) continue;
            const u64 f = W.at(i, c);
            if (!f) continue;
            for (std::size_t j = 0; j < W.cols; ++j)
                W.at(i, j) = fp.sub(W.at(i, j), fp.mul(f, W.at(r, j)));
        }
    }
    FpMat inv(M.rows, M.rows);
    for (auto [c, r] : pivots)
        std::copy(W.row(r) + M.cols, W.row(r) + W.cols, inv.row(c));
    return inv;
}

// ======================= polynomial matrices =================================

std::vector<u64> PolyMatrix::entry(std::size_t i, std::size_t j) const
{
    std::vector<u64> e;
    for (std::size_t k = coeff.size(); k-- > 0;)
        if (coeff[k].at(i, j)) { e.resize(k + 1); break; }
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = coeff[k].at(i, j);
    return e;
}

i64 PolyMatrix::entry_deg(std::size_t i, std::size_t j) const
{
    for (std::size_t k = coeff.size(); k-- > 0;)
        if (coeff[k].at(i, j)) return static_cast<i64>(k);
    return -1;
}

PolyMatrix poly_identity(std::size_t n)
{
    PolyMatrix P(n, n);
    P.ensure_len(1);
    for (std::size_t i = 0; i < n; ++i) P.coeff[0].at(i, i) = 1;
    return P;
}

PolyMatrix poly_transpose(const PolyMatrix& A)
{
    PolyMatrix T(A.cols, A.rows);
    T.coeff.reserve(A.len());
    for (const FpMat& M : A.coeff) {
        FpMat N(M.cols, M.rows);
        for (std::size_t i = 0; i < M.rows; ++i)
            for (std::size_t j = 0; j < M.cols; ++j) N.at(j, i) = M.at(i, j);
        T.coeff.push_back(std::move(N));
    }
    return T;
}

PolyMatrix poly_matmul_range(const Fp& fp, const PolyMatrix& A, const PolyMatrix& B,
                             std::size_t lo, std::size_t hi)
{
    if (A.cols != B.rows)
        throw std::invalid_argument("poly_matmul: dimension mismatch");
    PolyMatrix C(A.rows, B.cols);
    if (lo >= hi || A.len() == 0 || B.len() == 0) return C;
    C.ensure_len(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) {
        const std::size_t amax = std::min(k, A.len() - 1);
        for (std::size_t a = 0; a <= amax; ++a) {
            const std::size_t b = k - a;
            if (b >= B.len()) continue;
            matmul_acc(fp, C.coeff[k - lo], A.coeff[a], B.coeff[b]);
        }
    }
    C.trim();
    return C;
}

PolyMatrix poly_matmul(const Fp& fp, const PolyMatrix& A, const PolyMatrix& B)
{
    const std::size_t l = A.len() && B.len() ? A.len() + B.len() - 1 : 0;
    return poly_matmul_range(fp, A, B, 0, l);
}

FpMat residual_coeff(const Fp& fp, const PolyMatrix& P, const PolyMatrix& F,
                     std::size_t ord)
{
    FpMat R(P.rows, F.cols);
    for (std::size_t k = 0; k < P.len() && k <= ord; ++k) {
        const std::size_t b = ord - k;
        if (b >= F.len()) continue;
        matmul_acc(fp, R, P.coeff[k], F.coeff[b]);
    }
    return R;
}

i64 shifted_rdeg(const PolyMatrix& P, std::size_t i, const std::vector<i64>& shift)
{
    i64 r = std::numeric_limits<i64>::min() / 2;
    for (std::size_t j = 0; j < P.cols; ++j) {
        const i64 dg = P.entry_deg(i, j);
        if (dg >= 0) r = std::max(r, dg + shift[j]);
    }
    return r;
}

std::size_t pivot_col(const PolyMatrix& P, std::size_t i, const std::vector<i64>& shift)
{
    const i64 r = shifted_rdeg(P, i, shift);
    std::size_t piv = P.cols;   // sentinel: zero row
    for (std::size_t j = 0; j < P.cols; ++j) {
        const i64 dg = P.entry_deg(i, j);
        if (dg >= 0 && dg + shift[j] == r) piv = j;
    }
    return piv;
}

// ======================= M-Basis =============================================

namespace {

std::vector<i64> checked_shift(std::vector<i64> shift, std::size_t rows,
                               const char* who)
{
    if (shift.empty()) shift.assign(rows, 0);
    if (shift.size() != rows)
        throw std::invalid_argument(std::string(who) + ": shift length != row count");
    return shift;
}

} // namespace

ApproximantBasis m_basis(const Fp& fp, const PolyMatrix& F, std::size_t order,
                         std::vector<i64> shift)
{
    const std::size_t mu = F.rows;
    shift = checked_shift(std::move(shift), mu, "m_basis");

    ApproximantBasis out;
    out.order = order;
    out.shift = shift;
    out.form = BasisForm::reduced;
    out.mindeg.assign(mu, 0);
    out.basis = poly_identity(mu);

    std::vector<i64> rdeg = shift;
    PolyMatrix& P = out.basis;

    for (std::size_t ord = 0; ord < order; ++ord) {
        const FpMat R = residual_coeff(fp, P, F, ord);
        if (R.is_zero()) continue;

        // process rows by increasing shifted degree, stable on the row index
        std::vector<std::size_t> idx(mu);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return rdeg[a] < rdeg[b]; });

        struct Piv {
            std::vector<u64> vec;     // reduced residual row, monic at col
            std::vector<u64> combo;   // expression in original rows
            std::size_t col;
        };
        std::vector<Piv> pivots;
        std::vector<std::size_t> pivot_rows;
        std::vector<std::pair<std::size_t, std::vector<u64>>> kernel;

        for (std::size_t r : idx) {
            std::vector<u64> row(R.row(r), R.row(r) + R.cols);
            std::vector<u64> combo(mu, 0);
            combo[r] = 1;
            for (const Piv& pv : pivots) {
                const u64 f = row[pv.col];
                if (!f) continue;
                for (std::size_t j = 0; j < row.size(); ++j)
                    row[j] = fp.sub(row[j], fp.mul(f, pv.vec[j]));
                for (std::size_t j = 0; j < mu; ++j)
                    combo[j] = fp.sub(combo[j], fp.mul(f, pv.combo[j]));
            }
            std::size_t c = 0;
            while (c < row.size() && row[c] == 0) ++c;
            if (c == row.size()) {
                kernel.emplace_back(r, std::move(combo));
            } else {
                const u64 s = fp.inv(row[c]);
                for (u64& v : row) v = fp.mul(s, v);
                for (u64& v : combo) v = fp.mul(s, v);
                pivots.push_back({std::move(row), std::move(combo), c});
                pivot_rows.push_back(r);
            }
        }

        // kernel rows become constant combinations of the old rows (their own
        // row plus earlier pivot rows); pivot rows are multiplied by x
        for (FpMat& C : P.coeff) {
            for (const auto& [r, combo] : kernel) {
                std::vector<u64> acc(P.cols, 0);
                for (std::size_t j = 0; j < mu; ++j) {
                    const u64 f = combo[j];
                    if (!f) continue;
                    const u64* src = C.row(j);
                    for (std::size_t t = 0; t < P.cols; ++t)
                        acc[t] = fp.add(acc[t], fp.mul(f, src[t]));
                }
                std::copy(acc.begin(), acc.end(), C.row(r));
            }
        }
        if (!pivot_rows.empty()) {
            P.ensure_len(P.len() + 1);
            for (std::size_t k = P.len(); k-- > 1;)
                for (std::size_t r : pivot_rows)
                    std::copy(P.coeff[k - 1].row(r), P.coeff[k - 1].row(r) + P.cols,
                              P.coeff[k].row(r));
            for (std::size_t r : pivot_rows)
                std::fill(P.coeff[0].row(r), P.coeff[0].row(r) + P.cols, 0);
            for (std::size_t r : pivot_rows) {
                ++rdeg[r];
                ++out.mindeg[r];
            }
        }
        P.trim();
    }
    P.trim();
    return out;
}

// ======================= PM-Basis ============================================

ApproximantBasis pm_basis(const Fp& fp, const PolyMatrix& F, std::size_t order,
                          std::vector<i64> shift)
{
    const std::size_t mu = F.rows;
    shift = checked_shift(std::move(shift), mu, "pm_basis");

    if (order <= kPmBasisThreshold)
        return m_basis(fp, F, order, std::move(shift));

    const std::size_t o1 = order / 2, o2 = order - o1;

    PolyMatrix F1 = F;
    if (F1.len() > o1) F1.coeff.resize(o1);
    ApproximantBasis B1 = pm_basis(fp, F1, o1, shift);

    // residual for the second half: coefficients o1..order-1 of B1 * F
    PolyMatrix G = poly_matmul_range(fp, B1.basis, F, o1, order);

    std::vector<i64> shift2(mu);
    for (std::size_t i = 0; i < mu; ++i) shift2[i] = shift[i] + B1.mindeg[i];
    ApproximantBasis B2 = pm_basis(fp, G, o2, shift2);

    ApproximantBasis out;
    out.order = order;
    out.shift = std::move(shift);
    out.form = BasisForm::reduced;
    out.basis = poly_matmul(fp, B2.basis, B1.basis);
    out.basis.trim();
    out.mindeg.resize(mu);
    for (std::size_t i = 0; i < mu; ++i) out.mindeg[i] = B1.mindeg[i] + B2.mindeg[i];
    return out;
}

// ======================= Popov normalization =================================

namespace {

// rows as dense per-entry coefficient vectors, convenient for row operations
using PolyRow = std::vector<std::vector<u64>>;

i64 vec_deg(const std::vector<u64>& v)
{
    for (std::size_t k = v.size(); k-- > 0;)
        if (v[k]) return static_cast<i64>(k);
    return -1;
}

void vec_trim(std::vector<u64>& v)
{
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// dst -= c * x^sh * src
void axpy_shifted(const Fp& fp, std::vector<u64>& dst, u64 c, std::size_t sh,
                  const std::vector<u64>& src)
{
    if (dst.size() < src.size() + sh) dst.resize(src.size() + sh, 0);
    for (std::size_t k = 0; k < src.size(); ++k)
        dst[k + sh] = fp.sub(dst[k + sh], fp.mul(c, src[k]));
    vec_trim(dst);
}

void row_axpy_shifted(const Fp& fp, PolyRow& dst, u64 c, std::size_t sh,
                      const PolyRow& src)
{
    for (std::size_t j = 0; j < dst.size(); ++j)
        axpy_shifted(fp, dst[j], c, sh, src[j]);
}

i64 row_rdeg(const PolyRow& r, const std::vector<i64>& shift)
{
    i64 m = std::numeric_limits<i64>::min() / 2;
    for (std::size_t j = 0; j < r.size(); ++j) {
        const i64 dg = vec_deg(r[j]);
        if (dg >= 0) m = std::max(m, dg + shift[j]);
    }
    return m;
}

std::size_t row_pivot(const PolyRow& r, const std::vector<i64>& shift)
{
    const i64 m = row_rdeg(r, shift);
    std::size_t piv = r.size();
    for (std::size_t j = 0; j < r.size(); ++j) {
        const i64 dg = vec_deg(r[j]);
        if (dg >= 0 && dg + shift[j] == m) piv = j;
    }
    return piv;
}

PolyRow take_row(const PolyMatrix& P, std::size_t i)
{
    PolyRow r(P.cols);
    for (std::size_t j = 0; j < P.cols; ++j) r[j] = P.entry(i, j);
    return r;
}

} // namespace

ApproximantBasis popov_normalize(const Fp& fp, const ApproximantBasis& B)
{
    if (B.form == BasisForm::popov) return B;
    const PolyMatrix& M = B.basis;
    if (M.rows != M.cols)
        throw std::invalid_argument("popov_normalize: basis must be square");
    const std::size_t n = M.rows;
    const std::vector<i64>& shift = B.shift;

    std::vector<PolyRow> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = take_row(M, i);

    // Mulders-Storjohann: clear pivot collisions with simple transformations
    for (;;) {
        std::vector<std::size_t> owner(n, n);   // pivot col -> row
        std::size_t i1 = n, i2 = n;
        for (std::size_t i = 0; i < n && i1 == n; ++i) {
            const std::size_t pc = row_pivot(rows[i], shift);
            if (pc >= n)
                throw std::logic_error("popov_normalize: zero row in basis");
            if (owner[pc] == n) {
                owner[pc] = i;
            } else {
                i1 = owner[pc];
                i2 = i;
            }
        }
        if (i1 == n) break;
        const std::size_t pc = row_pivot(rows[i1], shift);
        i64 d1 = vec_deg(rows[i1][pc]), d2 = vec_deg(rows[i2][pc]);
        if (d1 < d2) std::swap(i1, i2), std::swap(d1, d2);
        const u64 c = fp.mul(rows[i1][pc][d1], fp.inv(rows[i2][pc][d2]));
        row_axpy_shifted(fp, rows[i1], c, static_cast<std::size_t>(d1 - d2), rows[i2]);
    }

    // square, nonsingular and weak Popov: pivots form a permutation
    std::vector<PolyRow> sorted(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t pc = row_pivot(rows[i], shift);
        if (pc >= n || !sorted[pc].empty())
            throw std::logic_error("popov_normalize: pivot structure is not a permutation");
        sorted[pc] = std::move(rows[i]);
    }
    rows = std::move(sorted);

    // monic pivots
    std::vector<i64> pivdeg(n);
    for (std::size_t i = 0; i < n; ++i) {
        pivdeg[i] = vec_deg(rows[i][i]);
        const u64 s = fp.inv(rows[i][i][pivdeg[i]]);
        if (s != 1)
            for (auto& e : rows[i])
                for (u64& v : e) v = fp.mul(s, v);
    }

    // full reduction: repeatedly cancel the largest term sitting on or above
    // another row's pivot degree; each cancellation only introduces terms
    // that are strictly smaller in the (deg + shift, column) order
    for (std::size_t i = 0; i < n; ++i) {
        for (;;) {
            std::size_t bestk = n;
            i64 bestdeg = -1, bestkey = std::numeric_limits<i64>::min();
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i) continue;
                const i64 dg = vec_deg(rows[i][k]);
                if (dg < pivdeg[k]) continue;
                const i64 key = dg + shift[k];
                if (key > bestkey || (key == bestkey && k > bestk)) {
                    bestkey = key;
                    bestk = k;
                    bestdeg = dg;
                }
            }
            if (bestk == n) break;
            const u64 c = rows[i][bestk][bestdeg];
            row_axpy_shifted(fp, rows[i], c,
                             static_cast<std::size_t>(bestdeg - pivdeg[bestk]),
                             rows[bestk]);
        }
    }

    ApproximantBasis out;
    out.order = B.order;
    out.shift = shift;
    out.form = BasisForm::popov;
    out.mindeg = pivdeg;
    out.basis = PolyMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < rows[i][j].size(); ++k)
                if (rows[i][j][k]) out.basis.set_coeff(i, j, k, rows[i][j][k]);
    out.basis.trim();
    return out;
}

std::vector<std::vector<u64>> reduce_row_mod_popov(const Fp& fp,
                                                   std::vector<std::vector<u64>> v,
                                                   const ApproximantBasis& P)
{
    if (P.form != BasisForm::popov)
        throw std::invalid_argument("reduce_row_mod_popov: basis must be in Popov form");
    if (v.size() != P.basis.cols)
        throw std::invalid_argument("reduce_row_mod_popov: dimension mismatch");
    const std::size_t n = P.basis.rows;
    std::vector<PolyRow> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = take_row(P.basis, i);
    for (auto& e : v) vec_trim(e);

    for (;;) {
        std::size_t bestk = n;
        i64 bestdeg = -1, bestkey = std::numeric_limits<i64>::min();
        for (std::size_t k = 0; k < n; ++k) {
            const i64 dg = vec_deg(v[k]);
            if (dg < P.mindeg[k]) continue;
            const i64 key = dg + P.shift[k];
            if (key > bestkey || (key == bestkey && k > bestk)) {
                bestkey = key;
                bestk = k;
                bestdeg = dg;
            }
        }
        if (bestk == n) break;
        const u64 c = v[bestk][bestdeg];
        row_axpy_shifted(fp, v, c, static_cast<std::size_t>(bestdeg - P.mindeg[bestk]),
                         rows[bestk]);
    }
    return v;
}

// ======================= form checks =========================================

bool is_shift_reduced(const Fp& fp, const PolyMatrix& B, const std::vector<i64>& shift)
{
    if (B.rows > B.cols) return false;
    FpMat L(B.rows, B.cols);
    for (std::size_t i = 0; i < B.rows; ++i) {
        const i64 r = shifted_rdeg(B, i, shift);
        if (r < -(std::numeric_limits<i64>::max() / 4)) return false;   // zero row
        for (std::size_t j = 0; j < B.cols; ++j) {
            const i64 dg = r - shift[j];
            if (dg >= 0) L.at(i, j) = B.coeff_at(i, j, static_cast<std::size_t>(dg));
        }
    }
    return fp_rank(fp, L) == B.rows;
}

bool is_shift_popov(const Fp& fp, const PolyMatrix& B, const std::vector<i64>& shift)
{
    if (B.rows != B.cols) return false;
    if (!is_shift_reduced(fp, B, shift)) return false;
    for (std::size_t i = 0; i < B.rows; ++i) {
        if (pivot_col(B, i, shift) != i) return false;
        const i64 pd = B.entry_deg(i, i);
        if (pd < 0 || B.coeff_at(i, i, static_cast<std::size_t>(pd)) != 1) return false;
        for (std::size_t k = 0; k < B.rows; ++k)
            if (k != i && B.entry_deg(k, i) >= pd) return false;
    }
    return true;
}

} // namespace trunclin
