#include "trunclin/sparse.hpp"

#include "trunclin/bivariate.hpp"
#include "trunclin/hankel.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trunclin {

namespace {

TruncPoly dot(const Ring& R, const VecA& u, const VecA& w)
{
    if (u.size() != w.size())
        throw std::invalid_argument("dot: dimension mismatch");
    TruncPoly s = R.zero();
    for (std::size_t i = 0; i < u.size(); ++i)
        s = R.add(s, R.mul(u[i], w[i]));
    return s;
}

// v, Av, A^2 v, ..., A^{length-1} v
std::vector<VecA> krylov_chain(const Ring& R, const SparseMatrixA& A,
                               const VecA& v, std::size_t length)
{
    std::vector<VecA> chain;
    chain.reserve(length);
    if (length == 0) return chain;
    chain.push_back(v);
    for (std::size_t k = 1; k < length; ++k)
        chain.push_back(matvec(R, A, chain.back()));
    return chain;
}

VecA random_vector(const Ring& R, Rng& rng, std::size_t n)
{
    VecA v(n);
    for (auto& a : v) a = random_elem(R, rng);
    return v;
}

// sequence of projections of one Krylov chain onto the rows of U
PartialSequence project_chain(const Ring& R, const std::vector<VecA>& chain,
                              const std::vector<VecA>& U)
{
    PartialSequence S;
    S.n = U.size();
    S.terms.reserve(chain.size());
    for (const auto& w : chain) {
        VecA term(U.size());
        for (std::size_t j = 0; j < U.size(); ++j) term[j] = dot(R, U[j], w);
        S.terms.push_back(std::move(term));
    }
    return S;
}

// the n^2 coordinate sequences ((A^k)_{ij})_k, flattened row-major, 2n terms
PartialSequence coordinate_sequences(const Ring& R, const SparseMatrixA& A)
{
    const std::size_t n = A.n;
    PartialSequence S;
    S.n = n * n;
    std::vector<VecA> power(n, R.vzero(n));   // rows of A^k
    for (std::size_t i = 0; i < n; ++i) power[i][i] = R.one();
    for (std::size_t k = 0; k < 2 * n; ++k) {
        VecA term;
        term.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) term.push_back(power[i][j]);
        S.terms.push_back(std::move(term));
        std::vector<VecA> next(n, R.vzero(n));
        for (const auto& en : A.entries)
            R.vaxpy(next[en.row], en.value, power[en.col]);
        power = std::move(next);
    }
    return S;
}

bool all_cancel(const Ring& R, const std::vector<AnnPoly>& gens,
                const PartialSequence& S)
{
    for (const auto& g : gens)
        if (!cancels(R, g, S)) return false;
    return true;
}

// ---- exact polynomial arithmetic over F_p[x] for the dense oracle ---------

using Poly = std::vector<u64>;   // dense coefficients, trimmed

void poly_trim(Poly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Fp& fp, const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty()) return {};
    Poly r = fp_poly_mul(fp, a, b);
    poly_trim(r);
    return r;
}

Poly poly_sub(const Fp& fp, Poly a, const Poly& b)
{
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = fp.sub(a[i], b[i]);
    poly_trim(a);
    return a;
}

// exact quotient num / den; the oracle's divisions are exact by construction,
// so a nonzero remainder indicates a bug
Poly poly_divexact(const Fp& fp, Poly num, const Poly& den)
{
    if (den.empty())
        throw std::invalid_argument("poly_divexact: division by zero");
    if (num.empty()) return {};
    if (num.size() < den.size())
        throw std::logic_error("poly_divexact: inexact division");
    const u64 lead_inv = fp.inv(den.back());
    Poly q(num.size() - den.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        const u64 c = fp.mul(num[k + den.size() - 1], lead_inv);
        q[k] = c;
        if (c == 0) continue;
        for (std::size_t i = 0; i < den.size(); ++i)
            num[k + i] = fp.sub(num[k + i], fp.mul(c, den[i]));
    }
    poly_trim(num);
    if (!num.empty())
        throw std::logic_error("poly_divexact: inexact division");
    return q;
}

} // namespace

void sparse_check(const Ring& R, const SparseMatrixA& A)
{
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& en : A.entries) {
        if (en.row >= A.n || en.col >= A.n)
            throw std::invalid_argument("sparse_check: index out of range");
        if (!seen.insert({en.row, en.col}).second)
            throw std::invalid_argument("sparse_check: duplicate position");
        R.check(en.value);
    }
}

VecA matvec(const Ring& R, const SparseMatrixA& A, const VecA& v)
{
    if (v.size() != A.n)
        throw std::invalid_argument("matvec: dimension mismatch");
    VecA r = R.vzero(A.n);
    for (const auto& en : A.entries)
        r[en.row] = R.add(r[en.row], R.mul(en.value, v[en.col]));
    return r;
}

PartialSequence krylov_sequence(const Ring& R, const SparseMatrixA& A,
                                const std::vector<VecA>& U, const VecA& v,
                                std::size_t length)
{
    if (length == 0)
        throw std::invalid_argument("krylov_sequence: length must be positive");
    return project_chain(R, krylov_chain(R, A, v, length), U);
}

MinimalIdealReport minimal_ideal_of_matrix(const Ring& R, const SparseMatrixA& A,
                                           u64 seed)
{
    sparse_check(R, A);
    const std::size_t n = A.n;
    if (n == 0)
        throw std::invalid_argument("minimal_ideal_of_matrix: empty matrix");
    Rng rng(seed);

    const VecA v = random_vector(R, rng, n);
    const std::vector<VecA> chain = krylov_chain(R, A, v, 2 * n);

    std::vector<VecA> U;
    for (std::size_t tau = 1; tau <= n * n; tau *= 2) {
        while (U.size() < tau) U.push_back(random_vector(R, rng, n));
        std::vector<AnnPoly> gens =
            hankel_kernel_annihilator(R, project_chain(R, chain, U), n);
        const std::vector<VecA> validation{random_vector(R, rng, n)};
        if (all_cancel(R, gens, project_chain(R, chain, validation)))
            return {std::move(gens), tau, false};
    }

    std::vector<AnnPoly> gens =
        hankel_kernel_annihilator(R, coordinate_sequences(R, A), n);
    return {std::move(gens), n * n, true};
}

DeterminantReport determinant(const Ring& R, const SparseMatrixA& A, u64 seed)
{
    sparse_check(R, A);
    const std::size_t n = A.n;
    if (n == 0)
        throw std::invalid_argument("determinant: empty matrix");
    Rng rng(seed);

    DeterminantReport rep;
    for (rep.retries = 1; rep.retries <= 5; ++rep.retries) {
        // column scaling by a random constant diagonal D
        std::vector<u64> diag(n);
        u64 prod = 1;
        for (auto& c : diag) {
            c = 1 + rng.below(R.fp.p - 1);
            prod = R.fp.mul(prod, c);
        }
        SparseMatrixA B = A;
        for (auto& en : B.entries) en.value = R.scal_mul(diag[en.col], en.value);

        const VecA v = random_vector(R, rng, n);
        const std::vector<VecA> U{random_vector(R, rng, n)};
        const PartialSequence S =
            project_chain(R, krylov_chain(R, B, v, 2 * n), U);
        const std::vector<AnnPoly> gens = hankel_kernel_annihilator(R, S, n);

        // accept only a principal ideal with a monic generator of degree n
        bool principal = false;
        try {
            const Staircase st = staircase_of(minimal_gb_extract(R, gens).gb);
            principal = st.dexp == std::vector<std::size_t>{0, R.d} &&
                        st.eexp == std::vector<std::size_t>{n, 0};
        } catch (const std::invalid_argument&) {
            principal = false;
        }
        if (!principal) continue;

        const AnnPoly* gen = nullptr;
        for (const auto& g : gens)
            if (ann_deg(R, g) == static_cast<i64>(n) &&
                R.val(g.coeffs[n]) == 0) {
                gen = &g;
                break;
            }
        if (gen == nullptr) continue;

        // det(B) = (-1)^n P(0) for the monic minimal polynomial P of B
        const TruncPoly p0 =
            R.mul(R.inverse(gen->coeffs[n]), gen->coeffs[0]);
        TruncPoly det = R.scal_mul(R.fp.inv(prod), p0);
        if (n % 2 == 1) det = R.neg(det);
        rep.value = det;
        rep.ok = true;
        return rep;
    }
    rep.retries = 5;
    return rep;
}

TruncPoly dense_determinant(const Ring& R, const std::vector<VecA>& rows)
{
    const std::size_t n = rows.size();
    if (n == 0)
        throw std::invalid_argument("dense_determinant: empty matrix");
    std::vector<std::vector<Poly>> M(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw std::invalid_argument("dense_determinant: ragged matrix");
        for (std::size_t j = 0; j < n; ++j) {
            Poly a(rows[i][j].c.begin(), rows[i][j].c.end());
            poly_trim(a);
            M[i][j] = std::move(a);
        }
    }

    // fraction-free elimination: all divisions by the previous pivot are
    // exact over F_p[x], and M[n-1][n-1] ends up as the determinant
    const Fp& fp = R.fp;
    bool negate = false;
    Poly prev{1};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k].empty()) {
            std::size_t r = k + 1;
            while (r < n && M[r][k].empty()) ++r;
            if (r == n) return R.zero();
            std::swap(M[k], M[r]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly t = poly_sub(fp, poly_mul(fp, M[k][k], M[i][j]),
                                  poly_mul(fp, M[i][k], M[k][j]));
                M[i][j] = t.empty() ? Poly{} : poly_divexact(fp, t, prev);
            }
            M[i][k].clear();
        }
        prev = M[k][k];
    }

    Poly det = M[n - 1][n - 1];
    det.resize(R.d, 0);
    TruncPoly r = R.from_coeffs(det);
    return negate ? R.neg(r) : r;
}

std::vector<VecA> sparse_to_dense(const Ring& R, const SparseMatrixA& A)
{
    std::vector<VecA> rows(A.n, R.vzero(A.n));
    for (const auto& en : A.entries)
        rows[en.row][en.col] = R.add(rows[en.row][en.col], en.value);
    return rows;
}

SparseMatrixA random_sparse_matrix(const Ring& R, Rng& rng, std::size_t n)
{
    std::map<std::pair<std::size_t, std::size_t>, TruncPoly> pos;
    for (std::size_t i = 0; i < n; ++i) {
        pos[{i, i}] = random_unit(R, rng);
        for (int extra = 0; extra < 2; ++extra)
            pos[{i, rng.below(n)}] = random_unit(R, rng);
    }
    SparseMatrixA A;
    A.n = n;
    for (auto& [p, v] : pos) A.entries.push_back({p.first, p.second, v});
    return A;
}

std::string matrix_to_text(const Ring& R, const SparseMatrixA& A)
{
    sparse_check(R, A);
    std::ostringstream out;
    out << R.fp.p << ' ' << R.d << ' ' << A.n << ' ' << A.entries.size() << '\n';
    for (const auto& en : A.entries) {
        out << en.row << ' ' << en.col;
        for (unsigned i = 0; i < R.d; ++i) out << ' ' << en.value.c[i];
        out << '\n';
    }
    return out.str();
}

std::pair<Ring, SparseMatrixA> matrix_from_text(std::istream& in)
{
    u64 p = 0;
    unsigned d = 0;
    std::size_t n = 0, nnz = 0;
    if (!(in >> p >> d >> n >> nnz))
        throw std::invalid_argument("matrix_from_text: bad header");
    const Ring R(p, d);
    SparseMatrixA A;
    A.n = n;
    for (std::size_t k = 0; k < nnz; ++k) {
        SparseEntry en;
        if (!(in >> en.row >> en.col))
            throw std::invalid_argument("matrix_from_text: truncated entry");
        std::vector<u64> coeffs(d);
        for (auto& c : coeffs) {
            if (!(in >> c))
                throw std::invalid_argument("matrix_from_text: truncated entry");
            c = R.fp.reduce(c);
        }
        en.value = R.from_coeffs(coeffs);
        A.entries.push_back(std::move(en));
    }
    sparse_check(R, A);
    return {R, std::move(A)};
}

} // namespace trunclin
