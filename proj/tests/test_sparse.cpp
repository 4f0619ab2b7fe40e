#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trunclin/bivariate.hpp"
#include "trunclin/hankel.hpp"
#include "trunclin/sparse.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

using namespace trunclin;

namespace {

SparseMatrixA identity_matrix(const Ring& R, std::size_t n)
{
    SparseMatrixA A;
    A.n = n;
    for (std::size_t i = 0; i < n; ++i) A.entries.push_back({i, i, R.one()});
    return A;
}

VecA dense_matvec(const Ring& R, const std::vector<VecA>& rows, const VecA& v)
{
    VecA r = R.vzero(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            r[i] = R.add(r[i], R.mul(rows[i][j], v[j]));
    return r;
}

std::vector<VecA> dense_matmul(const Ring& R, const std::vector<VecA>& a,
                               const std::vector<VecA>& b)
{
    const std::size_t n = a.size();
    std::vector<VecA> r(n, R.vzero(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                r[i][j] = R.add(r[i][j], R.mul(a[i][k], b[k][j]));
    return r;
}

std::vector<VecA> dense_identity(const Ring& R, std::size_t n)
{
    std::vector<VecA> rows(n, R.vzero(n));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = R.one();
    return rows;
}

VecA random_vec(const Ring& R, Rng& rng, std::size_t n)
{
    VecA v(n);
    for (auto& a : v) a = random_elem(R, rng);
    return v;
}

// all n^2 coordinate sequences of A over 2n terms, flattened row-major
PartialSequence full_coordinate_sequence(const Ring& R, const SparseMatrixA& A)
{
    const std::size_t n = A.n;
    std::vector<VecA> power = dense_identity(R, n);
    const std::vector<VecA> dense = sparse_to_dense(R, A);
    PartialSequence S;
    S.n = n * n;
    for (std::size_t k = 0; k < 2 * n; ++k) {
        VecA term;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) term.push_back(power[i][j]);
        S.terms.push_back(std::move(term));
        power = dense_matmul(R, dense, power);
    }
    return S;
}

// companion matrix of the monic polynomial y^n + sum_{i<n} low[i] y^i
SparseMatrixA companion_matrix(const Ring& R, const std::vector<TruncPoly>& low)
{
    const std::size_t n = low.size();
    SparseMatrixA A;
    A.n = n;
    for (std::size_t i = 0; i + 1 < n; ++i) A.entries.push_back({i + 1, i, R.one()});
    for (std::size_t i = 0; i < n; ++i)
        if (!R.is_zero(low[i])) A.entries.push_back({i, n - 1, R.neg(low[i])});
    return A;
}

Staircase extract_staircase(const Ring& R, const std::vector<AnnPoly>& gens)
{
    return staircase_of(minimal_gb_extract(R, gens).gb);
}

// every element of `gens` lies in the ideal generated by `other`
bool ideal_contains(const Ring& R, const std::vector<AnnPoly>& other,
                    const std::vector<AnnPoly>& gens)
{
    const LexGB gb = minimal_gb_extract(R, other).gb;
    for (const auto& g : gens) {
        if (ann_is_zero(R, g)) continue;
        if (!normal_form(R.fp, phi(R, g), gb).is_zero()) return false;
    }
    return true;
}

// determinant by Lagrange interpolation of point evaluations: the entries are
// exact polynomials of degree < d, so det has degree <= n(d-1) over F_p[x]
TruncPoly interpolation_determinant(const Ring& R, const std::vector<VecA>& rows)
{
    const Fp& fp = R.fp;
    const std::size_t n = rows.size();
    const std::size_t npts = n * (R.d - 1) + 1;
    REQUIRE(npts <= fp.p);

    std::vector<u64> xs(npts), ys(npts);
    for (std::size_t t = 0; t < npts; ++t) {
        const u64 c = t;
        std::vector<std::vector<u64>> M(n, std::vector<u64>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                u64 v = 0;
                for (unsigned k = R.d; k-- > 0;)
                    v = fp.add(fp.mul(v, c), rows[i][j].c[k]);
                M[i][j] = v;
            }
        // Gaussian elimination determinant over F_p
        u64 det = 1;
        for (std::size_t k = 0; k < n && det != 0; ++k) {
            std::size_t piv = k;
            while (piv < n && M[piv][k] == 0) ++piv;
            if (piv == n) {
                det = 0;
                break;
            }
            if (piv != k) {
                std::swap(M[piv], M[k]);
                det = fp.neg(det);
            }
            det = fp.mul(det, M[k][k]);
            const u64 inv = fp.inv(M[k][k]);
            for (std::size_t i = k + 1; i < n; ++i) {
                const u64 f = fp.mul(M[i][k], inv);
                for (std::size_t j = k; j < n; ++j)
                    M[i][j] = fp.sub(M[i][j], fp.mul(f, M[k][j]));
            }
        }
        xs[t] = c;
        ys[t] = det;
    }

    // Lagrange basis, accumulated coefficient-wise
    std::vector<u64> acc(npts, 0);
    for (std::size_t t = 0; t < npts; ++t) {
        std::vector<u64> basis{1};
        u64 denom = 1;
        for (std::size_t s = 0; s < npts; ++s) {
            if (s == t) continue;
            basis = fp_poly_mul(fp, basis, {fp.neg(xs[s]), 1});
            denom = fp.mul(denom, fp.sub(xs[t], xs[s]));
        }
        const u64 scale = fp.mul(ys[t], fp.inv(denom));
        for (std::size_t i = 0; i < basis.size(); ++i)
            acc[i] = fp.add(acc[i], fp.mul(scale, basis[i]));
    }
    acc.resize(R.d, 0);
    return R.from_coeffs(acc);
}

} // namespace

TEST_SUITE("sparse matrix basics") {
    TEST_CASE("matvec: identity, nilpotent, dimension checks")
    {
        Ring R(9001, 3);
        Rng rng(11);
        const VecA v = random_vec(R, rng, 4);
        CHECK(matvec(R, identity_matrix(R, 4), v) == v);

        // strictly upper with N^2 = 0
        SparseMatrixA N;
        N.n = 4;
        N.entries = {{0, 2, random_unit(R, rng)},
                     {0, 3, random_unit(R, rng)},
                     {1, 3, random_unit(R, rng)}};
        const VecA once = matvec(R, N, v);
        CHECK_FALSE(R.vis_zero(once));
        CHECK(R.vis_zero(matvec(R, N, once)));

        CHECK_THROWS_AS(matvec(R, N, random_vec(R, rng, 3)),
                        std::invalid_argument);
    }

    TEST_CASE("matvec agrees with the dense product")
    {
        Rng rng(22);
        for (int trial = 0; trial < 25; ++trial) {
            Ring R(9001, 1 + static_cast<unsigned>(rng.below(4)));
            const std::size_t n = 1 + rng.below(7);
            Rng sub = rng.split(trial);
            const SparseMatrixA A = random_sparse_matrix(R, sub, n);
            sparse_check(R, A);
            const VecA v = random_vec(R, sub, n);
            CHECK(matvec(R, A, v) == dense_matvec(R, sparse_to_dense(R, A), v));
        }
    }

    TEST_CASE("sparse_check rejects bad matrices")
    {
        Ring R(97, 2);
        SparseMatrixA A;
        A.n = 2;
        A.entries = {{0, 2, R.one()}};
        CHECK_THROWS_AS(sparse_check(R, A), std::invalid_argument);
        A.entries = {{0, 1, R.one()}, {0, 1, R.one()}};
        CHECK_THROWS_AS(sparse_check(R, A), std::invalid_argument);
        A.entries = {{0, 1, R.one()}, {1, 0, R.one()}};
        CHECK_NOTHROW(sparse_check(R, A));
    }

    TEST_CASE("krylov_sequence: constants, nilpotents, dense-power oracle")
    {
        Ring R(9001, 2);
        Rng rng(33);
        const std::size_t n = 5;

        const VecA v = random_vec(R, rng, n);
        std::vector<VecA> U{random_vec(R, rng, n), random_vec(R, rng, n)};
        const PartialSequence constant =
            krylov_sequence(R, identity_matrix(R, n), U, v, 6);
        CHECK(constant.n == 2);
        CHECK(constant.e() == 6);
        for (std::size_t k = 1; k < 6; ++k)
            CHECK(constant.terms[k] == constant.terms[0]);

        SparseMatrixA N;
        N.n = n;
        N.entries = {{0, 3, R.one()}, {1, 4, R.monomial(1)}};
        const PartialSequence nil = krylov_sequence(R, N, U, v, 6);
        for (std::size_t k = 2; k < 6; ++k)
            CHECK(R.vis_zero(nil.terms[k]));

        for (int trial = 0; trial < 10; ++trial) {
            Rng sub = rng.split(100 + trial);
            const std::size_t m = 2 + sub.below(5);
            const SparseMatrixA A = random_sparse_matrix(R, sub, m);
            const VecA w = random_vec(R, sub, m);
            const std::vector<VecA> P{random_vec(R, sub, m)};
            const PartialSequence S = krylov_sequence(R, A, P, w, 2 * m);

            std::vector<VecA> power = dense_identity(R, m);
            const std::vector<VecA> dense = sparse_to_dense(R, A);
            for (std::size_t k = 0; k < 2 * m; ++k) {
                TruncPoly expect = R.zero();
                const VecA pv = dense_matvec(R, power, w);
                for (std::size_t i = 0; i < m; ++i)
                    expect = R.add(expect, R.mul(P[0][i], pv[i]));
                CHECK(S.terms[k][0] == expect);
                power = dense_matmul(R, dense, power);
            }
        }

        CHECK_THROWS_AS(krylov_sequence(R, N, U, v, 0), std::invalid_argument);
    }
}

TEST_SUITE("minimal ideal of a matrix") {
    TEST_CASE("identity matrix gives the principal ideal of y - 1")
    {
        Ring R(9001, 3);
        const MinimalIdealReport rep =
            minimal_ideal_of_matrix(R, identity_matrix(R, 4), 7);
        CHECK(rep.tau == 1);
        CHECK_FALSE(rep.brute_forced);
        const Staircase st = extract_staircase(R, rep.gens);
        CHECK(st.dexp == std::vector<std::size_t>{0, 3});
        CHECK(st.eexp == std::vector<std::size_t>{1, 0});

        AnnPoly yminus1;
        yminus1.coeffs = {R.neg(R.one()), R.one()};
        CHECK(ideal_contains(R, rep.gens, {yminus1}));
    }

    TEST_CASE("nonderogatory constant part gives a principal ideal of full degree")
    {
        Ring R(9001, 4);
        Rng rng(5);
        for (int trial = 0; trial < 8; ++trial) {
            Rng sub = rng.split(trial);
            const std::size_t n = 2 + sub.below(5);
            std::vector<TruncPoly> low(n);
            for (auto& c : low) c = random_elem(R, sub);
            const SparseMatrixA A = companion_matrix(R, low);

            const MinimalIdealReport rep = minimal_ideal_of_matrix(R, A, sub.next_u64());
            const Staircase st = extract_staircase(R, rep.gens);
            CHECK(st.dexp == std::vector<std::size_t>{0, 4});
            CHECK(st.eexp == std::vector<std::size_t>{n, 0});

            // the unique monic canceler of degree n is the companion polynomial
            AnnPoly P;
            P.coeffs = low;
            P.coeffs.push_back(R.one());
            bool found = false;
            for (const auto& g : rep.gens)
                if (g == P) found = true;
            CHECK(found);
        }
    }

    TEST_CASE("x-shifted nilpotent needs more than one projection")
    {
        // ann([[0, x], [0, 0]]) = <y^2, x y> over F_p[x]/(x^2): a single
        // projection admits a spurious degree-1 canceler, caught by the
        // validation sequence, so the doubling loop must run at least twice
        Ring R(9001, 2);
        SparseMatrixA A;
        A.n = 2;
        A.entries = {{0, 1, R.monomial(1)}};

        const std::vector<AnnPoly> brute =
            hankel_kernel_annihilator(R, full_coordinate_sequence(R, A), 2);
        const Staircase expected = extract_staircase(R, brute);
        CHECK(expected.dexp == std::vector<std::size_t>{0, 1, 2});
        CHECK(expected.eexp == std::vector<std::size_t>{2, 1, 0});

        for (u64 seed = 0; seed < 6; ++seed) {
            const MinimalIdealReport rep = minimal_ideal_of_matrix(R, A, seed);
            CHECK(rep.tau >= 2);
            CHECK(extract_staircase(R, rep.gens) == expected);
            CHECK(ideal_contains(R, brute, rep.gens));
            CHECK(ideal_contains(R, rep.gens, brute));
        }
    }

    TEST_CASE("generators cancel every coordinate sequence")
    {
        Rng rng(99);
        for (int trial = 0; trial < 12; ++trial) {
            Ring R(9001, 1 + static_cast<unsigned>(rng.below(3)));
            Rng sub = rng.split(trial);
            const std::size_t n = 1 + sub.below(8);
            const SparseMatrixA A = random_sparse_matrix(R, sub, n);
            const MinimalIdealReport rep =
                minimal_ideal_of_matrix(R, A, sub.next_u64());
            REQUIRE_FALSE(rep.gens.empty());

            const PartialSequence full = full_coordinate_sequence(R, A);
            for (const auto& g : rep.gens) CHECK(cancels(R, g, full));
        }
    }

    TEST_CASE("doubling result matches the brute-force coordinate annihilator")
    {
        Rng rng(123);
        for (int trial = 0; trial < 10; ++trial) {
            Ring R(9001, 1 + static_cast<unsigned>(rng.below(3)));
            Rng sub = rng.split(trial);
            const std::size_t n = 2 + sub.below(4);
            const SparseMatrixA A = random_sparse_matrix(R, sub, n);

            const MinimalIdealReport rep =
                minimal_ideal_of_matrix(R, A, sub.next_u64());
            const std::vector<AnnPoly> brute =
                hankel_kernel_annihilator(R, full_coordinate_sequence(R, A), n);
            CHECK(extract_staircase(R, rep.gens) == extract_staircase(R, brute));
            CHECK(ideal_contains(R, brute, rep.gens));
            CHECK(ideal_contains(R, rep.gens, brute));
        }
    }
}

TEST_SUITE("determinants") {
    TEST_CASE("dense oracle: closed forms, swaps, singularity")
    {
        Ring R(9001, 3);
        Rng rng(4);
        for (int trial = 0; trial < 20; ++trial) {
            const TruncPoly a = random_elem(R, rng), b = random_elem(R, rng);
            const TruncPoly c = random_elem(R, rng), d = random_elem(R, rng);
            CHECK(dense_determinant(R, {{a}}) == a);
            CHECK(dense_determinant(R, {{a, b}, {c, d}}) ==
                  R.sub(R.mul(a, d), R.mul(b, c)));

            const std::vector<VecA> M{{a, b, R.zero()},
                                      {c, d, R.one()},
                                      {R.one(), R.zero(), a}};
            // cofactor expansion along the last row
            const TruncPoly expect =
                R.add(R.mul(R.one(), R.sub(R.mul(b, R.one()), R.zero())),
                      R.mul(a, R.sub(R.mul(a, d), R.mul(b, c))));
            CHECK(dense_determinant(R, M) == expect);
        }

        // leading zero pivot forces a row swap
        const std::vector<VecA> swaps{{R.zero(), R.one()}, {R.one(), R.zero()}};
        CHECK(dense_determinant(R, swaps) == R.neg(R.one()));

        // equal rows
        const TruncPoly u = random_unit(R, rng);
        CHECK(R.is_zero(dense_determinant(R, {{u, u}, {u, u}})));

        // zero column
        CHECK(R.is_zero(
            dense_determinant(R, {{R.zero(), u}, {R.zero(), u}})));
    }

    TEST_CASE("dense oracle cross-checked by evaluation-interpolation")
    {
        Rng rng(44);
        for (int trial = 0; trial < 15; ++trial) {
            Ring R(9001, 1 + static_cast<unsigned>(rng.below(4)));
            Rng sub = rng.split(trial);
            const std::size_t n = 1 + sub.below(6);
            std::vector<VecA> rows(n);
            for (auto& row : rows) row = random_vec(R, sub, n);
            CHECK(dense_determinant(R, rows) == interpolation_determinant(R, rows));
        }
    }

    TEST_CASE("diagonal matrices: product of the entries")
    {
        Ring R(9001, 4);
        Rng rng(6);
        for (int trial = 0; trial < 8; ++trial) {
            Rng sub = rng.split(trial);
            const std::size_t n = 1 + sub.below(6);
            SparseMatrixA A;
            A.n = n;
            TruncPoly prod = R.one();
            for (std::size_t i = 0; i < n; ++i) {
                const TruncPoly a = random_unit(R, sub);
                A.entries.push_back({i, i, a});
                prod = R.mul(prod, a);
            }
            const DeterminantReport rep = determinant(R, A, sub.next_u64());
            REQUIRE(rep.ok);
            CHECK(rep.value == prod);
        }
    }

    TEST_CASE("companion matrices: sign times the constant term")
    {
        Ring R(9001, 3);
        Rng rng(7);
        for (int trial = 0; trial < 8; ++trial) {
            Rng sub = rng.split(trial);
            const std::size_t n = 2 + sub.below(5);
            std::vector<TruncPoly> low(n);
            for (auto& c : low) c = random_elem(R, sub);
            low[0] = random_unit(R, sub);   // unit constant part
            const SparseMatrixA A = companion_matrix(R, low);

            TruncPoly expect = low[0];
            if (n % 2 == 1) expect = R.neg(expect);
            const DeterminantReport rep = determinant(R, A, sub.next_u64());
            REQUIRE(rep.ok);
            CHECK(rep.value == expect);
            CHECK(rep.value == dense_determinant(R, sparse_to_dense(R, A)));
        }
    }

    TEST_CASE("random sparse matrices against the dense oracle")
    {
        Ring R(9001, 4);
        Rng rng(2026);
        int successes = 0;
        for (int trial = 0; trial < 50; ++trial) {
            Rng sub = rng.split(trial);
            const SparseMatrixA A = random_sparse_matrix(R, sub, 8);
            const DeterminantReport rep = determinant(R, A, sub.next_u64());
            if (!rep.ok) continue;
            ++successes;
            CHECK(rep.value == dense_determinant(R, sparse_to_dense(R, A)));
        }
        CHECK(successes >= 48);
    }

    TEST_CASE("pathological constant part reports failure")
    {
        Ring R(9001, 2);
        SparseMatrixA A;
        A.n = 2;
        A.entries = {{0, 1, R.monomial(1)}};   // ideal <y^2, xy>, never principal
        const DeterminantReport rep = determinant(R, A, 31);
        CHECK_FALSE(rep.ok);
        CHECK(rep.retries == 5);
    }
}

TEST_SUITE("matrix files") {
    TEST_CASE("text round trip")
    {
        Ring R(9001, 3);
        Rng rng(8);
        const SparseMatrixA A = random_sparse_matrix(R, rng, 6);
        const std::string text = matrix_to_text(R, A);

        std::istringstream first(text);
        std::string header;
        std::getline(first, header);
        std::ostringstream expect;
        expect << "9001 3 6 " << A.entries.size();
        CHECK(header == expect.str());

        std::istringstream in(text);
        const auto [R2, B] = matrix_from_text(in);
        CHECK(R2.fp.p == R.fp.p);
        CHECK(R2.d == R.d);
        REQUIRE(B.n == A.n);
        REQUIRE(B.entries.size() == A.entries.size());
        for (std::size_t k = 0; k < A.entries.size(); ++k) {
            CHECK(B.entries[k].row == A.entries[k].row);
            CHECK(B.entries[k].col == A.entries[k].col);
            CHECK(B.entries[k].value == A.entries[k].value);
        }
    }

    TEST_CASE("malformed input is rejected")
    {
        std::istringstream empty("");
        CHECK_THROWS_AS(matrix_from_text(empty), std::invalid_argument);

        std::istringstream truncated("97 2 2 1\n0 1 5");
        CHECK_THROWS_AS(matrix_from_text(truncated), std::invalid_argument);

        std::istringstream out_of_range("97 2 2 1\n0 5 1 0\n");
        CHECK_THROWS_AS(matrix_from_text(out_of_range), std::invalid_argument);

        std::istringstream duplicate("97 2 2 2\n0 1 1 0\n0 1 2 0\n");
        CHECK_THROWS_AS(matrix_from_text(duplicate), std::invalid_argument);

        std::istringstream not_prime("91 2 1 0\n");
        CHECK_THROWS_AS(matrix_from_text(not_prime), std::invalid_argument);
    }
}
