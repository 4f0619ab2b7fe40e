#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trunclin/truncpoly.hpp"

using namespace trunclin;

TEST_SUITE("fp") {

TEST_CASE("field basics") {
    Fp f(9001);
    CHECK(f.add(9000, 5) == 4);
    CHECK(f.sub(3, 7) == 8997);
    CHECK(f.mul(300, 31) == 9300 % 9001);
    for (u64 a : {1ull, 2ull, 17ull, 9000ull})
        CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
    CHECK_THROWS_AS(Fp(9000), std::invalid_argument);
    CHECK_THROWS_AS(Fp(1), std::invalid_argument);
}

TEST_CASE("lazy stride covers long accumulations") {
    Fp f(9001);
    CHECK(f.lazy_stride > (u64(1) << 32));
    Fp big((u64(1) << 31) - 1);
    CHECK(big.lazy_stride >= 1);
    // worst-case accumulation within one stride stays below 2^64
    CHECK(big.lazy_stride * (big.p - 1) * (big.p - 1) <= ~u64(0) - (big.p - 1));
}

} // fp

TEST_SUITE("truncpoly") {

TEST_CASE("product over F_7 with d = 3") {
    Ring R(7, 3);
    // (2 + 3x)(5 + x) = 10 + 17x + 3x^2 = 3 + 3x + 3x^2 mod 7
    TruncPoly a = R.from_coeffs({2, 3});
    TruncPoly b = R.from_coeffs({5, 1});
    CHECK(R.mul(a, b) == R.from_coeffs({3, 3, 3}));
}

TEST_CASE("truncation drops overflow terms") {
    Ring R(5, 2);
    TruncPoly x = R.monomial(1);
    CHECK(R.is_zero(R.mul(x, x)));
}

TEST_CASE("inverse of 2 + x over F_5 with d = 2") {
    Ring R(5, 2);
    TruncPoly a = R.from_coeffs({2, 1});
    CHECK(R.inverse(a) == R.from_coeffs({3, 1}));
    CHECK(R.mul(a, R.inverse(a)) == R.one());
}

TEST_CASE("inverse against multiplication at random, several rings") {
    for (auto [p, d] : {std::pair<u64, unsigned>{9001, 1},
                        {9001, 7},
                        {9001, 64},
                        {5, 16},
                        {2, 9}}) {
        Ring R(p, d);
        Rng rng(42 * p + d);
        for (int it = 0; it < 20; ++it) {
            TruncPoly a = random_unit(R, rng);
            CHECK(R.mul(a, R.inverse(a)) == R.one());
        }
    }
}

TEST_CASE("non-unit has no inverse") {
    Ring R(9001, 4);
    CHECK_THROWS_AS(R.inverse(R.monomial(1)), std::domain_error);
    CHECK_THROWS_AS(R.inverse(R.zero()), std::domain_error);
}

TEST_CASE("valuation and normalize_leading") {
    Ring R(9001, 4);
    TruncPoly a = R.from_coeffs({0, 0, 1, 1});   // x^2 + x^3
    CHECK(R.val(a) == 2);
    auto [t, u] = R.normalize_leading(a);
    CHECK(t == 2);
    CHECK(u == R.from_coeffs({1, 1}));           // 1 + x, padded with zeros
    CHECK(R.is_unit(u));
    CHECK(R.mul_xpow(u, t) == a);

    CHECK(R.val(R.zero()) == R.d);
    CHECK_THROWS_AS(R.normalize_leading(R.zero()), std::invalid_argument);
}

TEST_CASE("karatsuba path agrees with schoolbook") {
    // d = 96 exercises at least one Karatsuba split against a reference
    Ring R(9001, 96);
    Rng rng(7);
    for (int it = 0; it < 10; ++it) {
        TruncPoly a = random_elem(R, rng), b = random_elem(R, rng);
        TruncPoly ref = R.zero();
        for (unsigned i = 0; i < R.d; ++i) {
            u64 acc = 0;
            for (unsigned j = 0; j <= i; ++j)
                acc = (acc + a.c[j] * b.c[i - j]) % R.p();
            ref.c[i] = acc;
        }
        CHECK(R.mul(a, b) == ref);
    }
}

TEST_CASE("vector helpers") {
    Ring R(9001, 3);
    VecA v = R.vzero(2);
    CHECK(R.vis_zero(v));
    v[0] = R.monomial(1);
    v[1] = R.from_coeffs({0, 0, 2});
    CHECK(R.vmin_val(v) == 1);
    VecA w = R.vzero(2);
    R.vaxpy(w, R.from_coeffs({0, 1}), v);        // w += x * v
    CHECK(w[0] == R.from_coeffs({0, 0, 1}));
    CHECK(w[1] == R.zero());
    CHECK(R.vmin_val(R.vmul_xpow(v, 2)) == R.d); // shifted out entirely? no:
    // x^2 * (x, 2x^2) = (x^3, .) = 0 in d = 3
    CHECK(R.vis_zero(R.vmul_xpow(v, 2)));
}

} // truncpoly
