#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trunclin/rng.hpp"
#include "trunclin/sequence.hpp"

using namespace trunclin;

namespace {

// the running d = 2 example: S = (1, 1+x, 1, 1+x)
PartialSequence periodic_example(const Ring& R)
{
    PartialSequence S;
    S.n = 1;
    const TruncPoly one = R.one(), onex = R.from_coeffs({1, 1});
    S.terms = {{one}, {onex}, {one}, {onex}};
    return S;
}

AnnPoly from_y_coeffs(const Ring& R, std::vector<TruncPoly> cs)
{
    AnnPoly P;
    P.coeffs = std::move(cs);
    ann_trim(R, P);
    return P;
}

} // namespace

TEST_SUITE("annpoly") {

TEST_CASE("degree, trim and arithmetic")
{
    Ring R(9001, 3);
    Rng rng(5);
    CHECK(ann_deg(R, ann_zero()) == -1);
    CHECK(ann_is_zero(R, ann_zero()));

    AnnPoly P = ann_monomial(R, 2, R.one());            // y^2
    ann_axpy(R, P, R.monomial(1), 0, ann_monomial(R, 0, R.one()));   // + x
    CHECK(ann_deg(R, P) == 2);

    // cancel the leading term: the degree drops and trailing zeros are trimmed
    AnnPoly Q = P;
    ann_axpy(R, Q, R.from_coeffs({R.p() - 1}), 2, ann_monomial(R, 0, R.one()));
    CHECK(ann_deg(R, Q) == 0);
    CHECK(Q.coeffs.size() == 1);

    for (int t = 0; t < 10; ++t) {
        AnnPoly A, B, C;
        for (int j = 0; j < 3; ++j) {
            ann_axpy(R, A, random_elem(R, rng), rng.below(4), ann_monomial(R, 0, R.one()));
            ann_axpy(R, B, random_elem(R, rng), rng.below(4), ann_monomial(R, 0, R.one()));
            ann_axpy(R, C, random_elem(R, rng), rng.below(4), ann_monomial(R, 0, R.one()));
        }
        CHECK(ann_mul(R, A, B) == ann_mul(R, B, A));
        CHECK(ann_mul(R, A, ann_add(R, B, C)) ==
              ann_add(R, ann_mul(R, A, B), ann_mul(R, A, C)));
        CHECK(ann_deg(R, ann_mul_xpow(R, A, R.d)) == -1);
    }
}

TEST_CASE("printing")
{
    Ring R(9001, 2);
    AnnPoly P = from_y_coeffs(R, {R.from_coeffs({R.p() - 1}), R.zero(), R.one()});
    CHECK(ann_to_string(R, P) == "y^2 + 9000");
    AnnPoly Q = from_y_coeffs(R, {R.zero(), R.monomial(1)});
    CHECK(ann_to_string(R, Q) == "x*y");
    AnnPoly W = from_y_coeffs(R, {R.from_coeffs({1, 1}), R.one()});
    CHECK(ann_to_string(R, W) == "y + 1+x");
    CHECK(ann_to_string(R, ann_zero()) == "0");
}

} // TEST_SUITE annpoly

TEST_SUITE("sequence ops") {

TEST_CASE("shift")
{
    Ring R(97, 2);
    Rng rng(11);
    PartialSequence S = random_sequence(R, rng, 2, 5);
    CHECK(shift(S, 0).terms == S.terms);
    PartialSequence T = shift(S, 2);
    CHECK(T.e() == 3);
    CHECK(T.terms[0] == S.terms[2]);
    CHECK(shift(S, 5).e() == 0);
    CHECK_THROWS_AS(shift(S, 6), std::invalid_argument);
    // composition is additive
    CHECK(shift(shift(S, 2), 1).terms == shift(S, 3).terms);
}

TEST_CASE("scale_add")
{
    Ring R(97, 3);
    Rng rng(12);
    PartialSequence S = random_sequence(R, rng, 2, 6);
    PartialSequence T = random_sequence(R, rng, 2, 4);

    PartialSequence Z = scale_add(R, R.zero(), S, T);
    CHECK(Z.e() == 4);
    CHECK(Z.terms == T.terms);

    PartialSequence N = scale_add(R, R.from_coeffs({R.p() - 1}), S, S);
    CHECK(seq_is_zero(R, N));

    const TruncPoly c = random_elem(R, rng);
    PartialSequence U = scale_add(R, c, S, T);
    for (std::size_t k = 0; k < U.e(); ++k)
        for (std::size_t i = 0; i < 2; ++i)
            CHECK(U.terms[k][i] == R.add(R.mul(c, S.terms[k][i]), T.terms[k][i]));

    PartialSequence W = random_sequence(R, rng, 3, 4);
    CHECK_THROWS_AS(scale_add(R, c, S, W), std::invalid_argument);
}

TEST_CASE("apply_poly and cancels on the periodic example")
{
    Ring R(9001, 2);
    PartialSequence S = periodic_example(R);

    // y^2 - 1 is a generating polynomial
    AnnPoly P = from_y_coeffs(R, {R.from_coeffs({R.p() - 1}), R.zero(), R.one()});
    PartialSequence PS = apply_poly(R, P, S);
    CHECK(PS.e() == 2);
    CHECK(seq_is_zero(R, PS));
    CHECK(cancels(R, P, S));

    // x(y - 1) also cancels: x(1+x) - x = x^2 = 0 at precision 2
    AnnPoly Q = from_y_coeffs(R, {R.monomial(1, R.p() - 1), R.monomial(1)});
    PartialSequence QS = apply_poly(R, Q, S);
    CHECK(QS.e() == 3);
    CHECK(seq_is_zero(R, QS));

    // y - 1 does not: its first term is S_1 - S_0 = x
    AnnPoly L = from_y_coeffs(R, {R.from_coeffs({R.p() - 1}), R.one()});
    PartialSequence LS = apply_poly(R, L, S);
    CHECK(LS.terms[0][0] == R.monomial(1));
    CHECK_FALSE(cancels(R, L, S));

    CHECK(apply_poly(R, ann_monomial(R, 0, R.one()), S).terms == S.terms);
    CHECK(cancels(R, ann_zero(), S));
    CHECK(apply_poly(R, ann_zero(), S).e() == S.e());

    AnnPoly big = ann_monomial(R, 4, R.one());
    CHECK_THROWS_AS(apply_poly(R, big, S), std::invalid_argument);
}

TEST_CASE("shift compatibility and linearity of cancellation")
{
    Ring R(97, 3);
    Rng rng(21);
    // Fibonacci-type sequence in A^2: S_{k+2} = S_{k+1} + S_k
    PartialSequence S = random_sequence(R, rng, 2, 2);
    while (S.e() < 10) {
        VecA next = S.terms[S.e() - 1];
        R.vaxpy(next, R.one(), S.terms[S.e() - 2]);
        S.terms.push_back(next);
    }
    const TruncPoly m1 = R.from_coeffs({R.p() - 1});
    AnnPoly P = from_y_coeffs(R, {m1, m1, R.one()});   // y^2 - y - 1
    CHECK(cancels(R, P, S));

    // apply_poly(y^j P, S) = apply_poly(P, shift(S, j))
    Rng rng2(22);
    PartialSequence T = random_sequence(R, rng2, 2, 9);
    for (std::size_t j = 0; j < 4; ++j) {
        AnnPoly yjP;
        ann_axpy(R, yjP, R.one(), j, P);
        CHECK(apply_poly(R, yjP, T).terms == apply_poly(R, P, shift(T, j)).terms);
    }

    // A-linear combinations of canceling polynomials cancel
    AnnPoly Q;
    ann_axpy(R, Q, R.one(), 1, P);   // y P
    for (int t = 0; t < 5; ++t) {
        AnnPoly C = ann_scale(R, random_elem(R, rng2), P);
        ann_axpy(R, C, random_elem(R, rng2), 0, Q);
        CHECK(cancels(R, C, S));
    }

    // and products act by composition
    PartialSequence U = random_sequence(R, rng2, 2, 12);
    AnnPoly P2 = from_y_coeffs(R, {random_elem(R, rng2), random_elem(R, rng2), R.one()});
    AnnPoly Q2 = from_y_coeffs(R, {random_elem(R, rng2), R.one()});
    CHECK(apply_poly(R, ann_mul(R, P2, Q2), U).terms ==
          apply_poly(R, P2, apply_poly(R, Q2, U)).terms);
}

TEST_CASE("truncated generating series")
{
    Ring R(9001, 2);
    PartialSequence S = periodic_example(R);
    auto G = truncated_series(R, S);
    REQUIRE(G.size() == 1);
    // G = y^3 + (1+x) y^2 + y + (1+x)
    const TruncPoly onex = R.from_coeffs({1, 1});
    CHECK(G[0].coeffs == std::vector<TruncPoly>{onex, R.one(), onex, R.one()});

    PartialSequence V;
    V.n = 2;
    Rng rng(9);
    V.terms = {{random_elem(R, rng), random_elem(R, rng)}, R.vzero(2)};
    auto GV = truncated_series(R, V);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(ann_deg(R, GV[i]) <= 1);
        CHECK(GV[i].coeffs[1] == V.terms[0][i]);
    }

    PartialSequence Z;
    Z.n = 1;
    Z.terms.assign(4, R.vzero(1));
    for (auto& g : truncated_series(R, Z)) CHECK(ann_is_zero(R, g));

    PartialSequence odd = shift(S, 1);
    CHECK_THROWS_AS(truncated_series(R, odd), std::invalid_argument);
}

TEST_CASE("JSON round-trip is bit-exact")
{
    Ring R(9001, 4);
    Rng rng(33);
    PartialSequence S = random_sequence(R, rng, 3, 5);
    nlohmann::ordered_json j = sequence_to_json(R, S);
    CHECK(j["p"] == 9001);
    CHECK(j["e"] == 5);
    auto [R2, S2] = sequence_from_json(j);
    CHECK(R2.p() == R.p());
    CHECK(R2.d == R.d);
    CHECK(S2.terms == S.terms);
    CHECK(sequence_to_json(R2, S2) == j);
    // round-trip through text as the CLI does
    auto j3 = nlohmann::json::parse(j.dump());
    auto [R3, S3] = sequence_from_json(j3);
    CHECK(S3.terms == S.terms);

    nlohmann::json bad = nlohmann::json::parse(j.dump());
    bad["e"] = 7;
    CHECK_THROWS(sequence_from_json(bad));
    nlohmann::json bad2 = nlohmann::json::parse(j.dump());
    bad2["terms"][0][0] = {1, 2};   // wrong coefficient count
    CHECK_THROWS(sequence_from_json(bad2));
}

} // TEST_SUITE sequence ops
