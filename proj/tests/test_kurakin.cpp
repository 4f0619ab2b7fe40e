#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trunclin/kurakin.hpp"
#include "trunclin/rng.hpp"

using namespace trunclin;

namespace {

PartialSequence periodic_example(const Ring& R)
{
    PartialSequence S;
    S.n = 1;
    S.terms = {{R.one()}, {R.from_coeffs({1, 1})}, {R.one()}, {R.from_coeffs({1, 1})}};
    return S;
}

PartialSequence fibonacci(const Ring& R, std::size_t e)
{
    PartialSequence S;
    S.n = 1;
    S.terms = {{R.one()}, {R.one()}};
    while (S.e() < e) {
        VecA next = S.terms[S.e() - 1];
        R.vaxpy(next, R.one(), S.terms[S.e() - 2]);
        S.terms.push_back(next);
    }
    S.terms.resize(e);
    return S;
}

// random sequence satisfying a random monic recurrence of order delta
PartialSequence recurrent_sequence(const Ring& R, Rng& rng, std::size_t n,
                                   std::size_t delta, std::size_t e)
{
    std::vector<TruncPoly> rec(delta);
    for (TruncPoly& c : rec) c = random_elem(R, rng);
    PartialSequence S = random_sequence(R, rng, n, std::min(delta, e));
    while (S.e() < e) {
        VecA next = R.vzero(n);
        for (std::size_t j = 0; j < delta; ++j)
            R.vaxpy(next, rec[j], S.terms[S.e() - delta + j]);
        S.terms.push_back(next);
    }
    return S;
}

// brute force: is there a canceler x^i y^gamma + (lower y-terms) of S?
bool exists_canceler(const Ring& R, const PartialSequence& S, unsigned i,
                     std::size_t gamma)
{
    const std::size_t e = S.e(), n = S.n, d = R.d;
    if (gamma >= e) return true;   // no constraints: cancels vacuously
    FpMat M(gamma * d, (e - gamma) * n * d);
    std::vector<u64> rhs(M.cols, 0);
    for (std::size_t k = 0; k + gamma < e; ++k)
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t t = 0; t < d; ++t) {
                const std::size_t col = (k * n + c) * d + t;
                if (t >= i) rhs[col] = R.fp.neg(S.terms[k + gamma][c].c[t - i]);
                for (std::size_t j = 0; j < gamma; ++j)
                    for (std::size_t a = 0; a <= t; ++a)
                        M.at(j * d + a, col) = S.terms[k + j][c].c[t - a];
            }
    return fp_solve_left(R.fp, M, rhs).has_value();
}

} // namespace

TEST_SUITE("submodule table") {

TEST_CASE("membership and canonical solutions")
{
    Ring R(9001, 3);
    Rng rng(17);

    // independent unit vectors: coefficients are unique, so exactly (a, b)
    VecA e1 = {R.one(), R.zero()}, e2 = {R.zero(), R.one()};
    TruncPoly a = random_elem(R, rng), b = random_elem(R, rng);
    VecA t = {a, b};
    auto sol = submodule_membership_and_solve(R, {e1, e2}, t);
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == a);
    CHECK((*sol)[1] == b);

    // valuation obstruction
    VecA xe1 = {R.monomial(1), R.zero()};
    CHECK_FALSE(submodule_membership_and_solve(R, {xe1}, e1).has_value());

    // x * (1+x, x) = (x+x^2, x^2)
    VecA g = {R.from_coeffs({1, 1}), R.monomial(1)};
    VecA tg = {R.from_coeffs({0, 1, 1}), R.monomial(2)};
    auto sol2 = submodule_membership_and_solve(R, {g}, tg);
    REQUIRE(sol2.has_value());
    CHECK((*sol2)[0] == R.monomial(1));

    // empty generator list spans only zero
    CHECK(submodule_membership_and_solve(R, {}, R.vzero(2)).has_value());
    CHECK_FALSE(submodule_membership_and_solve(R, {}, e1).has_value());

    // random combinations are members and the returned coefficients verify
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<VecA> gens;
        for (int j = 0; j < 2; ++j)
            gens.push_back({random_elem(R, rng), random_elem(R, rng),
                            random_elem(R, rng)});
        VecA target = R.vzero(3);
        std::vector<TruncPoly> cs;
        for (const VecA& gg : gens) {
            cs.push_back(random_elem(R, rng));
            R.vaxpy(target, cs.back(), gg);
        }
        auto s3 = submodule_membership_and_solve(R, gens, target);
        REQUIRE(s3.has_value());
        VecA rebuilt = R.vzero(3);
        for (std::size_t j = 0; j < gens.size(); ++j)
            R.vaxpy(rebuilt, (*s3)[j], gens[j]);
        CHECK(rebuilt == target);
    }
}

TEST_CASE("insert and reduce keeps at most n generators")
{
    Ring R(9001, 3);
    PartialSequence dummy;
    dummy.n = 1;
    dummy.terms = {{R.one()}};

    SubmoduleTable T(4);
    VecA v = {R.from_coeffs({0, 2, 1})};
    submodule_insert_and_reduce(R, T, 0, v, ann_zero(), dummy);
    CHECK(T.slots[0].gens == std::vector<VecA>{v});

    // {x}, then insert 1: x is redundant and gets dropped
    SubmoduleTable T2(1);
    submodule_insert_and_reduce(R, T2, 0, {R.monomial(1)}, ann_zero(), dummy);
    submodule_insert_and_reduce(R, T2, 0, {R.one()}, ann_zero(), dummy);
    REQUIRE(T2.slots[0].gens.size() == 1);
    CHECK(T2.slots[0].gens[0] == VecA{R.one()});

    // inserting a dependent element violates the precondition
    SubmoduleTable T3(1);
    Rng rng(3);
    VecA g1 = {random_unit(R, rng), random_elem(R, rng)};
    VecA g2 = {random_elem(R, rng), random_unit(R, rng)};
    submodule_insert_and_reduce(R, T3, 0, g1, ann_zero(), dummy, true);
    submodule_insert_and_reduce(R, T3, 0, g2, ann_zero(), dummy, true);
    VecA dep = R.vzero(2);
    R.vaxpy(dep, R.from_coeffs({2, 1}), g1);
    R.vaxpy(dep, R.monomial(2, 5), g2);
    CHECK_THROWS_AS(
        submodule_insert_and_reduce(R, T3, 0, dep, ann_zero(), dummy, true),
        std::logic_error);

    // a torture loop: spans grow, the generator count never passes n
    SubmoduleTable T4(1);
    for (int trial = 0; trial < 40; ++trial) {
        VecA w = {random_elem(R, rng), random_elem(R, rng)};
        if (submodule_membership_and_solve(R, T4.slots[0].gens, w)) continue;
        submodule_insert_and_reduce(R, T4, 0, w, ann_zero(), dummy, true);
        CHECK(T4.slots[0].gens.size() <= 2);
        // all previous spans are preserved: re-inserting any member throws
        for (const VecA& gg : T4.slots[0].gens)
            CHECK(submodule_membership_and_solve(R, T4.slots[0].gens, gg).has_value());
    }
}

} // TEST_SUITE submodule table

TEST_SUITE("kurakin") {

TEST_CASE("periodic example: staircase generators recovered")
{
    Ring R(9001, 2);
    PartialSequence S = periodic_example(R);
    KurakinResult res = kurakin_annihilator(R, S, true);
    REQUIRE(res.polys.size() == 2);

    // P_1 = x(y - 1) exactly; P_0 = y^2 - x y + (x - 1) for this iteration order
    CHECK(res.polys[1].coeffs ==
          std::vector<TruncPoly>{R.monomial(1, R.p() - 1), R.monomial(1)});
    CHECK(ann_deg(R, res.polys[0]) == 2);
    CHECK(res.polys[0].coeffs.back() == R.one());
    CHECK(cancels(R, res.polys[0], S));
    CHECK(cancels(R, res.polys[1], S));

    // y^2 - 1 - P_0 must be an A-multiple of P_1 = xy - x: the difference has
    // degree <= 1, valuation >= 1 coefficients, and coeff(y) = -coeff(1)
    AnnPoly y2m1;
    y2m1.coeffs = {R.from_coeffs({R.p() - 1}), R.zero(), R.one()};
    AnnPoly diff = ann_add(R, y2m1, ann_scale(R, R.from_coeffs({R.p() - 1}), res.polys[0]));
    CHECK(ann_deg(R, diff) <= 1);
    diff.coeffs.resize(2, R.zero());
    CHECK(R.val(diff.coeffs[0]) >= 1);
    CHECK(diff.coeffs[1] == R.neg(diff.coeffs[0]));

    CHECK(res.subiterations > 0);
    CHECK(res.membership_calls >= res.subiterations);
}

TEST_CASE("Fibonacci: x^i (y^2 - y - 1) for every i")
{
    for (unsigned d : {1u, 2u, 4u}) {
        Ring R(9001, d);
        PartialSequence S = fibonacci(R, 8);
        KurakinResult res = kurakin_annihilator(R, S, true);
        for (unsigned i = 0; i < d; ++i) {
            std::vector<TruncPoly> want = {R.monomial(i, R.p() - 1),
                                           R.monomial(i, R.p() - 1), R.monomial(i)};
            CHECK(res.polys[i].coeffs == want);
        }
    }
}

TEST_CASE("zero sequence freezes at x^i")
{
    Ring R(97, 3);
    PartialSequence Z;
    Z.n = 2;
    Z.terms.assign(4, R.vzero(2));
    KurakinResult res = kurakin_annihilator(R, Z);
    for (unsigned i = 0; i < 3; ++i)
        CHECK(res.polys[i] == ann_monomial(R, 0, R.monomial(i)));
    CHECK(res.subiterations == 0);
}

TEST_CASE("random instances: invariants, cancellation, degree minimality")
{
    Rng rng(2718);
    for (int trial = 0; trial < 25; ++trial) {
        const unsigned d = 1 + static_cast<unsigned>(rng.below(3));
        Ring R(97, d);
        Rng sub = rng.split(static_cast<u64>(trial));
        const std::size_t n = 1 + sub.below(2);
        const std::size_t delta = 1 + sub.below(4);
        const std::size_t e = 2 * delta + 2;
        PartialSequence S = trial % 3 == 0 ? random_sequence(R, sub, n, e)
                                           : recurrent_sequence(R, sub, n, delta, e);

        KurakinResult res = kurakin_annihilator(R, S, true);
        REQUIRE(res.polys.size() == d);
        for (unsigned i = 0; i < d; ++i) {
            const i64 g = ann_deg(R, res.polys[i]);
            REQUIRE(g >= 0);
            CHECK(res.polys[i].coeffs.back() == R.monomial(i));
            if (g < static_cast<i64>(e)) CHECK(cancels(R, res.polys[i], S));
            // no canceler with the same leading coefficient and lower degree
            for (i64 gamma = 0; gamma < g; ++gamma)
                CHECK_FALSE(exists_canceler(R, S, i, static_cast<std::size_t>(gamma)));
            CHECK(exists_canceler(R, S, i, static_cast<std::size_t>(g)));
        }
    }
}

TEST_CASE("short adversarial input: vacuous canceler of degree e")
{
    // no canceler of degree < e exists for (0, ..., 0, 1) over A = F_p
    Ring R(97, 1);
    PartialSequence S;
    S.n = 1;
    S.terms.assign(4, {R.zero()});
    S.terms[3] = {R.one()};
    KurakinResult res = kurakin_annihilator(R, S, true);
    CHECK(ann_deg(R, res.polys[0]) == 4);
    CHECK(res.polys[0].coeffs.back() == R.one());
}

} // TEST_SUITE kurakin
