/*
 * Bivariate view of annihilator ideals.
 *
 * An annihilator ideal of sequences over A = F_p[x]/(x^d) lifts to an ideal
 * of F_p[a, b] containing a^d (x -> a, y -> b).  Under lexicographic order
 * with b > a such ideals have Lazard-form minimal Groebner bases
 *     g_i = a^{d_i} ghat_i,   LT(g_i) = a^{d_i} b^{e_i},
 * with 0 = d_0 < ... < d_t <= d and e_0 > ... > e_t = 0.  This module holds
 * the lift, lex normal forms, the staircase bookkeeping, random Lazard-basis
 * synthesis for test instances, the sequence generator driven by a basis,
 * the brute-force staircase oracle, minimal-basis extraction from algorithm
 * outputs, and the Pade product test for membership.
 */
#pragma once

#include "trunclin/rng.hpp"
#include "trunclin/sequence.hpp"
#include "trunclin/truncpoly.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace trunclin {

// dense coefficient grid: c[i][j] is the coefficient of a^i b^j; rows may
// be ragged-free (rectangular) but trailing zeros carry no meaning
struct BiPoly {
    std::vector<std::vector<u64>> c;

    bool is_zero() const
    {
        for (const auto& row : c)
            for (u64 v : row)
                if (v) return false;
        return true;
    }
};

// lex monomial (a_exp, b_exp) with b dominant: compare b first, then a
struct BiTerm {
    std::size_t a = 0;
    std::size_t b = 0;

    bool operator==(const BiTerm&) const = default;
};

inline bool bi_term_less(const BiTerm& s, const BiTerm& t)
{
    return s.b != t.b ? s.b < t.b : s.a < t.a;
}

inline bool bi_term_divides(const BiTerm& s, const BiTerm& t)
{
    return s.a <= t.a && s.b <= t.b;
}

u64 bi_get(const BiPoly& f, std::size_t a, std::size_t b);
void bi_set(BiPoly& f, std::size_t a, std::size_t b, u64 v);
void bi_trim(BiPoly& f);
// leading term under lex(b > a); throws on the zero polynomial
BiTerm bi_leading_term(const BiPoly& f);
bool bi_equal(const BiPoly& f, const BiPoly& g);
// f += s * a^da * b^db * g
void bi_add_scaled(const Fp& fp, BiPoly& f, u64 s, std::size_t da, std::size_t db,
                   const BiPoly& g);

// staircase of a zero-dimensional lex ideal: corner exponents of the minimal
// basis, d_0 = 0 < d_1 < ... < d_t and e_0 > e_1 > ... > e_t = 0
struct Staircase {
    std::vector<std::size_t> dexp;
    std::vector<std::size_t> eexp;

    std::size_t t() const { return dexp.empty() ? 0 : dexp.size() - 1; }
    // number of monomials under the stairs
    std::size_t cardinality() const
    {
        std::size_t D = 0;
        for (std::size_t i = 0; i + 1 < dexp.size(); ++i)
            D += (dexp[i + 1] - dexp[i]) * eexp[i];
        return D;
    }

    bool operator==(const Staircase&) const = default;
};

bool staircase_valid(const Staircase& st, unsigned d);

// minimal lex Groebner basis, elements sorted by decreasing leading term
struct LexGB {
    u64 p = 2;
    unsigned d = 1;
    std::vector<BiPoly> polys;
};

// coefficient transcription x -> a, y -> b of a polynomial over A
BiPoly phi(const Ring& R, const AnnPoly& P);
// lifts of the generators plus the ever-present a^d
std::vector<BiPoly> phibar_generators(const Ring& R, const std::vector<AnnPoly>& gens);

// lex division remainder; pre: G is a Groebner basis (e.g. Lazard form)
BiPoly normal_form(const Fp& fp, const BiPoly& f, const LexGB& G);

// leading-term ladder of a basis sorted by decreasing leading term
Staircase staircase_of(const LexGB& G);

// full Lazard-form validation: ladder shape, monic leading terms, a^{d_i}
// divisibility, and membership of each ghat_i in the scaled tail ideal
bool lazard_invariants_ok(const LexGB& G);

// random Lazard basis with e_0 = delta, d_t = d, t+1 elements; throws when
// 1 <= t <= min(delta, d) fails
LexGB random_lazard_basis(u64 p, unsigned d, std::size_t delta, std::size_t t,
                          u64 seed);

// n coordinate sequences of e terms whose annihilator contains the ideal of
// G: staircase monomials get random values, all other coordinates follow by
// normal-form linearity, and term j packs the values b_{i,j} as
// sum_i b_{i,j} x^{d-1-i}
PartialSequence sequence_from_gb(const LexGB& G, std::size_t n, std::size_t e,
                                 u64 seed);

// ground-truth staircase by dense F_p linear algebra on the first 2e terms:
// for every class i < d, the least j admitting a canceler with leading
// term x^i y^j, validated against every available shift; throws when the
// instance exceeds the brute-force guard or no class-0 canceler exists
Staircase staircase_oracle(const Ring& R, const PartialSequence& S);

struct GBExtract {
    LexGB gb;
    std::size_t d_opt = 0;   // = t, the basis cardinality minus one
};

// minimal Groebner basis from a generating set of cancelers (plus a^d):
// normalize leading units, drop elements whose leading term is a multiple
// of another, report d_opt = t.  pre: the cancelers generate the ideal and
// form a Groebner basis of it (true for the per-class algorithm outputs)
GBExtract minimal_gb_extract(const Ring& R, const std::vector<AnnPoly>& cancelers);

// Pade membership test on 2e terms: true iff deg_y(P * G_c mod y^{2e}) <
// deg_y(P) for every coordinate series G_c; P = 0 passes
bool pade_check(const Ring& R, const AnnPoly& P, const PartialSequence& S);

// ---- JSON basis files -----------------------------------------------------
// {"p": .., "d": .., "t": .., "polys": [{"terms": [[a_exp, b_exp, coeff], ..]}]}

nlohmann::ordered_json gb_to_json(const LexGB& G);
LexGB gb_from_json(const nlohmann::json& j);

} // namespace trunclin
