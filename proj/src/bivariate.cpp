#include "trunclin/bivariate.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace trunclin {

namespace {

BiPoly bi_monomial(std::size_t a, std::size_t b, u64 coeff)
{
    BiPoly f;
    bi_set(f, a, b, coeff);
    return f;
}

// f += s * a^da * b^db * g with a full product by the polynomial c
void bi_mul_add(const Fp& fp, BiPoly& f, const BiPoly& c, std::size_t da,
                const BiPoly& g)
{
    for (std::size_t i = 0; i < c.c.size(); ++i)
        for (std::size_t j = 0; j < c.c[i].size(); ++j)
            if (c.c[i][j]) bi_add_scaled(fp, f, c.c[i][j], da + i, j, g);
}

BiPoly bi_shift(const BiPoly& f, std::size_t da, std::size_t db)
{
    BiPoly r;
    for (std::size_t i = 0; i < f.c.size(); ++i)
        for (std::size_t j = 0; j < f.c[i].size(); ++j)
            if (f.c[i][j]) bi_set(r, i + da, j + db, f.c[i][j]);
    return r;
}

// g_i with the a^{d_i} factor removed (valid when a^{d_i} divides g_i)
BiPoly bi_unshift_a(const BiPoly& f, std::size_t da)
{
    BiPoly r;
    for (std::size_t i = da; i < f.c.size(); ++i)
        for (std::size_t j = 0; j < f.c[i].size(); ++j)
            if (f.c[i][j]) bi_set(r, i - da, j, f.c[i][j]);
    return r;
}

std::size_t max_b_width(const BiPoly& f)
{
    std::size_t w = 0;
    for (const auto& row : f.c) w = std::max(w, row.size());
    return w;
}

// strictly increasing sample of `count` values from [lo, hi] (inclusive)
std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t lo, std::size_t hi,
                                         std::size_t count)
{
    const std::size_t range = hi - lo + 1;
    if (count > range)
        throw std::invalid_argument("sample_distinct: not enough values");
    std::set<std::size_t> got;
    if (count == range) {
        for (std::size_t v = lo; v <= hi; ++v) got.insert(v);
    } else {
        while (got.size() < count) got.insert(lo + rng.below(range));
    }
    return {got.begin(), got.end()};
}

// in-place row echelon on an augmented matrix; true iff the system is
// consistent (no row 0 ... 0 | nonzero)
bool gauss_consistent(const Fp& fp, std::vector<std::vector<u64>>& m,
                      std::size_t cols)
{
    std::size_t cur = 0;
    for (std::size_t col = 0; col < cols && cur < m.size(); ++col) {
        std::size_t piv = cur;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[cur], m[piv]);
        const u64 inv = fp.inv(m[cur][col]);
        for (std::size_t r = cur + 1; r < m.size(); ++r) {
            if (!m[r][col]) continue;
            const u64 f = fp.mul(m[r][col], inv);
            for (std::size_t k = col; k <= cols; ++k)
                m[r][k] = fp.sub(m[r][k], fp.mul(f, m[cur][k]));
        }
        ++cur;
    }
    for (std::size_t r = cur; r < m.size(); ++r)
        if (m[r][cols]) return false;
    return true;
}

} // namespace

u64 bi_get(const BiPoly& f, std::size_t a, std::size_t b)
{
    if (a >= f.c.size() || b >= f.c[a].size()) return 0;
    return f.c[a][b];
}

void bi_set(BiPoly& f, std::size_t a, std::size_t b, u64 v)
{
    if (a >= f.c.size()) {
        if (!v) return;
        f.c.resize(a + 1);
    }
    if (b >= f.c[a].size()) {
        if (!v) return;
        f.c[a].resize(b + 1, 0);
    }
    f.c[a][b] = v;
}

void bi_trim(BiPoly& f)
{
    for (auto& row : f.c)
        while (!row.empty() && row.back() == 0) row.pop_back();
    while (!f.c.empty() && f.c.back().empty()) f.c.pop_back();
}

BiTerm bi_leading_term(const BiPoly& f)
{
    bool found = false;
    BiTerm best;
    for (std::size_t a = 0; a < f.c.size(); ++a)
        for (std::size_t b = 0; b < f.c[a].size(); ++b) {
            if (!f.c[a][b]) continue;
            const BiTerm t{a, b};
            if (!found || bi_term_less(best, t)) {
                best = t;
                found = true;
            }
        }
    if (!found) throw std::invalid_argument("bi_leading_term: zero polynomial");
    return best;
}

bool bi_equal(const BiPoly& f, const BiPoly& g)
{
    const std::size_t na = std::max(f.c.size(), g.c.size());
    for (std::size_t a = 0; a < na; ++a) {
        const std::size_t nb =
            std::max(a < f.c.size() ? f.c[a].size() : 0,
                     a < g.c.size() ? g.c[a].size() : 0);
        for (std::size_t b = 0; b < nb; ++b)
            if (bi_get(f, a, b) != bi_get(g, a, b)) return false;
    }
    return true;
}

void bi_add_scaled(const Fp& fp, BiPoly& f, u64 s, std::size_t da, std::size_t db,
                   const BiPoly& g)
{
    s = fp.reduce(s);
    if (!s) return;
    for (std::size_t i = 0; i < g.c.size(); ++i)
        for (std::size_t j = 0; j < g.c[i].size(); ++j)
            if (g.c[i][j])
                bi_set(f, i + da, j + db,
                       fp.add(bi_get(f, i + da, j + db), fp.mul(s, g.c[i][j])));
}

bool staircase_valid(const Staircase& st, unsigned d)
{
    if (st.dexp.empty() || st.dexp.size() != st.eexp.size()) return false;
    if (st.dexp.front() != 0) return false;
    if (st.eexp.back() != 0) return false;
    if (st.dexp.back() > d) return false;
    for (std::size_t i = 0; i + 1 < st.dexp.size(); ++i)
        if (st.dexp[i] >= st.dexp[i + 1] || st.eexp[i] <= st.eexp[i + 1])
            return false;
    return true;
}

BiPoly phi(const Ring& R, const AnnPoly& P)
{
    BiPoly f;
    for (std::size_t b = 0; b < P.coeffs.size(); ++b) {
        R.check(P.coeffs[b]);
        for (unsigned a = 0; a < R.d; ++a)
            if (P.coeffs[b].c[a]) bi_set(f, a, b, P.coeffs[b].c[a]);
    }
    return f;
}

std::vector<BiPoly> phibar_generators(const Ring& R, const std::vector<AnnPoly>& gens)
{
    std::vector<BiPoly> out;
    for (const AnnPoly& P : gens) {
        BiPoly f = phi(R, P);
        if (!f.is_zero()) out.push_back(std::move(f));
    }
    out.push_back(bi_monomial(R.d, 0, 1));
    return out;
}

BiPoly normal_form(const Fp& fp, const BiPoly& f, const LexGB& G)
{
    std::vector<BiTerm> lts(G.polys.size());
    std::vector<u64> ltinv(G.polys.size());
    for (std::size_t k = 0; k < G.polys.size(); ++k) {
        lts[k] = bi_leading_term(G.polys[k]);
        ltinv[k] = fp.inv(bi_get(G.polys[k], lts[k].a, lts[k].b));
    }

    BiPoly w = f;
    BiPoly r;
    // one descending lex pass: a reduction at (a, b) only touches strictly
    // smaller positions, all of which the cursor still has ahead of it
    const std::size_t wb = max_b_width(w);
    for (std::size_t b = wb; b-- > 0;) {
        for (std::size_t a = w.c.size(); a-- > 0;) {
            const u64 v = bi_get(w, a, b);
            if (!v) continue;
            std::size_t k = 0;
            while (k < lts.size() && !bi_term_divides(lts[k], BiTerm{a, b})) ++k;
            if (k == lts.size()) {
                bi_set(r, a, b, v);
                bi_set(w, a, b, 0);
            } else {
                bi_add_scaled(fp, w, fp.neg(fp.mul(v, ltinv[k])), a - lts[k].a,
                              b - lts[k].b, G.polys[k]);
            }
        }
    }
    bi_trim(r);
    return r;
}

Staircase staircase_of(const LexGB& G)
{
    if (G.polys.empty())
        throw std::invalid_argument("staircase_of: empty basis");
    Staircase st;
    for (const BiPoly& g : G.polys) {
        const BiTerm lt = bi_leading_term(g);
        st.dexp.push_back(lt.a);
        st.eexp.push_back(lt.b);
    }
    return st;
}

bool lazard_invariants_ok(const LexGB& G)
{
    if (G.polys.empty()) return false;
    for (const BiPoly& g : G.polys)
        if (g.is_zero()) return false;

    const Staircase st = staircase_of(G);
    if (!staircase_valid(st, G.d)) return false;

    for (std::size_t i = 0; i < G.polys.size(); ++i) {
        const BiPoly& g = G.polys[i];
        if (bi_get(g, st.dexp[i], st.eexp[i]) != 1) return false;
        // a^{d_i} divides g_i
        for (std::size_t a = 0; a < std::min<std::size_t>(st.dexp[i], g.c.size());
             ++a)
            for (u64 v : g.c[a])
                if (v) return false;
    }

    // last element is the monomial a^{d_t}
    {
        BiPoly last = G.polys.back();
        bi_trim(last);
        if (!bi_equal(last, bi_monomial(st.dexp.back(), 0, 1))) return false;
    }

    // ghat_i lies in the ideal of the scaled tail {a^{d_j - d_{i+1}} ghat_j}
    const std::size_t t = st.t();
    Fp fp(G.p);
    for (std::size_t i = 0; i + 1 <= t; ++i) {
        LexGB tail;
        tail.p = G.p;
        tail.d = G.d;
        for (std::size_t j = i + 1; j <= t; ++j)
            tail.polys.push_back(
                bi_shift(bi_unshift_a(G.polys[j], st.dexp[j]),
                         st.dexp[j] - st.dexp[i + 1], 0));
        const BiPoly ghat = bi_unshift_a(G.polys[i], st.dexp[i]);
        if (!normal_form(fp, ghat, tail).is_zero()) return false;
    }
    return true;
}

LexGB random_lazard_basis(u64 p, unsigned d, std::size_t delta, std::size_t t,
                          u64 seed)
{
    if (t < 1 || t > delta || t > d)
        throw std::invalid_argument(
            "random_lazard_basis: need 1 <= t <= min(delta, d)");
    Rng rng(seed);

    std::vector<std::size_t> dexp{0};
    for (std::size_t v : sample_distinct(rng, 1, d - 1, t - 1)) dexp.push_back(v);
    dexp.push_back(d);

    std::vector<std::size_t> eexp{delta};
    {
        std::vector<std::size_t> mid = sample_distinct(rng, 1, delta - 1, t - 1);
        for (auto it = mid.rbegin(); it != mid.rend(); ++it) eexp.push_back(*it);
    }
    eexp.push_back(0);

    Fp fp(p);
    std::vector<BiPoly> ghat(t + 1);
    ghat[t] = bi_monomial(0, 0, 1);
    for (std::size_t i = t; i-- > 0;) {
        BiPoly g;
        bi_add_scaled(fp, g, 1, 0, eexp[i] - eexp[i + 1], ghat[i + 1]);
        for (std::size_t j = i + 1; j <= t; ++j) {
            // random multiplier with a-degree < delta_{i+1} and b-degree
            // low enough to keep the leading term at b^{e_i}
            BiPoly c;
            const std::size_t amax = dexp[i + 1] - dexp[i] - 1;
            const std::size_t bmax = eexp[i] - 1 - eexp[j];
            for (std::size_t ai = 0; ai <= amax; ++ai)
                for (std::size_t bi = 0; bi <= bmax; ++bi)
                    bi_set(c, ai, bi, rng.below(p));
            bi_mul_add(fp, g, c, dexp[j] - dexp[i + 1], ghat[j]);
        }
        bi_trim(g);
        ghat[i] = std::move(g);
    }

    LexGB G;
    G.p = p;
    G.d = d;
    for (std::size_t i = 0; i <= t; ++i)
        G.polys.push_back(bi_shift(ghat[i], dexp[i], 0));
    if (!lazard_invariants_ok(G))
        throw std::logic_error("random_lazard_basis: construction invariant broke");
    return G;
}

PartialSequence sequence_from_gb(const LexGB& G, std::size_t n, std::size_t e,
                                 u64 seed)
{
    const Ring R(G.p, G.d);
    const Fp& fp = R.fp;
    const Staircase st = staircase_of(G);

    // staircase monomials: for class a the b-degrees below the step height
    std::vector<std::size_t> height(G.d, 0);
    for (std::size_t a = 0; a < G.d; ++a) {
        std::size_t i = 0;
        while (i + 1 < st.dexp.size() && st.dexp[i + 1] <= a) ++i;
        height[a] = st.eexp[i];
    }
    std::vector<std::size_t> base(G.d + 1, 0);
    for (std::size_t a = 0; a < G.d; ++a) base[a + 1] = base[a] + height[a];
    const std::size_t D = base[G.d];

    Rng rng(seed);
    // independent random value grid per coordinate
    std::vector<std::vector<u64>> val(n, std::vector<u64>(D));
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t idx = 0; idx < D; ++idx) val[l][idx] = rng.below(G.p);

    PartialSequence S;
    S.n = n;
    S.terms.assign(e, R.vzero(n));

    // cur[a] = NF(a^a b^j) for the current j, advanced in b each round
    std::vector<BiPoly> cur(G.d);
    cur[0] = normal_form(fp, bi_monomial(0, 0, 1), G);
    for (std::size_t a = 1; a < G.d; ++a)
        cur[a] = normal_form(fp, bi_shift(cur[a - 1], 1, 0), G);

    std::vector<std::pair<std::size_t, u64>> sparse;
    for (std::size_t j = 0; j < e; ++j) {
        if (j > 0)
            for (std::size_t a = 0; a < G.d; ++a)
                cur[a] = normal_form(fp, bi_shift(cur[a], 0, 1), G);
        for (std::size_t a = 0; a < G.d; ++a) {
            sparse.clear();
            for (std::size_t ai = 0; ai < cur[a].c.size(); ++ai)
                for (std::size_t bi = 0; bi < cur[a].c[ai].size(); ++bi) {
                    const u64 v = cur[a].c[ai][bi];
                    if (!v) continue;
                    if (ai >= G.d || bi >= height[ai])
                        throw std::logic_error(
                            "sequence_from_gb: normal form left the staircase");
                    sparse.emplace_back(base[ai] + bi, v);
                }
            for (std::size_t l = 0; l < n; ++l) {
                u64 acc = 0;
                std::size_t k = 0;
                for (const auto& [idx, v] : sparse) {
                    acc += v * val[l][idx];
                    if (++k == fp.lazy_stride) {
                        acc = fp.reduce(acc);
                        k = 0;
                    }
                }
                S.terms[j][l].c[G.d - 1 - a] = fp.reduce(acc);
            }
        }
    }
    return S;
}

Staircase staircase_oracle(const Ring& R, const PartialSequence& S)
{
    if (S.e() == 0 || S.e() % 2 != 0)
        throw std::invalid_argument("staircase_oracle: need an even number of terms");
    const std::size_t e = S.e() / 2;
    const std::size_t n = S.n;
    const unsigned d = R.d;

    const std::size_t max_rows = 2 * e * n * d;
    const std::size_t max_cols = (e + 1) * d;
    if (max_rows * max_cols > (std::size_t(1) << 22))
        throw std::invalid_argument("staircase_oracle: instance too large");

    // consistency of "some canceler with leading term x^i y^j" against every
    // shift the terms can verify
    const auto solvable = [&](unsigned i, std::size_t j) {
        const std::size_t shifts = S.e() - j;
        const std::size_t cols = j * d + (d - 1 - i);
        std::vector<std::vector<u64>> m;
        m.reserve(shifts * n * d);
        for (std::size_t sh = 0; sh < shifts; ++sh)
            for (std::size_t c = 0; c < n; ++c)
                for (unsigned k = 0; k < d; ++k) {
                    std::vector<u64> row(cols + 1, 0);
                    // unknown coefficient of x^a y^b contributes S_{b+sh}[c].c[k-a]
                    for (std::size_t b = 0; b < j; ++b)
                        for (unsigned a = 0; a <= k; ++a)
                            row[b * d + a] = S.terms[b + sh][c].c[k - a];
                    for (unsigned a = i + 1; a <= k; ++a)
                        row[j * d + (a - i - 1)] = S.terms[j + sh][c].c[k - a];
                    // fixed monic part x^i y^j moves to the right-hand side
                    row[cols] = k >= i ? R.fp.neg(S.terms[j + sh][c].c[k - i]) : 0;
                    m.push_back(std::move(row));
                }
        return gauss_consistent(R.fp, m, cols);
    };

    std::vector<std::size_t> g(d, 0);
    {
        std::size_t j = 0;
        while (j <= e && !solvable(0, j)) ++j;
        if (j > e)
            throw std::invalid_argument(
                "staircase_oracle: no class-0 canceler of degree <= e");
        g[0] = j;
    }
    for (unsigned i = 1; i < d; ++i) {
        std::size_t j = 0;
        while (j <= g[i - 1] && !solvable(i, j)) ++j;
        if (j > g[i - 1])
            throw std::logic_error("staircase_oracle: class degrees not monotone");
        g[i] = j;
    }

    Staircase st;
    st.dexp.push_back(0);
    st.eexp.push_back(g[0]);
    for (unsigned i = 1; i < d; ++i)
        if (g[i] < st.eexp.back()) {
            st.dexp.push_back(i);
            st.eexp.push_back(g[i]);
        }
    if (st.eexp.back() > 0) {
        st.dexp.push_back(d);
        st.eexp.push_back(0);
    }
    return st;
}

GBExtract minimal_gb_extract(const Ring& R, const std::vector<AnnPoly>& cancelers)
{
    struct Cand {
        BiTerm lt;
        BiPoly poly;
    };
    std::vector<Cand> cand;
    for (const AnnPoly& P : cancelers) {
        if (ann_is_zero(R, P)) continue;
        AnnPoly Q = P;
        ann_trim(R, Q);
        const auto [v, unit] = R.normalize_leading(Q.coeffs.back());
        Q = ann_scale(R, R.inverse(unit), Q);
        cand.push_back({BiTerm{v, Q.coeffs.size() - 1}, phi(R, Q)});
    }
    if (cand.empty())
        throw std::invalid_argument("minimal_gb_extract: no nonzero generators");
    cand.push_back({BiTerm{R.d, 0}, bi_monomial(R.d, 0, 1)});

    std::vector<Cand> kept;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < cand.size() && !redundant; ++j) {
            if (i == j || !bi_term_divides(cand[j].lt, cand[i].lt)) continue;
            // strict divisor kills i; equal terms keep only the first
            if (cand[j].lt != cand[i].lt || j < i) redundant = true;
        }
        if (!redundant) kept.push_back(cand[i]);
    }

    std::sort(kept.begin(), kept.end(), [](const Cand& x, const Cand& y) {
        return bi_term_less(y.lt, x.lt);
    });

    GBExtract out;
    out.gb.p = R.p();
    out.gb.d = R.d;
    for (Cand& c : kept) out.gb.polys.push_back(std::move(c.poly));
    if (!staircase_valid(staircase_of(out.gb), R.d))
        throw std::invalid_argument(
            "minimal_gb_extract: leading terms do not form a staircase");
    out.d_opt = kept.size() - 1;
    return out;
}

bool pade_check(const Ring& R, const AnnPoly& P, const PartialSequence& S)
{
    const i64 dp = ann_deg(R, P);
    if (dp < 0) return true;
    const std::size_t order = S.e();
    for (const AnnPoly& G : truncated_series(R, S)) {
        const AnnPoly q = ann_mul(R, P, G);
        i64 top = -1;
        const std::size_t lim = std::min<std::size_t>(q.coeffs.size(), order);
        for (std::size_t j = 0; j < lim; ++j)
            if (!R.is_zero(q.coeffs[j])) top = static_cast<i64>(j);
        if (top >= dp) return false;
    }
    return true;
}

nlohmann::ordered_json gb_to_json(const LexGB& G)
{
    nlohmann::ordered_json j;
    j["p"] = G.p;
    j["d"] = G.d;
    j["t"] = G.polys.empty() ? 0 : G.polys.size() - 1;
    j["polys"] = nlohmann::json::array();
    for (const BiPoly& g : G.polys) {
        nlohmann::ordered_json terms = nlohmann::json::array();
        for (std::size_t a = 0; a < g.c.size(); ++a)
            for (std::size_t b = 0; b < g.c[a].size(); ++b)
                if (g.c[a][b]) terms.push_back({a, b, g.c[a][b]});
        j["polys"].push_back({{"terms", std::move(terms)}});
    }
    return j;
}

LexGB gb_from_json(const nlohmann::json& j)
{
    LexGB G;
    G.p = j.at("p").get<u64>();
    G.d = j.at("d").get<unsigned>();
    const Ring validate(G.p, G.d);   // rejects non-prime p and d = 0
    (void)validate;
    Fp fp(G.p);
    for (const auto& pj : j.at("polys")) {
        BiPoly g;
        for (const auto& term : pj.at("terms")) {
            if (!term.is_array() || term.size() != 3)
                throw std::invalid_argument("gb_from_json: bad term");
            bi_set(g, term[0].get<std::size_t>(), term[1].get<std::size_t>(),
                   fp.reduce(term[2].get<u64>()));
        }
        G.polys.push_back(std::move(g));
    }
    if (G.polys.empty())
        throw std::invalid_argument("gb_from_json: empty basis");
    if (j.contains("t") && j.at("t").get<std::size_t>() != G.polys.size() - 1)
        throw std::invalid_argument("gb_from_json: t does not match basis size");
    return G;
}

} // namespace trunclin
