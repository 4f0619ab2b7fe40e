#include "trunclin/lazy_kurakin.hpp"

#include <algorithm>
#include <stdexcept>

namespace trunclin {

bool check_u2(const Ring& R, const PartialSequence& Sq, unsigned i, unsigned ip)
{
    if (ip <= i) throw std::invalid_argument("check_u2: need ip > i");
    const std::size_t k = seq_leading_zeros(R, Sq);
    if (k == Sq.e()) return false;   // no first nonzero term to move
    return R.vmin_val(Sq.terms[k]) + (ip - i) >= R.d;
}

std::optional<unsigned> find_min_useful_u3(const Ring& R,
                                           const std::vector<VecA>& gens,
                                           const VecA& s_k, unsigned i, u64* calls)
{
    auto member = [&](unsigned c) {
        if (calls) ++*calls;
        return submodule_membership_and_solve(R, gens, R.vmul_xpow(s_k, c)).has_value();
    };
    unsigned lo = 1, hi = R.d - 1 - i;   // candidate exponents c = i' - i
    if (R.d - 1 <= i) return std::nullopt;
    if (!member(hi)) return std::nullopt;
    while (lo < hi) {   // invariant: member(hi) true, member(lo-1 ... ) unknown
        const unsigned mid = lo + (hi - lo) / 2;
        if (member(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return i + lo;
}

namespace {

struct RepState {
    unsigned i = 0;
    AnnPoly P;
    PartialSequence Sq;
    std::size_t last_s = 0;   // step whose shift has been applied
    bool frozen = false;
};

void check_rep(const Ring& R, const RepState& st, const PartialSequence& S,
               std::size_t s)
{
    if (ann_deg(R, st.P) != static_cast<i64>(s))
        throw std::logic_error("lazy kurakin invariant: tracked degree is not s");
    if (!(st.P.coeffs.back() == R.monomial(st.i)))
        throw std::logic_error("lazy kurakin invariant: leading coefficient is not x^i");
    if (apply_poly(R, st.P, S).terms != st.Sq.terms)
        throw std::logic_error("lazy kurakin invariant: tracked sequence out of sync");
}

} // namespace

LazyKurakinResult lazy_kurakin_annihilator(const Ring& R, const PartialSequence& S,
                                           bool check_invariants)
{
    const std::size_t e = S.e();
    const unsigned d = R.d;
    if (e == 0)
        throw std::invalid_argument("lazy_kurakin_annihilator: need at least one term");

    LazyKurakinResult res;
    SubmoduleTable T(e);
    std::vector<RepState> reps;
    std::vector<AnnPoly> out;   // aligned with reps by index

    auto next_i = [&](std::size_t idx) {
        return idx + 1 < reps.size() ? reps[idx + 1].i : d;
    };

    // spawn the representative for i' from idx's current state (x^{i'-i} scale)
    auto add_rep = [&](std::size_t idx, unsigned ip, std::size_t s) {
        const RepState& st = reps[idx];
        RepState ns;
        ns.i = ip;
        const unsigned c = ip - st.i;
        ns.P = ann_mul_xpow(R, st.P, c);
        ns.Sq.n = st.Sq.n;
        ns.Sq.terms.reserve(st.Sq.e());
        for (const VecA& v : st.Sq.terms) ns.Sq.terms.push_back(R.vmul_xpow(v, c));
        ns.last_s = s;
        reps.insert(reps.begin() + static_cast<std::ptrdiff_t>(idx) + 1, std::move(ns));
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(idx) + 1, AnnPoly{});
    };

    // u2 at a freshly computed leading index: the smallest i' whose multiplier
    // kills the current leading term, if it falls inside idx's block
    auto maybe_add_u2 = [&](std::size_t idx, std::size_t k, std::size_t s) {
        const RepState& st = reps[idx];
        const unsigned mv = R.vmin_val(st.Sq.terms[k]);
        const unsigned ip = st.i + (d - mv);
        if (ip < next_i(idx)) add_rep(idx, ip, s);
    };

    {
        RepState r0;
        r0.i = 0;
        r0.P = ann_monomial(R, 0, R.one());
        r0.Sq = S;
        reps.push_back(std::move(r0));
        out.emplace_back();
    }

    // s = 0: record leading elements; new representatives cascade in-pass
    for (std::size_t idx = 0; idx < reps.size(); ++idx) {
        if (seq_is_zero(R, reps[idx].Sq)) {
            reps[idx].frozen = true;
            out[idx] = reps[idx].P;
            continue;
        }
        const std::size_t k = seq_leading_zeros(R, reps[idx].Sq);
        maybe_add_u2(idx, k, 0);
        RepState& st = reps[idx];
        ++res.membership_calls;
        if (!submodule_membership_and_solve(R, T.slots[k].gens, st.Sq.terms[k]))
            submodule_insert_and_reduce(R, T, k, st.Sq.terms[k], st.P, st.Sq);
        if (check_invariants) check_rep(R, st, S, 0);
    }

    for (std::size_t s = 1; s < e; ++s) {
        for (std::size_t idx = 0; idx < reps.size(); ++idx) {
            if (reps[idx].frozen) continue;
            if (reps[idx].last_s != s) {   // mid-pass spawns are already shifted
                reps[idx].P.coeffs.insert(reps[idx].P.coeffs.begin(), R.zero());
                reps[idx].Sq = shift(reps[idx].Sq, 1);
                reps[idx].last_s = s;
            }
            for (;;) {
                if (seq_is_zero(R, reps[idx].Sq)) {
                    reps[idx].frozen = true;
                    out[idx] = reps[idx].P;
                    break;
                }
                const std::size_t k = seq_leading_zeros(R, reps[idx].Sq);
                maybe_add_u2(idx, k, s);
                ++res.membership_calls;
                auto sol = submodule_membership_and_solve(R, T.slots[k].gens,
                                                          reps[idx].Sq.terms[k]);
                if (!sol) {
                    // u3: the smallest multiple of the failing element that
                    // lands in the table, within this block
                    auto ip = find_min_useful_u3(R, T.slots[k].gens,
                                                 reps[idx].Sq.terms[k], reps[idx].i,
                                                 &res.membership_calls);
                    if (ip && *ip < next_i(idx)) add_rep(idx, *ip, s);
                    break;
                }
                ++res.subiterations;
                RepState& st = reps[idx];
                for (std::size_t j = 0; j < sol->size(); ++j) {
                    if (R.is_zero((*sol)[j])) continue;
                    const TruncPoly cneg = R.neg((*sol)[j]);
                    st.Sq = scale_add(R, cneg, T.slots[k].seqs[j], st.Sq);
                    ann_axpy(R, st.P, cneg, 0, T.slots[k].polys[j]);
                }
                if (check_invariants) check_rep(R, st, S, s);
            }
        }
        for (std::size_t idx = 0; idx < reps.size(); ++idx) {
            RepState& st = reps[idx];
            if (st.frozen) continue;
            const std::size_t k = seq_leading_zeros(R, st.Sq);
            ++res.membership_calls;
            if (!submodule_membership_and_solve(R, T.slots[k].gens, st.Sq.terms[k]))
                submodule_insert_and_reduce(R, T, k, st.Sq.terms[k], st.P, st.Sq);
        }
    }

    // vacuous cancelers for states that never vanished
    for (std::size_t idx = 0; idx < reps.size(); ++idx) {
        if (reps[idx].frozen) continue;
        reps[idx].P.coeffs.insert(reps[idx].P.coeffs.begin(), R.zero());
        out[idx] = reps[idx].P;
    }

    res.useful.reserve(reps.size());
    for (const RepState& st : reps) res.useful.push_back(st.i);
    res.polys = std::move(out);
    return res;
}

std::vector<AnnPoly> reconstruct_full(const Ring& R, const LazyKurakinResult& L)
{
    std::vector<AnnPoly> all(R.d);
    std::size_t idx = 0;
    for (unsigned i = 0; i < R.d; ++i) {
        while (idx + 1 < L.useful.size() && L.useful[idx + 1] <= i) ++idx;
        all[i] = ann_mul_xpow(R, L.polys[idx], i - L.useful[idx]);
    }
    return all;
}

} // namespace trunclin
