#include "trunclin/kurakin.hpp"

#include <stdexcept>

namespace trunclin {

namespace {

// entry (i, j) of P as an element of A (coefficients at x^d and beyond drop)
TruncPoly entry_mod_xd(const Ring& R, const PolyMatrix& P, std::size_t i, std::size_t j)
{
    TruncPoly a = R.zero();
    const std::size_t l = std::min<std::size_t>(R.d, P.len());
    for (std::size_t k = 0; k < l; ++k) a.c[k] = P.coeff_at(i, j, k);
    return a;
}

// right approximant basis of the n x m column lift of gens (and optionally a
// trailing target column) at order d, as a left basis of the transpose
ApproximantBasis column_space_basis(const Ring& R, const std::vector<VecA>& gens,
                                    const VecA* target, std::size_t n)
{
    const std::size_t m = gens.size() + (target ? 1 : 0);
    PolyMatrix Ft(m, n);
    Ft.ensure_len(R.d);
    for (unsigned k = 0; k < R.d; ++k) {
        for (std::size_t j = 0; j < gens.size(); ++j)
            for (std::size_t i = 0; i < n; ++i)
                Ft.coeff[k].at(j, i) = gens[j][i].c[k];
        if (target)
            for (std::size_t i = 0; i < n; ++i)
                Ft.coeff[k].at(m - 1, i) = (*target)[i].c[k];
    }
    Ft.trim();
    return popov_normalize(R.fp, pm_basis(R.fp, Ft, R.d));
}

} // namespace

std::optional<std::vector<TruncPoly>> submodule_membership_and_solve(
    const Ring& R, const std::vector<VecA>& gens, const VecA& target)
{
    const std::size_t n = target.size();
    for (const VecA& g : gens)
        if (g.size() != n)
            throw std::invalid_argument("submodule_membership: dimension mismatch");
    if (R.vis_zero(target)) return std::vector<TruncPoly>(gens.size(), R.zero());
    if (gens.empty()) return std::nullopt;

    const std::size_t m = gens.size() + 1;
    ApproximantBasis B = column_space_basis(R, gens, &target, n);
    for (std::size_t r = 0; r < m; ++r) {
        const TruncPoly last = entry_mod_xd(R, B.basis, r, m - 1);
        if (!R.is_unit(last)) continue;
        // row r encodes sum_j b_j gens_j + last * target = 0 in A^n
        const TruncPoly s = R.neg(R.inverse(last));
        std::vector<TruncPoly> c(gens.size());
        for (std::size_t j = 0; j < gens.size(); ++j)
            c[j] = R.mul(s, entry_mod_xd(R, B.basis, r, j));
        return c;
    }
    return std::nullopt;
}

void submodule_insert_and_reduce(const Ring& R, SubmoduleTable& T, std::size_t k,
                                 const VecA& gen, const AnnPoly& poly,
                                 const PartialSequence& seq, bool check_pre)
{
    SubmoduleTable::Slot& slot = T.slots.at(k);
    if (check_pre && submodule_membership_and_solve(R, slot.gens, gen))
        throw std::logic_error("submodule_insert_and_reduce: generator already in span");
    slot.gens.push_back(gen);
    slot.polys.push_back(poly);
    slot.seqs.push_back(seq);

    const std::size_t n = gen.size();
    if (slot.gens.size() <= n) return;

    // n+1 generators of a submodule of A^n are dependent: some basis row of
    // the relation module carries a unit entry, naming a redundant generator
    ApproximantBasis B = column_space_basis(R, slot.gens, nullptr, n);
    for (std::size_t r = 0; r < slot.gens.size(); ++r)
        for (std::size_t j = 0; j < slot.gens.size(); ++j)
            if (R.is_unit(entry_mod_xd(R, B.basis, r, j))) {
                slot.gens.erase(slot.gens.begin() + static_cast<std::ptrdiff_t>(j));
                slot.polys.erase(slot.polys.begin() + static_cast<std::ptrdiff_t>(j));
                slot.seqs.erase(slot.seqs.begin() + static_cast<std::ptrdiff_t>(j));
                return;
            }
    throw std::logic_error("submodule_insert_and_reduce: no removable generator");
}

namespace {

void check_step(const Ring& R, const AnnPoly& P, const PartialSequence& Sq,
                const PartialSequence& S, std::size_t i, std::size_t s)
{
    if (ann_deg(R, P) != static_cast<i64>(s))
        throw std::logic_error("kurakin invariant: tracked degree is not s");
    if (!(P.coeffs.back() == R.monomial(static_cast<unsigned>(i))))
        throw std::logic_error("kurakin invariant: leading coefficient is not x^i");
    if (apply_poly(R, P, S).terms != Sq.terms)
        throw std::logic_error("kurakin invariant: tracked sequence out of sync");
}

} // namespace

KurakinResult kurakin_annihilator(const Ring& R, const PartialSequence& S,
                                  bool check_invariants)
{
    const std::size_t e = S.e(), d = R.d;
    if (e == 0)
        throw std::invalid_argument("kurakin_annihilator: need at least one term");

    KurakinResult res;
    res.polys.resize(d);
    SubmoduleTable T(e);
    std::vector<AnnPoly> P(d);
    std::vector<PartialSequence> Sq(d);
    std::vector<char> frozen(d, 0);

    // s = 0: state x^i, x^i*S; record leading elements in the table
    for (std::size_t i = 0; i < d; ++i) {
        P[i] = ann_monomial(R, 0, R.monomial(static_cast<unsigned>(i)));
        Sq[i] = apply_poly(R, P[i], S);
        if (seq_is_zero(R, Sq[i])) {   // canceled already: freeze at x^i
            res.polys[i] = P[i];
            frozen[i] = 1;
            continue;
        }
        const std::size_t k = seq_leading_zeros(R, Sq[i]);
        ++res.membership_calls;
        if (!submodule_membership_and_solve(R, T.slots[k].gens, Sq[i].terms[k]))
            submodule_insert_and_reduce(R, T, k, Sq[i].terms[k], P[i], Sq[i]);
    }

    for (std::size_t s = 1; s < e; ++s) {
        // shift every live state by y, then cancel leading elements while the
        // table allows it
        for (std::size_t i = 0; i < d; ++i) {
            if (frozen[i]) continue;
            P[i].coeffs.insert(P[i].coeffs.begin(), R.zero());
            Sq[i] = shift(Sq[i], 1);
            for (;;) {
                if (seq_is_zero(R, Sq[i])) {
                    res.polys[i] = P[i];
                    frozen[i] = 1;
                    break;
                }
                const std::size_t k = seq_leading_zeros(R, Sq[i]);
                ++res.membership_calls;
                auto sol = submodule_membership_and_solve(R, T.slots[k].gens,
                                                          Sq[i].terms[k]);
                if (!sol) break;
                ++res.subiterations;
                for (std::size_t j = 0; j < sol->size(); ++j) {
                    if (R.is_zero((*sol)[j])) continue;
                    const TruncPoly cneg = R.neg((*sol)[j]);
                    Sq[i] = scale_add(R, cneg, T.slots[k].seqs[j], Sq[i]);
                    ann_axpy(R, P[i], cneg, 0, T.slots[k].polys[j]);
                }
                if (check_invariants) check_step(R, P[i], Sq[i], S, i, s);
            }
            if (check_invariants && !frozen[i]) check_step(R, P[i], Sq[i], S, i, s);
        }
        // record the new leading elements
        for (std::size_t i = 0; i < d; ++i) {
            if (frozen[i]) continue;
            const std::size_t k = seq_leading_zeros(R, Sq[i]);
            ++res.membership_calls;
            if (!submodule_membership_and_solve(R, T.slots[k].gens, Sq[i].terms[k]))
                submodule_insert_and_reduce(R, T, k, Sq[i].terms[k], P[i], Sq[i]);
        }
    }

    // states that never vanished are canceled vacuously by one more shift
    // (degree e; possible only when e < 2*delta or similar short inputs)
    for (std::size_t i = 0; i < d; ++i) {
        if (frozen[i]) continue;
        P[i].coeffs.insert(P[i].coeffs.begin(), R.zero());
        res.polys[i] = P[i];
    }
    return res;
}

} // namespace trunclin
