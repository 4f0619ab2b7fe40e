#include "trunclin/sequence.hpp"

#include <algorithm>
#include <stdexcept>

namespace trunclin {

// ======================= AnnPoly =============================================

i64 ann_deg(const Ring& R, const AnnPoly& P)
{
    for (std::size_t j = P.coeffs.size(); j-- > 0;)
        if (!R.is_zero(P.coeffs[j])) return static_cast<i64>(j);
    return -1;
}

void ann_trim(const Ring& R, AnnPoly& P)
{
    P.coeffs.resize(static_cast<std::size_t>(ann_deg(R, P) + 1));
}

bool ann_is_zero(const Ring& R, const AnnPoly& P)
{
    return ann_deg(R, P) < 0;
}

AnnPoly ann_zero()
{
    return {};
}

AnnPoly ann_monomial(const Ring& R, std::size_t ydeg, const TruncPoly& c)
{
    if (R.is_zero(c)) return {};
    AnnPoly P;
    P.coeffs.assign(ydeg + 1, R.zero());
    P.coeffs[ydeg] = c;
    return P;
}

void ann_axpy(const Ring& R, AnnPoly& P, const TruncPoly& c, std::size_t j,
              const AnnPoly& Q)
{
    if (P.coeffs.size() < Q.coeffs.size() + j)
        P.coeffs.resize(Q.coeffs.size() + j, R.zero());
    for (std::size_t k = 0; k < Q.coeffs.size(); ++k)
        P.coeffs[k + j] = R.add(P.coeffs[k + j], R.mul(c, Q.coeffs[k]));
    ann_trim(R, P);
}

AnnPoly ann_scale(const Ring& R, const TruncPoly& c, const AnnPoly& P)
{
    AnnPoly Q;
    ann_axpy(R, Q, c, 0, P);
    return Q;
}

AnnPoly ann_mul_xpow(const Ring& R, const AnnPoly& P, unsigned t)
{
    AnnPoly Q = P;
    for (TruncPoly& c : Q.coeffs) c = R.mul_xpow(c, t);
    ann_trim(R, Q);
    return Q;
}

AnnPoly ann_add(const Ring& R, const AnnPoly& P, const AnnPoly& Q)
{
    AnnPoly S = P;
    ann_axpy(R, S, R.one(), 0, Q);
    return S;
}

AnnPoly ann_mul(const Ring& R, const AnnPoly& P, const AnnPoly& Q)
{
    AnnPoly S;
    if (ann_is_zero(R, P) || ann_is_zero(R, Q)) return S;
    S.coeffs.assign(P.coeffs.size() + Q.coeffs.size() - 1, R.zero());
    for (std::size_t a = 0; a < P.coeffs.size(); ++a) {
        if (R.is_zero(P.coeffs[a])) continue;
        for (std::size_t b = 0; b < Q.coeffs.size(); ++b)
            S.coeffs[a + b] = R.add(S.coeffs[a + b], R.mul(P.coeffs[a], Q.coeffs[b]));
    }
    ann_trim(R, S);
    return S;
}

std::string ann_to_string(const Ring& R, const AnnPoly& P)
{
    if (ann_is_zero(R, P)) return "0";
    std::string s;
    for (std::size_t j = P.coeffs.size(); j-- > 0;) {
        const TruncPoly& c = P.coeffs[j];
        if (R.is_zero(c)) continue;
        if (!s.empty()) s += " + ";
        std::string cs;
        bool first = true;
        for (unsigned t = 0; t < R.d; ++t) {
            if (!c.c[t]) continue;
            if (!first) cs += "+";
            if (c.c[t] != 1 || t == 0) cs += std::to_string(c.c[t]);
            if (t > 0) {
                if (c.c[t] != 1) cs += "*";
                cs += "x";
                if (t > 1) cs += "^" + std::to_string(t);
            }
            first = false;
        }
        const bool needs_parens = cs.find('+') != std::string::npos && j > 0;
        if (j == 0) {
            s += cs;
        } else {
            s += needs_parens ? "(" + cs + ")" : cs;
            if (cs != "1" || needs_parens) s += "*";
            else s.resize(s.size() - cs.size());   // drop the redundant "1"
            s += "y";
            if (j > 1) s += "^" + std::to_string(j);
        }
    }
    return s;
}

// ======================= sequence operations =================================

PartialSequence shift(const PartialSequence& S, std::size_t j)
{
    if (j > S.e()) throw std::invalid_argument("shift: offset exceeds length");
    PartialSequence T;
    T.n = S.n;
    T.terms.assign(S.terms.begin() + static_cast<std::ptrdiff_t>(j), S.terms.end());
    return T;
}

PartialSequence scale_add(const Ring& R, const TruncPoly& c,
                          const PartialSequence& S, const PartialSequence& T)
{
    if (S.n != T.n) throw std::invalid_argument("scale_add: dimension mismatch");
    PartialSequence U;
    U.n = S.n;
    const std::size_t e = std::min(S.e(), T.e());
    U.terms.resize(e);
    for (std::size_t k = 0; k < e; ++k) {
        U.terms[k] = T.terms[k];
        R.vaxpy(U.terms[k], c, S.terms[k]);
    }
    return U;
}

PartialSequence apply_poly(const Ring& R, const AnnPoly& P, const PartialSequence& S)
{
    const i64 g = ann_deg(R, P);
    if (g >= static_cast<i64>(S.e()))
        throw std::invalid_argument("apply_poly: deg P must be < sequence length");
    PartialSequence T;
    T.n = S.n;
    if (g < 0) {   // zero polynomial: zero sequence of the same length
        T.terms.assign(S.e(), R.vzero(S.n));
        return T;
    }
    const std::size_t len = S.e() - static_cast<std::size_t>(g);
    T.terms.assign(len, R.vzero(S.n));
    for (std::size_t k = 0; k < len; ++k)
        for (std::size_t j = 0; j <= static_cast<std::size_t>(g); ++j)
            R.vaxpy(T.terms[k], P.coeffs[j], S.terms[k + j]);
    return T;
}

bool seq_is_zero(const Ring& R, const PartialSequence& S)
{
    for (const VecA& v : S.terms)
        if (!R.vis_zero(v)) return false;
    return true;
}

std::size_t seq_leading_zeros(const Ring& R, const PartialSequence& S)
{
    std::size_t k = 0;
    while (k < S.e() && R.vis_zero(S.terms[k])) ++k;
    return k;
}

bool cancels(const Ring& R, const AnnPoly& P, const PartialSequence& S)
{
    return seq_is_zero(R, apply_poly(R, P, S));
}

std::vector<AnnPoly> truncated_series(const Ring& R, const PartialSequence& S)
{
    if (S.e() % 2 != 0)
        throw std::invalid_argument("truncated_series: sequence length must be even");
    std::vector<AnnPoly> G(S.n);
    for (std::size_t i = 0; i < S.n; ++i) {
        G[i].coeffs.assign(S.e(), R.zero());
        for (std::size_t j = 0; j < S.e(); ++j)
            G[i].coeffs[S.e() - 1 - j] = S.terms[j][i];
        ann_trim(R, G[i]);
    }
    return G;
}

PartialSequence random_sequence(const Ring& R, Rng& rng, std::size_t n, std::size_t e)
{
    PartialSequence S;
    S.n = n;
    S.terms.resize(e);
    for (VecA& v : S.terms) {
        v.resize(n);
        for (TruncPoly& a : v) a = random_elem(R, rng);
    }
    return S;
}

// ======================= JSON ================================================

nlohmann::ordered_json sequence_to_json(const Ring& R, const PartialSequence& S)
{
    nlohmann::ordered_json j;
    j["p"] = R.p();
    j["d"] = R.d;
    j["n"] = S.n;
    j["e"] = S.e();
    auto terms = nlohmann::ordered_json::array();
    for (const VecA& v : S.terms) {
        auto term = nlohmann::ordered_json::array();
        for (const TruncPoly& a : v) term.push_back(a.c);
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    return j;
}

std::pair<Ring, PartialSequence> sequence_from_json(const nlohmann::json& j)
{
    const u64 p = j.at("p").get<u64>();
    const unsigned d = j.at("d").get<unsigned>();
    const std::size_t n = j.at("n").get<std::size_t>();
    const std::size_t e = j.at("e").get<std::size_t>();
    Ring R(p, d);
    PartialSequence S;
    S.n = n;
    const auto& terms = j.at("terms");
    if (terms.size() != e)
        throw std::invalid_argument("sequence_from_json: e does not match terms");
    S.terms.reserve(e);
    for (const auto& term : terms) {
        if (term.size() != n)
            throw std::invalid_argument("sequence_from_json: wrong vector dimension");
        VecA v;
        v.reserve(n);
        for (const auto& entry : term) {
            const auto coeffs = entry.get<std::vector<u64>>();
            if (coeffs.size() != d)
                throw std::invalid_argument("sequence_from_json: wrong coefficient count");
            v.push_back(R.from_coeffs(coeffs));
        }
        S.terms.push_back(std::move(v));
    }
    return {R, S};
}

} // namespace trunclin
