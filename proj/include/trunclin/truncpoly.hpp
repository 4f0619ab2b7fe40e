#pragma once
/*
 * Arithmetic in the truncated polynomial ring A = F_p[x]/(x^d) and in the
 * free module A^n.
 *
 * Elements are dense coefficient vectors of length exactly d (constant term
 * first).  The units of A are the elements with nonzero constant term, and
 * every nonzero a factors as a = x^t * u with t = val(a) its valuation and
 * u a unit (normalize_leading).  Inverses of units are computed by Newton
 * iteration: b <- b*(2 - a*b) doubles the truncation order per step.
 *
 * All operations go through a Ring context carrying (p, d); elements do not
 * store their ring.
 */

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "trunclin/fp.hpp"
#include "trunclin/rng.hpp"

namespace trunclin {

struct TruncPoly {
    std::vector<u64> c;   // exactly d coefficients, c[i] = coeff of x^i

    bool operator==(const TruncPoly&) const = default;
};

using VecA = std::vector<TruncPoly>;   // element of A^n

class Ring {
public:
    Fp fp;
    unsigned d = 1;

    Ring() = default;
    Ring(u64 p, unsigned d_) : fp(p), d(d_)
    {
        if (d == 0) throw std::invalid_argument("Ring: precision d must be >= 1");
    }

    u64 p() const { return fp.p; }

    // ---- construction ----

    TruncPoly zero() const { return TruncPoly{std::vector<u64>(d, 0)}; }
    TruncPoly one() const { return monomial(0); }

    // x^t, or 0 when t >= d
    TruncPoly monomial(unsigned t, u64 coeff = 1) const
    {
        TruncPoly a = zero();
        if (t < d) a.c[t] = fp.reduce(coeff);
        return a;
    }

    // pad/validate an arbitrary coefficient list into an element of A
    TruncPoly from_coeffs(const std::vector<u64>& coeffs) const
    {
        if (coeffs.size() > d)
            throw std::invalid_argument("Ring::from_coeffs: more than d coefficients");
        TruncPoly a = zero();
        for (std::size_t i = 0; i < coeffs.size(); ++i) a.c[i] = fp.reduce(coeffs[i]);
        return a;
    }

    void check(const TruncPoly& a) const
    {
        if (a.c.size() != d)
            throw std::invalid_argument("TruncPoly: wrong coefficient count for this ring");
    }

    // ---- basic arithmetic ----

    bool is_zero(const TruncPoly& a) const
    {
        for (u64 v : a.c) if (v) return false;
        return true;
    }

    bool is_unit(const TruncPoly& a) const { return a.c[0] != 0; }

    // x-adic valuation; val(0) = d by convention
    unsigned val(const TruncPoly& a) const
    {
        for (unsigned i = 0; i < d; ++i) if (a.c[i]) return i;
        return d;
    }

    TruncPoly add(const TruncPoly& a, const TruncPoly& b) const
    {
        TruncPoly r = a;
        for (unsigned i = 0; i < d; ++i) r.c[i] = fp.add(r.c[i], b.c[i]);
        return r;
    }

    TruncPoly sub(const TruncPoly& a, const TruncPoly& b) const
    {
        TruncPoly r = a;
        for (unsigned i = 0; i < d; ++i) r.c[i] = fp.sub(r.c[i], b.c[i]);
        return r;
    }

    TruncPoly neg(const TruncPoly& a) const
    {
        TruncPoly r = a;
        for (unsigned i = 0; i < d; ++i) r.c[i] = fp.neg(r.c[i]);
        return r;
    }

    TruncPoly scal_mul(u64 s, const TruncPoly& a) const
    {
        s = fp.reduce(s);
        TruncPoly r = a;
        for (unsigned i = 0; i < d; ++i) r.c[i] = fp.mul(s, r.c[i]);
        return r;
    }

    TruncPoly mul(const TruncPoly& a, const TruncPoly& b) const;

    // a * x^t (coefficients shifted up, overflow truncated)
    TruncPoly mul_xpow(const TruncPoly& a, unsigned t) const
    {
        TruncPoly r = zero();
        for (unsigned i = t; i < d; ++i) r.c[i] = a.c[i - t];
        return r;
    }

    // a / x^t assuming val(a) >= t (exact division by a monomial)
    TruncPoly div_xpow(const TruncPoly& a, unsigned t) const
    {
        if (val(a) < t)
            throw std::domain_error("Ring::div_xpow: valuation too small");
        TruncPoly r = zero();
        for (unsigned i = t; i < d; ++i) r.c[i - t] = a.c[i];
        return r;
    }

    // inverse of a unit by Newton iteration; domain error otherwise
    TruncPoly inverse(const TruncPoly& a) const;

    // factor a nonzero a as x^t * u with u a unit (u's top t coefficients 0)
    std::pair<unsigned, TruncPoly> normalize_leading(const TruncPoly& a) const
    {
        unsigned t = val(a);
        if (t == d)
            throw std::invalid_argument("Ring::normalize_leading: zero element");
        return {t, div_xpow(a, t)};
    }

    // ---- vectors over A ----

    VecA vzero(std::size_t n) const { return VecA(n, zero()); }

    bool vis_zero(const VecA& v) const
    {
        for (const auto& a : v) if (!is_zero(a)) return false;
        return true;
    }

    // dst += s * src  (the workhorse of all sequence updates)
    void vaxpy(VecA& dst, const TruncPoly& s, const VecA& src) const
    {
        for (std::size_t i = 0; i < dst.size(); ++i)
            dst[i] = add(dst[i], mul(s, src[i]));
    }

    VecA vmul_xpow(const VecA& v, unsigned t) const
    {
        VecA r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = mul_xpow(v[i], t);
        return r;
    }

    VecA vscal(const TruncPoly& s, const VecA& v) const
    {
        VecA r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = mul(s, v[i]);
        return r;
    }

    // minimum valuation over all entries (d when the vector is zero)
    unsigned vmin_val(const VecA& v) const
    {
        unsigned m = d;
        for (const auto& a : v) m = std::min(m, val(a));
        return m;
    }
};

// uniform random element / unit of A
TruncPoly random_elem(const Ring& R, Rng& rng);
TruncPoly random_unit(const Ring& R, Rng& rng);

// full (untruncated) product of dense F_p[x] coefficient vectors; empty == 0
std::vector<u64> fp_poly_mul(const Fp& fp, const std::vector<u64>& a,
                             const std::vector<u64>& b);

} // namespace trunclin
