#pragma once
/*
 * Word-sized prime field F_p.  The modulus is restricted to p < 2^31 so a
 * product of two reduced elements fits in a 64-bit word; dot-product style
 * loops may accumulate `lazy_stride` products before reducing.
 */

#include <cstdint>
#include <stdexcept>

namespace trunclin {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline bool is_prime_u64(u64 n)
{
    if (n < 2) return false;
    for (u64 q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

struct Fp {
    u64 p = 2;
    u64 lazy_stride = 1;   // products accumulable in u64 before a reduction

    Fp() = default;
    explicit Fp(u64 p_) : p(p_)
    {
        if (p < 2 || p >= (u64(1) << 31))
            throw std::invalid_argument("Fp: modulus must satisfy 2 <= p < 2^31");
        if (!is_prime_u64(p))
            throw std::invalid_argument("Fp: modulus is not prime");
        const u64 sq = (p - 1) * (p - 1);
        lazy_stride = sq ? (~u64(0) - (p - 1)) / sq : ~u64(0);
        if (lazy_stride == 0) lazy_stride = 1;
    }

    u64 reduce(u64 a) const { return a % p; }
    u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p ? s - p : s; }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 neg(u64 a) const { return a ? p - a : 0; }
    u64 mul(u64 a, u64 b) const { return a * b % p; }

    u64 pow(u64 a, u64 e) const
    {
        u64 r = 1 % p;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    // multiplicative inverse; p is prime so Fermat suffices
    u64 inv(u64 a) const
    {
        a %= p;
        if (a == 0) throw std::domain_error("Fp::inv: zero has no inverse");
        return pow(a, p - 2);
    }
};

} // namespace trunclin
