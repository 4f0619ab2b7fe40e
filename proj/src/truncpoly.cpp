/*
 * Truncated-ring multiplication and inversion.  Products use schoolbook
 * convolution below a size threshold and Karatsuba above it; inversion is
 * the usual Newton iteration with precision doubling.
 */

#include "trunclin/truncpoly.hpp"

#include <algorithm>
#include <cstring>

namespace trunclin {

namespace {

constexpr std::size_t kKaratsubaThreshold = 48;

// out[0..2n-2] = a*b, schoolbook; lazy u64 accumulation chunked by stride
void full_mul_school(const Fp& fp, const u64* a, const u64* b, std::size_t n, u64* out)
{
    for (std::size_t k = 0; k < 2 * n - 1; ++k) out[k] = 0;
    const bool lazy = fp.lazy_stride >= n;   // n products never overflow u64
    for (std::size_t i = 0; i < n; ++i) {
        const u64 ai = a[i];
        if (!ai) continue;
        if (lazy) {
            for (std::size_t j = 0; j < n; ++j) out[i + j] += ai * b[j];
        } else {
            for (std::size_t j = 0; j < n; ++j)
                out[i + j] = fp.reduce(out[i + j] + ai * b[j]);
        }
    }
    for (std::size_t k = 0; k < 2 * n - 1; ++k) out[k] = fp.reduce(out[k]);
}

// out[0..2n-2] = a*b by Karatsuba; scratch of size >= 4n
void full_mul_kara(const Fp& fp, const u64* a, const u64* b, std::size_t n,
                   u64* out, u64* scratch)
{
    if (n < kKaratsubaThreshold) {
        full_mul_school(fp, a, b, n, out);
        return;
    }
    const std::size_t h = n / 2, hi = n - h;   // a = a0 + x^h a1, |a1| = hi

    // out = a0*b0 | a1*b1 placed at offset 2h (sizes 2h-1 and 2hi-1)
    full_mul_kara(fp, a, b, h, out, scratch);
    out[2 * h - 1] = 0;
    full_mul_kara(fp, a + h, b + h, hi, out + 2 * h, scratch);

    // sums s_a = a0+a1, s_b = b0+b1 (length hi, short halves zero-padded)
    u64* sa = scratch;
    u64* sb = scratch + hi;
    u64* mid = scratch + 2 * hi;               // (s_a*s_b), length 2hi-1
    for (std::size_t i = 0; i < hi; ++i) {
        sa[i] = fp.add(i < h ? a[i] : 0, a[h + i]);
        sb[i] = fp.add(i < h ? b[i] : 0, b[h + i]);
    }
    full_mul_kara(fp, sa, sb, hi, mid, scratch + 4 * hi);

    // mid -= a0*b0 + a1*b1, then out[h..] += mid
    for (std::size_t i = 0; i < 2 * h - 1; ++i) mid[i] = fp.sub(mid[i], out[i]);
    for (std::size_t i = 0; i < 2 * hi - 1; ++i) mid[i] = fp.sub(mid[i], out[2 * h + i]);
    for (std::size_t i = 0; i < 2 * hi - 1; ++i)
        out[h + i] = fp.add(out[h + i], mid[i]);
}

std::size_t kara_scratch_size(std::size_t n)
{
    std::size_t s = 0;
    while (n >= kKaratsubaThreshold) {
        n = n - n / 2;
        s += 6 * n;
    }
    return s;
}

} // namespace

TruncPoly Ring::mul(const TruncPoly& a, const TruncPoly& b) const
{
    TruncPoly r = zero();
    if (d < kKaratsubaThreshold) {
        // truncated schoolbook: only the first d coefficients are needed
        for (unsigned i = 0; i < d; ++i) {
            u64 acc = 0;
            if (fp.lazy_stride >= d) {
                for (unsigned j = 0; j <= i; ++j) acc += a.c[j] * b.c[i - j];
            } else {
                for (unsigned j = 0; j <= i; ++j)
                    acc = fp.reduce(acc + a.c[j] * b.c[i - j]);
            }
            r.c[i] = fp.reduce(acc);
        }
        return r;
    }
    std::vector<u64> out(2 * d - 1), scratch(kara_scratch_size(d) + 1);
    full_mul_kara(fp, a.c.data(), b.c.data(), d, out.data(), scratch.data());
    std::memcpy(r.c.data(), out.data(), d * sizeof(u64));
    return r;
}

std::vector<u64> fp_poly_mul(const Fp& fp, const std::vector<u64>& a,
                             const std::vector<u64>& b)
{
    if (a.empty() || b.empty()) return {};
    const std::size_t n = std::max(a.size(), b.size());
    std::vector<u64> pa(n, 0), pb(n, 0);
    std::copy(a.begin(), a.end(), pa.begin());
    std::copy(b.begin(), b.end(), pb.begin());
    std::vector<u64> out(2 * n - 1, 0);
    std::vector<u64> scratch(kara_scratch_size(n) + 1);
    full_mul_kara(fp, pa.data(), pb.data(), n, out.data(), scratch.data());
    out.resize(a.size() + b.size() - 1);
    return out;
}

TruncPoly Ring::inverse(const TruncPoly& a) const
{
    if (!is_unit(a))
        throw std::domain_error("Ring::inverse: element is not a unit");
    TruncPoly b = zero();
    b.c[0] = fp.inv(a.c[0]);
    // b correct mod x^k; one Newton step lifts to mod x^2k
    for (unsigned k = 1; k < d; k *= 2) {
        TruncPoly t = mul(a, b);            // == 1 mod x^k
        t = sub(add(one(), one()), t);      // 2 - a*b
        b = mul(b, t);
    }
    return b;
}

TruncPoly random_elem(const Ring& R, Rng& rng)
{
    TruncPoly a = R.zero();
    for (unsigned i = 0; i < R.d; ++i) a.c[i] = rng.below(R.p());
    return a;
}

TruncPoly random_unit(const Ring& R, Rng& rng)
{
    TruncPoly a = random_elem(R, rng);
    a.c[0] = 1 + rng.below(R.p() - 1);
    return a;
}

} // namespace trunclin
