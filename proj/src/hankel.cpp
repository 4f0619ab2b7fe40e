#include "trunclin/hankel.hpp"

#include <algorithm>
#include <stdexcept>

namespace trunclin {

namespace {

void check_shape(const BlockHankel& H)
{
    if (H.e == 0 || H.mu == 0 || H.gens.rows != H.mu + H.e - 1 ||
        H.gens.cols != H.n)
        throw std::invalid_argument("block Hankel: malformed generator table");
}

} // namespace

BlockHankel build_hankel(const Ring& R, const PartialSequence& S, std::size_t e)
{
    if (e == 0) throw std::invalid_argument("build_hankel: e must be positive");
    if (S.e() < 2 * e) throw std::invalid_argument("build_hankel: need 2e terms");
    BlockHankel H;
    H.mu = e + 1;
    H.e = e;
    H.n = S.n;
    H.gens = PolyMatrix(2 * e, S.n);
    H.gens.ensure_len(R.d);
    for (std::size_t k = 0; k < 2 * e; ++k)
        for (std::size_t c = 0; c < S.n; ++c)
            for (unsigned t = 0; t < R.d; ++t)
                H.gens.coeff[t].at(k, c) = S.terms[k][c].c[t];
    H.gens.trim();
    return H;
}

PolyMatrix materialize(const BlockHankel& H)
{
    check_shape(H);
    PolyMatrix M(H.mu, H.e * H.n);
    M.ensure_len(H.gens.len());
    for (std::size_t t = 0; t < H.gens.len(); ++t)
        for (std::size_t i = 0; i < H.mu; ++i)
            for (std::size_t j = 0; j < H.e; ++j)
                for (std::size_t c = 0; c < H.n; ++c)
                    M.coeff[t].at(i, j * H.n + c) = H.gens.coeff[t].at(i + j, c);
    M.trim();
    return M;
}

PolyMatrix structured_right_multiply(const Fp& fp, const BlockHankel& H,
                                     const FpMat& C)
{
    check_shape(H);
    if (C.rows != H.e * H.n)
        throw std::invalid_argument("structured_right_multiply: dimension mismatch");
    const std::size_t dl = std::max<std::size_t>(H.gens.len(), 1);
    PolyMatrix P(H.mu, C.cols);
    P.ensure_len(dl);

    // per coordinate c, entry (i, rho) accumulates the correlation of the
    // generator series G_c(z) = sum_k F_k[c] z^k with the weight polynomial of
    // column rho: coefficients e-1 .. e-1+mu-1 of the product G_c(z) W(z),
    // W(z) = sum_j C[jn+c, rho] z^{e-1-j}
    std::vector<u64> G(H.gens.rows * dl);
    std::vector<u64> acc(dl);
    for (std::size_t c = 0; c < H.n; ++c) {
        for (std::size_t k = 0; k < H.gens.rows; ++k)
            for (std::size_t t = 0; t < dl; ++t)
                G[k * dl + t] = H.gens.coeff[t].at(k, c);
        for (std::size_t rho = 0; rho < C.cols; ++rho)
            for (std::size_t i = 0; i < H.mu; ++i) {
                std::fill(acc.begin(), acc.end(), 0);
                std::size_t j0 = 0;
                while (j0 < H.e) {
                    const std::size_t j1 = std::min(H.e, j0 + fp.lazy_stride);
                    for (std::size_t j = j0; j < j1; ++j) {
                        const u64 w = C.at(j * H.n + c, rho);
                        if (!w) continue;
                        const u64* src = G.data() + (i + j) * dl;
                        for (std::size_t t = 0; t < dl; ++t) acc[t] += w * src[t];
                    }
                    for (std::size_t t = 0; t < dl; ++t) acc[t] = fp.reduce(acc[t]);
                    j0 = j1;
                }
                for (std::size_t t = 0; t < dl; ++t)
                    P.coeff[t].at(i, rho) = fp.add(P.coeff[t].at(i, rho), acc[t]);
            }
    }
    P.trim();
    return P;
}

std::vector<AnnPoly> basis_to_annihilators(const Ring& R, const ApproximantBasis& B)
{
    std::vector<AnnPoly> out;
    for (std::size_t i = 0; i < B.basis.rows; ++i) {
        AnnPoly P;
        P.coeffs.reserve(B.basis.cols);
        for (std::size_t j = 0; j < B.basis.cols; ++j) {
            std::vector<u64> cj = B.basis.entry(i, j);
            if (cj.size() > R.d) cj.resize(R.d);
            P.coeffs.push_back(R.from_coeffs(cj));
        }
        ann_trim(R, P);
        if (!ann_is_zero(R, P)) out.push_back(std::move(P));
    }
    return out;
}

std::vector<i64> staircase_shift(std::size_t mu, unsigned d)
{
    std::vector<i64> w(mu);
    for (std::size_t i = 0; i < mu; ++i)
        w[i] = static_cast<i64>(i) * (static_cast<i64>(d) + 1);
    return w;
}

std::vector<AnnPoly> hankel_kernel_annihilator(const Ring& R,
                                               const PartialSequence& S,
                                               std::size_t e)
{
    BlockHankel H = build_hankel(R, S, e);
    ApproximantBasis B = popov_normalize(
        R.fp, pm_basis(R.fp, materialize(H), R.d, staircase_shift(H.mu, R.d)));
    return basis_to_annihilators(R, B);
}

ApproximantBasis hankel_pm_basis(const Fp& fp, unsigned d, const BlockHankel& H,
                                 std::vector<i64> w, const CompressionConfig& cfg)
{
    check_shape(H);
    if (H.mu >= H.e * H.n)
        return popov_normalize(fp, pm_basis(fp, materialize(H), d, std::move(w)));
    if (cfg.kappa < 2)
        throw std::invalid_argument("hankel_pm_basis: kappa must be at least 2");
    const std::size_t r = cfg.r ? cfg.r : H.mu;
    if (r == 0 || r > H.e * H.n)
        throw std::invalid_argument("hankel_pm_basis: bad column target");
    const u64 bound = std::min<u64>(cfg.kappa, fp.p);

    Rng root(cfg.seed);
    auto draw = [&](u64 t) {
        Rng sub = root.split(t);
        FpMat C(H.e * H.n, r);
        for (u64& v : C.a) v = sub.below(bound);
        PolyMatrix FC = structured_right_multiply(fp, H, C);
        return popov_normalize(fp, pm_basis(fp, FC, d, w));
    };
    if (!cfg.verified) return draw(0);

    // majority of three independent draws; no-majority falls back to the
    // exact uncompressed computation
    ApproximantBasis B0 = draw(0), B1 = draw(1);
    if (B0.basis == B1.basis) return B0;
    ApproximantBasis B2 = draw(2);
    if (B0.basis == B2.basis) return B0;
    if (B1.basis == B2.basis) return B1;
    return popov_normalize(fp, pm_basis(fp, materialize(H), d, std::move(w)));
}

} // namespace trunclin
