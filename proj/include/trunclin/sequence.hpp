/*
 * Partial sequences over A^n and polynomials in y over A.
 *
 * A PartialSequence stores finitely many terms S_0, ..., S_{e-1} of A^n.  An
 * AnnPoly p_0 + p_1 y + ... + p_g y^g acts on sequences by
 *     (P . S)_k = sum_j p_j S_{k+j},          0 <= k < e - deg P,
 * and cancels S when that action is identically zero.
 */
#pragma once

#include "trunclin/truncpoly.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace trunclin {

struct PartialSequence {
    std::size_t n = 0;          // ambient dimension of each term
    std::vector<VecA> terms;

    std::size_t e() const { return terms.size(); }
};

struct AnnPoly {
    std::vector<TruncPoly> coeffs;   // coeffs[j] multiplies y^j

    bool operator==(const AnnPoly&) const = default;
};

// degree in y; -1 for the zero polynomial
i64 ann_deg(const Ring& R, const AnnPoly& P);
// drop zero leading y-coefficients so that coeffs.size() == deg + 1
void ann_trim(const Ring& R, AnnPoly& P);
bool ann_is_zero(const Ring& R, const AnnPoly& P);

AnnPoly ann_zero();
AnnPoly ann_monomial(const Ring& R, std::size_t ydeg, const TruncPoly& c);
// P += c * y^j * Q
void ann_axpy(const Ring& R, AnnPoly& P, const TruncPoly& c, std::size_t j,
              const AnnPoly& Q);
AnnPoly ann_scale(const Ring& R, const TruncPoly& c, const AnnPoly& P);
AnnPoly ann_mul_xpow(const Ring& R, const AnnPoly& P, unsigned t);
AnnPoly ann_add(const Ring& R, const AnnPoly& P, const AnnPoly& Q);
AnnPoly ann_mul(const Ring& R, const AnnPoly& P, const AnnPoly& Q);
std::string ann_to_string(const Ring& R, const AnnPoly& P);

// ---- sequence operations ----------------------------------------------------

// drop the first j terms (j == e leaves the legal empty sequence)
PartialSequence shift(const PartialSequence& S, std::size_t j);

// c*S + T, truncated to the shorter length
PartialSequence scale_add(const Ring& R, const TruncPoly& c,
                          const PartialSequence& S, const PartialSequence& T);

// (P . S); requires deg P < e.  For P = 0 the result is e zero terms.
PartialSequence apply_poly(const Ring& R, const AnnPoly& P, const PartialSequence& S);

bool seq_is_zero(const Ring& R, const PartialSequence& S);

// number of leading zero terms
std::size_t seq_leading_zeros(const Ring& R, const PartialSequence& S);

bool cancels(const Ring& R, const AnnPoly& P, const PartialSequence& S);

// G_i = sum_{j < e} S_j[i] y^{e-1-j}; requires e even
std::vector<AnnPoly> truncated_series(const Ring& R, const PartialSequence& S);

PartialSequence random_sequence(const Ring& R, Rng& rng, std::size_t n, std::size_t e);

// ---- JSON sequence files ------------------------------------------------
// {"p": .., "d": .., "n": .., "e": .., "terms": [[[c0..c_{d-1}] x n] x e]}

nlohmann::ordered_json sequence_to_json(const Ring& R, const PartialSequence& S);
std::pair<Ring, PartialSequence> sequence_from_json(const nlohmann::json& j);

} // namespace trunclin
