/*
 * Python bindings for the main operations: sequence generation, the four
 * annihilator algorithms, the staircase oracle, cancellation checks, and the
 * sparse-matrix applications (minimal ideal, determinant).
 *
 * Conventions at the boundary:
 *   element     list of coefficients of x^0..x^{d-1} (short lists are padded)
 *   term        list of n elements (one vector entry each)
 *   sequence    list of terms
 *   polynomial  list of elements, index j holding the coefficient of y^j
 */
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trunclin/driver.hpp"
#include "trunclin/hankel.hpp"
#include "trunclin/kurakin.hpp"
#include "trunclin/lazy_kurakin.hpp"
#include "trunclin/sparse.hpp"

#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace py = pybind11;
using namespace trunclin;

namespace {

using Elem = std::vector<u64>;
using Term = std::vector<Elem>;
using Poly = std::vector<Elem>;

TruncPoly to_elem(const Ring& R, const Elem& coeffs)
{
    return R.from_coeffs(coeffs);
}

Elem from_elem(const TruncPoly& a) { return Elem(a.c.begin(), a.c.end()); }

PartialSequence to_sequence(const Ring& R, const std::vector<Term>& terms)
{
    if (terms.empty())
        throw std::invalid_argument("sequence needs at least one term");
    PartialSequence S;
    S.n = terms[0].size();
    if (S.n == 0) throw std::invalid_argument("terms must not be empty");
    for (const Term& t : terms) {
        if (t.size() != S.n)
            throw std::invalid_argument("all terms must have the same width");
        VecA v;
        v.reserve(S.n);
        for (const Elem& e : t) v.push_back(to_elem(R, e));
        S.terms.push_back(std::move(v));
    }
    return S;
}

std::vector<Term> from_sequence(const PartialSequence& S)
{
    std::vector<Term> out;
    out.reserve(S.e());
    for (const VecA& v : S.terms) {
        Term t;
        t.reserve(v.size());
        for (const TruncPoly& a : v) t.push_back(from_elem(a));
        out.push_back(std::move(t));
    }
    return out;
}

AnnPoly to_annpoly(const Ring& R, const Poly& coeffs)
{
    AnnPoly P;
    P.coeffs.reserve(coeffs.size());
    for (const Elem& e : coeffs) P.coeffs.push_back(to_elem(R, e));
    return P;
}

Poly from_annpoly(const AnnPoly& P)
{
    Poly out;
    out.reserve(P.coeffs.size());
    for (const TruncPoly& a : P.coeffs) out.push_back(from_elem(a));
    return out;
}

std::vector<Poly> from_annpolys(const std::vector<AnnPoly>& polys)
{
    std::vector<Poly> out;
    out.reserve(polys.size());
    for (const AnnPoly& P : polys) out.push_back(from_annpoly(P));
    return out;
}

// inverse of the substitution y_i -> y^i x^0 view: a bivariate basis element
// with x-degree below d maps back to a polynomial with ring coefficients
AnnPoly annpoly_of_bipoly(const Ring& R, const BiPoly& g)
{
    AnnPoly P;
    for (std::size_t a = 0; a < g.c.size() && a < R.d; ++a)
        for (std::size_t b = 0; b < g.c[a].size(); ++b) {
            if (!g.c[a][b]) continue;
            while (P.coeffs.size() <= b) P.coeffs.push_back(R.zero());
            P.coeffs[b].c[a] = g.c[a][b];
        }
    return P;
}

// basis polynomials with ring coefficients; the implicit x^d closure
// generator maps to zero and is dropped
std::vector<Poly> basis_out(const Ring& R, const LexGB& gb)
{
    std::vector<Poly> out;
    for (const BiPoly& g : gb.polys) {
        const AnnPoly P = annpoly_of_bipoly(R, g);
        if (!P.coeffs.empty()) out.push_back(from_annpoly(P));
    }
    return out;
}

py::dict staircase_dict(const Staircase& st)
{
    py::dict out;
    out["dexp"] = st.dexp;
    out["eexp"] = st.eexp;
    out["cardinality"] = st.cardinality();
    return out;
}

std::vector<AnnPoly> compute_generators(const Ring& R, const PartialSequence& S,
                                        Algo a, u64 seed, u64 kappa,
                                        bool verify, std::size_t& dstar,
                                        u64& subiterations)
{
    dstar = 0;
    subiterations = 0;
    switch (a) {
    case Algo::kurakin: {
        const KurakinResult res = kurakin_annihilator(R, S);
        subiterations = res.subiterations;
        return res.polys;
    }
    case Algo::lazy: {
        const LazyKurakinResult res = lazy_kurakin_annihilator(R, S);
        dstar = res.dstar();
        subiterations = res.subiterations;
        return reconstruct_full(R, res);
    }
    case Algo::pmbasis:
        return hankel_kernel_annihilator(R, S, S.e() / 2);
    case Algo::hankel_pm: {
        const BlockHankel H = build_hankel(R, S, S.e() / 2);
        CompressionConfig cc;
        cc.kappa = kappa ? kappa : R.fp.p;
        cc.seed = seed;
        cc.verified = verify;
        return basis_to_annihilators(
            R, hankel_pm_basis(R.fp, R.d, H, staircase_shift(H.mu, R.d), cc));
    }
    }
    throw std::logic_error("unreachable");
}

SparseMatrixA to_matrix(const Ring& R, std::size_t n,
                        const std::vector<std::tuple<std::size_t, std::size_t,
                                                     Elem>>& entries)
{
    SparseMatrixA A;
    A.n = n;
    for (const auto& [row, col, value] : entries)
        A.entries.push_back({row, col, to_elem(R, value)});
    sparse_check(R, A);
    return A;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "annihilator ideals of linearly recurrent vector sequences "
              "over F_p[x]/(x^d)";
    m.attr("__version__") = "0.1.0";

    m.def("algorithms", [] {
        std::vector<std::string> names;
        for (Algo a : kAllAlgos) names.push_back(algo_name(a));
        return names;
    }, "names of the four annihilator algorithms");

    m.def(
        "annihilator",
        [](u64 p, unsigned d, const std::vector<Term>& terms,
           const std::string& algo, u64 seed, u64 kappa, bool verify) {
            const Ring R(p, d);
            const PartialSequence S = to_sequence(R, terms);
            const auto which = algo_from_name(algo);
            if (!which)
                throw std::invalid_argument("unknown algorithm: " + algo);
            std::size_t dstar = 0;
            u64 subiterations = 0;
            const std::vector<AnnPoly> gens = compute_generators(
                R, S, *which, seed, kappa, verify, dstar, subiterations);
            const GBExtract ext = minimal_gb_extract(R, gens);

            py::dict out;
            out["generators"] = from_annpolys(gens);
            out["basis"] = basis_out(R, ext.gb);
            out["staircase"] = staircase_dict(staircase_of(ext.gb));
            out["d_opt"] = ext.d_opt;
            if (*which == Algo::lazy) out["dstar"] = dstar;
            if (*which == Algo::kurakin || *which == Algo::lazy)
                out["subiterations"] = subiterations;
            return out;
        },
        py::arg("p"), py::arg("d"), py::arg("terms"),
        py::arg("algo") = "pmbasis", py::arg("seed") = 0,
        py::arg("kappa") = 0, py::arg("verify") = true,
        "annihilator ideal of a vector sequence: raw generators, minimal "
        "basis, and its staircase");

    m.def(
        "oracle_staircase",
        [](u64 p, unsigned d, const std::vector<Term>& terms) {
            const Ring R(p, d);
            return staircase_dict(staircase_oracle(R, to_sequence(R, terms)));
        },
        py::arg("p"), py::arg("d"), py::arg("terms"),
        "staircase computed by the dense linear-algebra oracle (needs an even "
        "number of terms)");

    m.def(
        "cancels",
        [](u64 p, unsigned d, const std::vector<Term>& terms,
           const Poly& poly) {
            const Ring R(p, d);
            const PartialSequence S = to_sequence(R, terms);
            return cancels(R, to_annpoly(R, poly), S);
        },
        py::arg("p"), py::arg("d"), py::arg("terms"), py::arg("poly"),
        "whether the polynomial cancels every available window of the "
        "sequence");

    m.def(
        "generate",
        [](u64 p, unsigned d, std::size_t delta, std::size_t n, std::size_t t,
           std::size_t e, u64 seed) {
            RunConfig cfg;
            cfg.p = p;
            cfg.d = d;
            cfg.delta = delta;
            cfg.n = n;
            cfg.t = t;
            cfg.e = e;
            cfg.seed = seed;
            const Instance inst = random_instance(cfg);
            py::dict out;
            out["terms"] = from_sequence(inst.S);
            out["basis"] = basis_out(inst.R, inst.gb);
            out["staircase"] = staircase_dict(staircase_of(inst.gb));
            return out;
        },
        py::arg("p"), py::arg("d"), py::arg("delta"), py::arg("n") = 1,
        py::arg("t") = 0, py::arg("e") = 0, py::arg("seed") = 0,
        "random structured instance: a staircase basis with t corners and a "
        "sequence it cancels (t=0 random feasible, e=0 means 2*delta terms)");

    m.def(
        "compare_json",
        [](u64 p, unsigned d, const std::vector<Term>& terms, u64 seed,
           u64 kappa, bool verify) {
            const Ring R(p, d);
            const PartialSequence S = to_sequence(R, terms);
            RunConfig cfg;
            cfg.p = p;
            cfg.d = d;
            cfg.seed = seed;
            cfg.kappa = kappa;
            cfg.verify = verify;
            return report_to_json(annihilate_compare(R, S, cfg)).dump();
        },
        py::arg("p"), py::arg("d"), py::arg("terms"), py::arg("seed") = 0,
        py::arg("kappa") = 0, py::arg("verify") = true,
        "run all four algorithms and report staircases and timings as a JSON "
        "string");

    m.def(
        "minimal_ideal",
        [](u64 p, unsigned d, std::size_t n,
           const std::vector<std::tuple<std::size_t, std::size_t, Elem>>&
               entries,
           u64 seed) {
            const Ring R(p, d);
            const SparseMatrixA A = to_matrix(R, n, entries);
            const MinimalIdealReport rep = minimal_ideal_of_matrix(R, A, seed);
            const GBExtract ext = minimal_gb_extract(R, rep.gens);
            py::dict out;
            out["generators"] = from_annpolys(rep.gens);
            out["basis"] = basis_out(R, ext.gb);
            out["staircase"] = staircase_dict(staircase_of(ext.gb));
            out["d_opt"] = ext.d_opt;
            out["tau"] = rep.tau;
            out["brute_forced"] = rep.brute_forced;
            return out;
        },
        py::arg("p"), py::arg("d"), py::arg("n"), py::arg("entries"),
        py::arg("seed") = 0,
        "minimal polynomial ideal of a sparse matrix (entries as (row, col, "
        "element) triples)");

    m.def(
        "determinant",
        [](u64 p, unsigned d, std::size_t n,
           const std::vector<std::tuple<std::size_t, std::size_t, Elem>>&
               entries,
           u64 seed) -> py::object {
            const Ring R(p, d);
            const SparseMatrixA A = to_matrix(R, n, entries);
            const DeterminantReport rep = determinant(R, A, seed);
            py::dict out;
            out["ok"] = rep.ok;
            out["retries"] = rep.retries;
            out["value"] = rep.ok ? py::cast(from_elem(rep.value))
                                  : py::object(py::none());
            return out;
        },
        py::arg("p"), py::arg("d"), py::arg("n"), py::arg("entries"),
        py::arg("seed") = 0,
        "determinant of a sparse matrix by the preconditioned projection "
        "method; ok=False after five failed preconditioner draws");
}
