/*
 * Command-line front end: instance generation, annihilator computation with
 * cross-validation, benchmark rows, and the two sparse-matrix applications.
 *
 * Exit codes: 0 success, 1 disagreement or validation failure, 2 usage error.
 */
#include <CLI11.hpp>

#include "trunclin/driver.hpp"
#include "trunclin/hankel.hpp"
#include "trunclin/sparse.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace trunclin;

namespace {

std::string bipoly_to_string(const BiPoly& g)
{
    std::size_t bmax = 0;
    for (const auto& col : g.c) bmax = std::max(bmax, col.size());
    std::string s;
    for (std::size_t b = bmax; b-- > 0;)
        for (std::size_t a = g.c.size(); a-- > 0;) {
            const u64 coeff = bi_get(g, a, b);
            if (!coeff) continue;
            if (!s.empty()) s += " + ";
            if (coeff != 1 || (a == 0 && b == 0)) s += std::to_string(coeff);
            if (a) {
                if (coeff != 1) s += "*";
                s += "x";
                if (a > 1) s += "^" + std::to_string(a);
            }
            if (b) {
                if (a || coeff != 1) s += "*";
                s += "y";
                if (b > 1) s += "^" + std::to_string(b);
            }
        }
    return s.empty() ? "0" : s;
}

std::string elem_to_string(const Ring& R, const TruncPoly& a)
{
    AnnPoly wrap;
    wrap.coeffs = {a};
    return ann_to_string(R, wrap);
}

nlohmann::json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return nlohmann::json::parse(in);
}

void write_file(const std::string& path, const std::string& body)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << body;
}

std::vector<Algo> parse_algos(const std::vector<std::string>& names)
{
    std::vector<Algo> algos;
    for (const auto& name : names) {
        const auto a = algo_from_name(name);
        if (!a) throw std::runtime_error("unknown algorithm " + name);
        algos.push_back(*a);
    }
    return algos;
}

// all n^2 coordinate sequences of A over 2n terms, from n sparse Krylov chains
PartialSequence all_coordinates(const Ring& R, const SparseMatrixA& A)
{
    const std::size_t n = A.n;
    std::vector<PartialSequence> columns(n);
    for (std::size_t j = 0; j < n; ++j) {
        VecA ej = R.vzero(n);
        ej[j] = R.one();
        std::vector<VecA> rows(n, VecA{});
        for (std::size_t i = 0; i < n; ++i) {
            VecA ei = R.vzero(n);
            ei[i] = R.one();
            rows[i] = ei;
        }
        columns[j] = krylov_sequence(R, A, rows, ej, 2 * n);
    }
    PartialSequence S;
    S.n = n * n;
    for (std::size_t k = 0; k < 2 * n; ++k) {
        VecA term;
        term.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                term.push_back(columns[j].terms[k][i]);
        S.terms.push_back(std::move(term));
    }
    return S;
}

bool same_ideal(const Ring& R, const LexGB& a, const LexGB& b)
{
    if (!(staircase_of(a) == staircase_of(b))) return false;
    for (const auto& g : a.polys)
        if (!normal_form(R.fp, g, b).is_zero()) return false;
    for (const auto& g : b.polys)
        if (!normal_form(R.fp, g, a).is_zero()) return false;
    return true;
}

int cmd_gen(const RunConfig& cfg, const std::string& seq_path,
            const std::string& gb_path)
{
    const Instance inst = random_instance(cfg);
    write_file(gb_path, gb_to_json(inst.gb).dump(2) + "\n");
    write_file(seq_path, sequence_to_json(inst.R, inst.S).dump(2) + "\n");
    std::cout << "wrote " << seq_path << " (" << inst.S.e() << " terms in A^"
              << inst.S.n << ") and " << gb_path << " (t = "
              << inst.gb.polys.size() - 1 << ")\n";
    return 0;
}

int cmd_annihilate(RunConfig cfg, const std::string& seq_path,
                   const std::string& format)
{
    auto [R, S] = sequence_from_json(load_json(seq_path));
    if (S.e() < 2)
        throw std::runtime_error("sequence too short: need at least 2 terms");
    const RunReport rep = annihilate_compare(R, S, cfg);

    if (format == "json") {
        std::cout << report_to_json(rep).dump(2) << '\n';
    } else if (format == "csv") {
        std::cout << "algo,D,d_opt,dstar,seconds\n";
        for (const auto& o : rep.outcomes)
            std::cout << algo_name(o.algo) << ',' << o.staircase.cardinality()
                      << ',' << o.d_opt << ','
                      << (o.algo == Algo::lazy ? std::to_string(o.dstar)
                                               : std::string("NA"))
                      << ',' << o.seconds << '\n';
    } else {
        std::cout << report_to_table(rep);
    }
    if (!rep.agree) {
        std::cerr << "annihilate: staircase disagreement\n";
        return 1;
    }
    return 0;
}

int cmd_bench(const RunConfig& cfg)
{
    std::cout << bench_csv_header() << '\n'
              << bench_csv_row(bench_point(cfg)) << '\n';
    return 0;
}

int cmd_det(const std::string& mat_path, u64 seed, bool oracle)
{
    std::ifstream in(mat_path);
    if (!in) throw std::runtime_error("cannot open " + mat_path);
    const auto [R, A] = matrix_from_text(in);
    const DeterminantReport rep = determinant(R, A, seed);
    if (!rep.ok) {
        std::cerr << "det: preconditioner retries exhausted "
                     "(constant part may be pathological)\n";
        return 1;
    }
    std::cout << "det = " << elem_to_string(R, rep.value)
              << "  (draws: " << rep.retries << ")\n";
    if (oracle) {
        const TruncPoly want = dense_determinant(R, sparse_to_dense(R, A));
        if (!(want == rep.value)) {
            std::cerr << "det: oracle mismatch, dense determinant is "
                      << elem_to_string(R, want) << '\n';
            return 1;
        }
        std::cout << "oracle: match\n";
    }
    return 0;
}

int cmd_minpoly(const std::string& mat_path, u64 seed, bool oracle,
                const std::string& format)
{
    std::ifstream in(mat_path);
    if (!in) throw std::runtime_error("cannot open " + mat_path);
    const auto [R, A] = matrix_from_text(in);
    const MinimalIdealReport rep = minimal_ideal_of_matrix(R, A, seed);
    const GBExtract ext = minimal_gb_extract(R, rep.gens);

    if (format == "json") {
        nlohmann::ordered_json j;
        j["tau"] = rep.tau;
        j["brute_forced"] = rep.brute_forced;
        j["d_opt"] = ext.d_opt;
        j["basis"] = gb_to_json(ext.gb);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "tau = " << rep.tau
                  << (rep.brute_forced ? " (brute force)" : "")
                  << ", minimal basis (" << ext.gb.polys.size()
                  << " elements):\n";
        for (const auto& g : ext.gb.polys)
            std::cout << "  " << bipoly_to_string(g) << '\n';
    }

    if (oracle) {
        const std::vector<AnnPoly> brute =
            hankel_kernel_annihilator(R, all_coordinates(R, A), A.n);
        if (!same_ideal(R, ext.gb, minimal_gb_extract(R, brute).gb)) {
            std::cerr << "minpoly: oracle mismatch against the coordinate "
                         "sequences\n";
            return 1;
        }
        std::cout << "oracle: match\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"annihilator ideals of linearly recurrent sequences over "
                 "F_p[x]/(x^d)"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<std::string> algo_names;
    std::string format = "table";
    bool oracle = false;
    std::string seq_path, gb_path, mat_path;

    const auto instance_flags = [&](CLI::App* sub) {
        sub->add_option("--p", cfg.p, "prime modulus")->capture_default_str();
        sub->add_option("--d", cfg.d, "truncation order")->capture_default_str();
        sub->add_option("--delta", cfg.delta, "recurrence order bound")
            ->capture_default_str();
        sub->add_option("--n", cfg.n, "vector dimension")->capture_default_str();
        sub->add_option("--e", cfg.e, "terms to generate (0: 2*delta)")
            ->capture_default_str();
        sub->add_option("--t", cfg.t, "staircase corners (0: random)")
            ->capture_default_str();
    };
    const auto algo_flags = [&](CLI::App* sub) {
        sub->add_option("--algo", algo_names,
                        "algorithm (repeatable; default: all four)")
            ->check(CLI::IsMember({"kurakin", "lazy", "pmbasis", "hankel-pm"}));
        sub->add_option("--kappa", cfg.kappa,
                        "compression sample-set size (0: p)")
            ->capture_default_str();
        sub->add_flag("--verify", cfg.verify,
                      "majority vote for the compressed variant");
    };

    CLI::App* gen = app.add_subcommand(
        "gen", "generate a random minimal basis and a sequence it cancels");
    gen->add_option("sequence", seq_path, "output sequence file (json)")
        ->required();
    gen->add_option("basis", gb_path, "output basis file (json)")->required();
    instance_flags(gen);
    gen->add_option("--seed", cfg.seed, "random seed")->capture_default_str();

    CLI::App* ann = app.add_subcommand(
        "annihilate", "compute annihilator staircases and compare algorithms");
    ann->add_option("sequence", seq_path, "input sequence file (json)")
        ->required();
    algo_flags(ann);
    ann->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    ann->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();

    CLI::App* bench = app.add_subcommand(
        "bench", "time the selected algorithms on one random instance");
    instance_flags(bench);
    algo_flags(bench);
    bench->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    bench->add_option("--trials", cfg.trials, "timing repetitions (median)")
        ->capture_default_str();

    CLI::App* det = app.add_subcommand(
        "det", "determinant of a sparse matrix (coordinate-list text file)");
    det->add_option("matrix", mat_path, "input matrix file")->required();
    det->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    det->add_flag("--oracle", oracle, "cross-check against the dense oracle");

    CLI::App* minpoly = app.add_subcommand(
        "minpoly", "minimal-polynomial ideal of a sparse matrix");
    minpoly->add_option("matrix", mat_path, "input matrix file")->required();
    minpoly->add_option("--seed", cfg.seed, "random seed")
        ->capture_default_str();
    minpoly->add_flag("--oracle", oracle,
                      "cross-check against all coordinate sequences");
    minpoly->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        cfg.algos = parse_algos(algo_names);
        if (gen->parsed()) return cmd_gen(cfg, seq_path, gb_path);
        if (ann->parsed()) return cmd_annihilate(cfg, seq_path, format);
        if (bench->parsed()) return cmd_bench(cfg);
        if (det->parsed()) return cmd_det(mat_path, cfg.seed, oracle);
        if (minpoly->parsed())
            return cmd_minpoly(mat_path, cfg.seed, oracle, format);
    } catch (const std::exception& ex) {
        std::cerr << "trunclin: " << ex.what() << '\n';
        return 1;
    }
    return 2;
}
