#include "trunclin/driver.hpp"

#include "trunclin/hankel.hpp"
#include "trunclin/kurakin.hpp"
#include "trunclin/lazy_kurakin.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

namespace trunclin {

namespace {

double now_seconds()
{
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::vector<AnnPoly> annihilate_with(const Ring& R, const PartialSequence& S,
                                     Algo a, const RunConfig& cfg,
                                     u64 compression_seed, AlgoOutcome& out)
{
    switch (a) {
    case Algo::kurakin: {
        KurakinResult res = kurakin_annihilator(R, S);
        out.subiterations = res.subiterations;
        return std::move(res.polys);
    }
    case Algo::lazy: {
        LazyKurakinResult res = lazy_kurakin_annihilator(R, S);
        out.subiterations = res.subiterations;
        out.dstar = res.dstar();
        return reconstruct_full(R, res);
    }
    case Algo::pmbasis:
        return hankel_kernel_annihilator(R, S, S.e() / 2);
    case Algo::hankel_pm: {
        const BlockHankel H = build_hankel(R, S, S.e() / 2);
        CompressionConfig cc;
        cc.kappa = cfg.kappa ? cfg.kappa : R.fp.p;
        cc.seed = compression_seed;
        cc.verified = cfg.verify;
        const ApproximantBasis B =
            hankel_pm_basis(R.fp, R.d, H, staircase_shift(H.mu, R.d), cc);
        return basis_to_annihilators(R, B);
    }
    }
    throw std::logic_error("annihilate_with: unknown algorithm");
}

} // namespace

std::string algo_name(Algo a)
{
    switch (a) {
    case Algo::kurakin: return "kurakin";
    case Algo::lazy: return "lazy";
    case Algo::pmbasis: return "pmbasis";
    case Algo::hankel_pm: return "hankel-pm";
    }
    return "?";
}

std::optional<Algo> algo_from_name(std::string_view name)
{
    for (Algo a : kAllAlgos)
        if (name == algo_name(a)) return a;
    return std::nullopt;
}

std::vector<Algo> RunConfig::effective_algos() const
{
    if (!algos.empty()) return algos;
    return {kAllAlgos, kAllAlgos + 4};
}

Instance random_instance(const RunConfig& cfg)
{
    Rng rng(cfg.seed);
    Rng trng = rng.split(1);
    const std::size_t tmax = std::min<std::size_t>(cfg.delta, cfg.d);
    const std::size_t t = cfg.t ? cfg.t : 1 + trng.below(tmax);

    Instance inst{Ring(cfg.p, cfg.d), LexGB{}, PartialSequence{}};
    inst.gb = random_lazard_basis(cfg.p, cfg.d, cfg.delta, t,
                                  rng.split(2).next_u64());
    inst.S = sequence_from_gb(inst.gb, cfg.n, cfg.effective_e(),
                              rng.split(3).next_u64());
    return inst;
}

AlgoOutcome run_algorithm(const Ring& R, const PartialSequence& S, Algo a,
                          const RunConfig& cfg, u64 compression_seed)
{
    AlgoOutcome out;
    out.algo = a;
    const double t0 = now_seconds();
    const std::vector<AnnPoly> gens =
        annihilate_with(R, S, a, cfg, compression_seed, out);
    out.seconds = now_seconds() - t0;

    const GBExtract ext = minimal_gb_extract(R, gens);
    out.staircase = staircase_of(ext.gb);
    out.d_opt = ext.d_opt;
    return out;
}

RunReport annihilate_compare(const Ring& R, const PartialSequence& S,
                             const RunConfig& cfg)
{
    RunReport rep;
    rep.seed = cfg.seed;
    Rng rng(cfg.seed);
    Rng crng = rng.split(0xc0);
    for (Algo a : cfg.effective_algos())
        rep.outcomes.push_back(run_algorithm(R, S, a, cfg, crng.next_u64()));
    for (std::size_t i = 1; i < rep.outcomes.size(); ++i)
        if (!(rep.outcomes[i].staircase == rep.outcomes[0].staircase))
            rep.agree = false;
    return rep;
}

nlohmann::ordered_json report_to_json(const RunReport& rep)
{
    nlohmann::ordered_json j;
    j["seed"] = rep.seed;
    j["agree"] = rep.agree;
    j["outcomes"] = nlohmann::ordered_json::array();
    for (const auto& o : rep.outcomes) {
        nlohmann::ordered_json oj;
        oj["algo"] = algo_name(o.algo);
        oj["staircase"] = {{"dexp", o.staircase.dexp}, {"eexp", o.staircase.eexp}};
        oj["D"] = o.staircase.cardinality();
        oj["d_opt"] = o.d_opt;
        if (o.algo == Algo::lazy) oj["dstar"] = o.dstar;
        if (o.algo == Algo::kurakin || o.algo == Algo::lazy)
            oj["subiterations"] = o.subiterations;
        oj["seconds"] = o.seconds;
        j["outcomes"].push_back(std::move(oj));
    }
    return j;
}

std::string report_to_table(const RunReport& rep)
{
    std::ostringstream out;
    out << "seed " << rep.seed << "  agreement "
        << (rep.agree ? "yes" : "NO") << '\n';
    for (const auto& o : rep.outcomes) {
        out << "  " << algo_name(o.algo) << ": D=" << o.staircase.cardinality()
            << " d_opt=" << o.d_opt;
        if (o.algo == Algo::lazy) out << " dstar=" << o.dstar;
        out << " staircase={";
        for (std::size_t i = 0; i < o.staircase.dexp.size(); ++i) {
            if (i) out << ' ';
            out << '(' << o.staircase.dexp[i] << ',' << o.staircase.eexp[i] << ')';
        }
        out << "} " << o.seconds << "s\n";
    }
    return out.str();
}

BenchRow bench_point(const RunConfig& cfg)
{
    const Instance inst = random_instance(cfg);
    const unsigned trials = cfg.trials ? cfg.trials : 1;

    BenchRow row;
    row.n = cfg.n;
    row.d = cfg.d;
    row.delta = cfg.delta;

    Rng rng(cfg.seed);
    Rng crng = rng.split(0xbe);
    bool described = false;
    for (Algo a : cfg.effective_algos()) {
        std::vector<double> times;
        AlgoOutcome last;
        for (unsigned r = 0; r < trials; ++r) {
            last = run_algorithm(inst.R, inst.S, a, cfg, crng.next_u64());
            times.push_back(last.seconds);
        }
        std::sort(times.begin(), times.end());
        const double median = times[times.size() / 2];
        switch (a) {
        case Algo::kurakin: row.K = median; break;
        case Algo::lazy: row.LK = median; row.dstar = last.dstar; break;
        case Algo::pmbasis: row.PMB = median; break;
        case Algo::hankel_pm: row.HPM = median; break;
        }
        if (!described) {
            row.d_opt = last.d_opt;
            row.D_ratio = static_cast<double>(last.staircase.cardinality()) /
                          (static_cast<double>(cfg.d) * static_cast<double>(cfg.delta));
            described = true;
        }
    }
    return row;
}

std::string bench_csv_header()
{
    return "n,d,delta,d_opt,D_ratio,K,LK,dstar,PMB,HPM";
}

std::string bench_csv_row(const BenchRow& row)
{
    std::ostringstream out;
    const auto time_cell = [&](double s) {
        if (s < 0) return std::string("NA");
        std::ostringstream c;
        c << s;
        return c.str();
    };
    out << row.n << ',' << row.d << ',' << row.delta << ',' << row.d_opt << ','
        << row.D_ratio << ',' << time_cell(row.K) << ',' << time_cell(row.LK)
        << ',' << (row.dstar ? std::to_string(row.dstar) : std::string("NA"))
        << ',' << time_cell(row.PMB) << ',' << time_cell(row.HPM);
    return out.str();
}

} // namespace trunclin
