/*
 * Shared plumbing for the command-line tool and the benchmark harness:
 * instance generation from one seed, dispatch over the four annihilator
 * algorithms, staircase cross-comparison, and timing.
 *
 * All randomness flows from a single seed through Rng::split so every report
 * is reproducible; wall times are medians over an odd number of runs of a
 * monotonic clock.
 */
#pragma once

#include "trunclin/bivariate.hpp"
#include "trunclin/rng.hpp"
#include "trunclin/sequence.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trunclin {

enum class Algo { kurakin, lazy, pmbasis, hankel_pm };

inline constexpr Algo kAllAlgos[] = {Algo::kurakin, Algo::lazy, Algo::pmbasis,
                                     Algo::hankel_pm};

std::string algo_name(Algo a);
std::optional<Algo> algo_from_name(std::string_view name);

struct RunConfig {
    u64 p = 9001;
    unsigned d = 2;
    std::size_t delta = 4;
    std::size_t n = 1;
    std::size_t e = 0;            // 0 means the default 2*delta
    std::size_t t = 0;            // staircase corners; 0 means random feasible
    std::vector<Algo> algos;      // empty means all four
    u64 seed = 0;
    unsigned trials = 3;          // timing repetitions (median)
    u64 kappa = 0;                // compression sample-set size; 0 means p
    bool verify = false;          // majority vote for the compressed variant

    std::size_t effective_e() const { return e ? e : 2 * delta; }
    std::vector<Algo> effective_algos() const;
};

struct Instance {
    Ring R;
    LexGB gb;
    PartialSequence S;
};

// random Lazard basis + sequence it cancels, all derived from cfg.seed
Instance random_instance(const RunConfig& cfg);

struct AlgoOutcome {
    Algo algo = Algo::kurakin;
    Staircase staircase;
    std::size_t d_opt = 0;       // corners of the extracted minimal basis
    std::size_t dstar = 0;       // tracked monomials (lazy variant only)
    u64 subiterations = 0;       // cancellation steps (Kurakin family only)
    double seconds = 0.0;
};

// one timed run of one algorithm; compression_seed feeds the Monte Carlo
// variant only
AlgoOutcome run_algorithm(const Ring& R, const PartialSequence& S, Algo a,
                          const RunConfig& cfg, u64 compression_seed);

struct RunReport {
    u64 seed = 0;
    std::vector<AlgoOutcome> outcomes;
    bool agree = true;           // pairwise staircase agreement
};

RunReport annihilate_compare(const Ring& R, const PartialSequence& S,
                             const RunConfig& cfg);

nlohmann::ordered_json report_to_json(const RunReport& rep);
std::string report_to_table(const RunReport& rep);

// ---- benchmark rows --------------------------------------------------------

struct BenchRow {
    std::size_t n = 0;
    unsigned d = 0;
    std::size_t delta = 0;
    std::size_t d_opt = 0;
    double D_ratio = 0.0;        // staircase cardinality over d*delta
    std::size_t dstar = 0;       // 0 when the lazy variant did not run
    double K = -1.0;             // median seconds; negative means not run
    double LK = -1.0;
    double PMB = -1.0;
    double HPM = -1.0;
};

// generates the instance for cfg and times the selected algorithms,
// median over cfg.trials runs each
BenchRow bench_point(const RunConfig& cfg);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);

} // namespace trunclin
