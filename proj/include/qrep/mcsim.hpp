// Monte Carlo discrete-event simulation of the chain: per-link geometric
// attempts with memories (max of n geometrics per end-to-end delivery),
// deterministic parallel swap rounds with the fidelity map, and stochastic
// endpoint re-purification. Validates A_n, P and R against the closed forms.
#pragma once

#include "qrep/rates.hpp"

#include <cstdint>

namespace qrep::mc {

/// Counter-based stream: every trial derives its own generator state from
/// (seed, trial index), so results are identical for any worker partition.
struct SplitMix64 {
    std::uint64_t s;
    explicit SplitMix64(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double u01() { return (next() >> 11) * 0x1.0p-53; }
};

/// Geometric attempt count on {1, 2, ...} with success probability P.
std::uint64_t geometric_sample(double P, SplitMix64& rng);

struct McSummary {
    std::uint64_t trials = 0;
    std::uint64_t deliveries = 0;        // end-to-end raw pairs produced
    std::uint64_t trees = 0;             // endpoint purification attempts
    double A_hat = 0.0;                  // mean of per-delivery max attempts
    double A_stderr = 0.0;
    double R_hat = 0.0;                  // pairs/s, 1 / mean trial time
    double R_stderr = 0.0;
    double F_hat = 1.0;                  // deterministic given the fidelity map
    double mean_pairs_used = 0.0;        // end-to-end pairs per final pair
    double mean_time_s = 0.0;
    // closed-form counterparts for convenience
    double A_n_closed = 0.0;
    double R_closed = 0.0;
    // model assumptions recorded in the output
    bool assumes_unbounded_parallel_generation = true;
    bool atoms_per_belt_exceeded = false;  // 2^N > 19 flag
};

/// Runs `trials` independent end-to-end deliveries of a near-maximal pair.
/// Fixed seed gives bit-identical summaries for any worker count (integer
/// accumulators only, order-independent reduction).
McSummary simulate_chain(const rates::RepeaterConfig& config, std::uint64_t trials,
                         std::uint64_t seed, int workers = 1);

}  // namespace qrep::mc
