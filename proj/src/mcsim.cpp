#include "qrep/mcsim.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace qrep::mc {

std::uint64_t geometric_sample(double P, SplitMix64& rng) {
    if (P <= 0.0 || P > 1.0) throw std::domain_error("geometric_sample: P in (0,1]");
    if (P == 1.0) return 1;
    const double u = rng.u01();
    // inverse CDF; u == 0 maps to the largest representable count
    if (u <= 0.0) return UINT64_MAX / 2;
    const double k = std::ceil(std::log(u) / std::log1p(-P));
    return k < 1.0 ? 1 : static_cast<std::uint64_t>(k);
}

namespace {

struct Accum {
    // all integers: partition-independent reduction stays exact
    std::uint64_t deliveries = 0;
    std::uint64_t trees = 0;
    unsigned __int128 sum_attempts = 0;      // per-delivery max attempts
    unsigned __int128 sum_attempts_sq = 0;
    unsigned __int128 sum_trial_a = 0;       // per-trial total attempts
    unsigned __int128 sum_trial_a_sq = 0;
    unsigned __int128 sum_trial_ad = 0;      // cross term attempts*deliveries
    unsigned __int128 sum_trial_d = 0;
    unsigned __int128 sum_trial_d_sq = 0;

    void merge(const Accum& o) {
        deliveries += o.deliveries;
        trees += o.trees;
        sum_attempts += o.sum_attempts;
        sum_attempts_sq += o.sum_attempts_sq;
        sum_trial_a += o.sum_trial_a;
        sum_trial_a_sq += o.sum_trial_a_sq;
        sum_trial_ad += o.sum_trial_ad;
        sum_trial_d += o.sum_trial_d;
        sum_trial_d_sq += o.sum_trial_d_sq;
    }
};

constexpr std::uint64_t kStreamSalt = 0x5851f42d4c957f2dULL;

}  // namespace

McSummary simulate_chain(const rates::RepeaterConfig& config, std::uint64_t trials,
                         std::uint64_t seed, int workers) {
    if (trials < 1) throw std::invalid_argument("simulate_chain: trials >= 1");
    if (workers < 1) workers = 1;

    // closed-form scaffolding shared with the rates module so that any
    // discrepancy isolates modeling differences, not constants
    const rates::RateReport rr = rates::repeater_rate(config);
    const double P = std::exp(rr.log_P);
    const double T_link = rr.T_link;
    const double T_swap = rr.T_swap;
    const int n = config.n_links;
    const int j = rr.j_extra;

    // per-round acceptance probabilities of the endpoint purification
    std::vector<double> round_probs;
    if (j > 0) {
        purify::PurificationTrack t =
            purify::purify_track_init(2.0 * rr.F_after_swaps - 1.0, 0.0);
        for (int k = 0; k < j; ++k) {
            t = purify::purify_step(t);
            round_probs.push_back(t.per_round_probs.back());
        }
    }
    const std::uint64_t pairs_per_tree = 1ULL << j;

    auto run_range = [&](std::uint64_t lo, std::uint64_t hi, Accum& acc) {
        for (std::uint64_t trial = lo; trial < hi; ++trial) {
            SplitMix64 rng(seed ^ (kStreamSalt * (trial + 1)));
            std::uint64_t trial_attempts = 0;
            std::uint64_t trial_deliveries = 0;
            bool done = false;
            while (!done) {
                ++acc.trees;
                // one endpoint purification attempt consumes 2^j deliveries
                for (std::uint64_t d = 0; d < pairs_per_tree; ++d) {
                    std::uint64_t worst = 0;
                    for (int link = 0; link < n; ++link)
                        worst = std::max(worst, geometric_sample(P, rng));
                    acc.sum_attempts += worst;
                    acc.sum_attempts_sq += static_cast<unsigned __int128>(worst) * worst;
                    ++acc.deliveries;
                    trial_attempts += worst;
                    ++trial_deliveries;
                }
                // tree of purification gates; all gates evaluated (full
                // commitment of the 2^j pairs, as in the N_bar bookkeeping)
                bool ok = true;
                for (int round = 0; round < j; ++round) {
                    const std::uint64_t gates = 1ULL << (j - 1 - round);
                    for (std::uint64_t gidx = 0; gidx < gates; ++gidx)
                        if (rng.u01() >= round_probs[round]) ok = false;
                }
                done = ok;
            }
            acc.sum_trial_a += trial_attempts;
            acc.sum_trial_a_sq +=
                static_cast<unsigned __int128>(trial_attempts) * trial_attempts;
            acc.sum_trial_ad += static_cast<unsigned __int128>(trial_attempts) *
                                trial_deliveries;
            acc.sum_trial_d += trial_deliveries;
            acc.sum_trial_d_sq +=
                static_cast<unsigned __int128>(trial_deliveries) * trial_deliveries;
        }
    };

    std::vector<Accum> parts(workers);
    if (workers == 1) {
        run_range(0, trials, parts[0]);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t lo = trials * w / workers;
            const std::uint64_t hi = trials * (w + 1) / workers;
            pool.emplace_back([&, lo, hi, w] { run_range(lo, hi, parts[w]); });
        }
        for (auto& t : pool) t.join();
    }
    Accum acc;
    for (const auto& p : parts) acc.merge(p);

    McSummary s;
    s.trials = trials;
    s.deliveries = acc.deliveries;
    s.trees = acc.trees;
    const double nd = static_cast<double>(acc.deliveries);
    const double sa = static_cast<double>(acc.sum_attempts);
    const double sa2 = static_cast<double>(acc.sum_attempts_sq);
    s.A_hat = sa / nd;
    s.A_stderr = std::sqrt(std::max(0.0, sa2 / nd - s.A_hat * s.A_hat) / nd);
    // per-trial time t = T_link * a + T_swap * d
    const double nt = static_cast<double>(trials);
    const double ma = static_cast<double>(acc.sum_trial_a) / nt;
    const double md = static_cast<double>(acc.sum_trial_d) / nt;
    const double mean_t = T_link * ma + T_swap * md;
    const double ex2 = (T_link * T_link * static_cast<double>(acc.sum_trial_a_sq) +
                        2.0 * T_link * T_swap * static_cast<double>(acc.sum_trial_ad) +
                        T_swap * T_swap * static_cast<double>(acc.sum_trial_d_sq)) /
                       nt;
    const double var_t = std::max(0.0, ex2 - mean_t * mean_t);
    const double se_t = std::sqrt(var_t / nt);
    s.mean_time_s = mean_t;
    s.R_hat = 1.0 / mean_t;
    s.R_stderr = se_t / (mean_t * mean_t);
    s.F_hat = rr.F_final;
    s.mean_pairs_used = static_cast<double>(acc.sum_trial_d) / nt;
    s.A_n_closed = rr.A_n;
    s.R_closed = rr.R;
    s.atoms_per_belt_exceeded = (1ULL << config.N_rounds) > 19;
    return s;
}

}  // namespace qrep::mc
