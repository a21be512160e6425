// Closed-form repeater economics: the timing model with its short-distance
// floors, average attempt counts, endpoint re-purification overhead, the
// final pair rate, and the repeaterless benchmark.
#pragma once

#include "qrep/channel.hpp"
#include "qrep/entgen.hpp"
#include "qrep/purify.hpp"

#include <optional>
#include <string>

namespace qrep::rates {

/// Cavity-QED hardware working point. Gamma (spontaneous decay) is carried
/// for the record but never used: the model assumes nondecaying qubits.
struct HardwarePreset {
    std::string name;
    double g = 2 * M_PI * 1.0e6;       // rad/s
    double kappa = 2 * M_PI * 0.05e6;  // rad/s
    double Gamma = 2 * M_PI * 11.5e6;  // rad/s, unused (no decay modeled)
    double T_det = 0.0;                // s; defaults to 1/kappa when 0
    double t_det() const { return T_det > 0 ? T_det : 1.0 / kappa; }
};

/// Named presets: casabone (default; its kappa sets the 10 us floors),
/// ritter, reimann, neuzner.
HardwarePreset hardware_preset(const std::string& name);

struct RepeaterConfig {
    int n_links = 1;
    double L0_km = 0.3;
    int N_rounds = 1;           // purification depth per link
    double nbar = 100.0;
    double g_tau = 4.0;
    double eta = 1.0;
    double eps = 0.001;         // near-maximal entanglement threshold
    double c_fiber = 2e8;       // m/s
    HardwarePreset hw = hardware_preset("casabone");

    // Nested-chain construction: the chain described by inner_* is treated as
    // one elementary link of length inner_n_links * inner_L0_km.
    bool super_link = false;
    int inner_n_links = 60;
    double inner_L0_km = 0.3;
    int inner_N_rounds = 1;

    double elementary_length_km() const {
        return super_link ? inner_n_links * inner_L0_km : L0_km;
    }
    double total_km() const { return n_links * elementary_length_km(); }
};

/// T1 = 1/g + 2/kappa + L0/c + T_det + L0/c; a flat 10 us floor applies
/// below 2 km, where cavity reinitialization dominates.
double t1(const RepeaterConfig& c);

/// T2 = 1/g + T_det + L0/c with the same floor rule.
double t2(const RepeaterConfig& c);

/// T_link = 2^N T1 + (2^N - 1) T2.
double t_link(const RepeaterConfig& c);

/// T_swap = ceil(log2 n) (sqrt(2)/g + 2 T_det + L0/c); below 2 km each of the
/// ceil(log2 n) rounds is floored at 10 us. Zero for n = 1.
double t_swap(const RepeaterConfig& c);

/// Expected number of rounds until all n parallel links have succeeded at
/// least once (expected maximum of n geometric variables). Stable series
///   A_n = sum_{k>=0} [1 - (1 - q^k)^n],  q = 1 - P,
/// exact for all n. Throws std::domain_error for P <= 0.
double attempts_avg(int n, double P);

/// The alternating binomial form of the same quantity, for cross-checks at
/// small n (catastrophic cancellation beyond a few dozen links).
double attempts_avg_binomial(int n, double P);

struct EndpointOverhead {
    int j_extra = 0;
    double n_bar = 1.0;      // 2^j / P_Pur(j)
    double p_pur = 1.0;
    double F_final = 1.0;    // fidelity reached by the j extra rounds
};

/// Converts the post-swap fidelity to the track seed x = 2F - 1 (y = 0),
/// finds the smallest j with max{f_j, g_j} > 1 - eps, and the average pair
/// consumption 2^j / P_Pur. Throws std::domain_error for F <= 1/2.
EndpointOverhead endpoint_overhead(double F_after_swaps, double eps);

struct RateReport {
    double T1 = 0, T2 = 0, T_link = 0, T_swap = 0;  // seconds
    double A_n = 0;
    int j_extra = 0;
    double N_bar = 1.0;
    double R = 0.0;               // pairs per second
    double benchmark_rate = 0.0;  // repeaterless bound at the total distance
    double F_final = 1.0;
    // provenance
    double x = 1.0, y = 0.0;
    double F_link_achieved = 1.0;  // max(f_N, g_N) of the link track
    double F_link_used = 1.0;      // swap input: clamped up to 1 - eps (see docs)
    double F_after_swaps = 1.0;
    double log_P = 0.0;            // log of the per-link success probability
    int swap_rounds = 0;
    // super-link provenance (set when config.super_link)
    double inner_R = 0.0;
    double inner_P_gen = 0.0;      // effective superlink generation probability
    double inner_x = 0.0;
};

/// Composes P = P_Gen^{2^N} P_Pur, A_n, the timing model, swap degradation
/// and endpoint overhead into R = 1 / (N_bar (T_link A_n + T_swap)).
RateReport repeater_rate(const RepeaterConfig& c);

/// Repeaterless benchmark -log2(1 - chi) c / (2 L). Throws for chi = 1.
double repeaterless_bound(double chi, double L_km, double c_fiber = 2e8);

/// Benchmark at the config's total distance (chi = eta e^{-gamma T(L)}).
double repeaterless_bound_at(const RepeaterConfig& c);

}  // namespace qrep::rates
