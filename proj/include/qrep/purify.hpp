// Recurrence entanglement purification: the postselected two-qubit operation
// M, the (f, g, h) coefficient recurrences with per-round and overall success
// probabilities, and a brute-force four-qubit oracle for one round.
#pragma once

#include "qrep/fock.hpp"

#include <optional>
#include <vector>

namespace qrep::purify {

using fock::cxd;
using fock::TwoQubitDensity;

/// Coefficients of the purified state and the success-probability record.
struct PurificationTrack {
    double f = 1.0;
    double g = 0.0;
    std::optional<double> h;  // defined from round 1 on
    int round = 0;
    std::vector<double> per_round_probs;
    double log_overall = 0.0;  // log P_Pur, accumulated with 2^{N-1-k} weights
    double seed_x = 1.0;       // (x, y) the round-0 track was built from;
    double seed_y = 0.0;       // h_(1) needs y

    double overall_prob() const { return std::exp(log_overall); }
    /// max{f, g}; `direction_defined` is false on the f = g tie line.
    double fidelity() const { return std::max(f, g); }
    bool direction_defined() const { return f != g; }
};

/// M = |Psi-><Psi-| + |Phi-_phi><Phi-_phi| (rank-2, non-unitary).
TwoQubitDensity m_gate(double phi = 0.0);

/// Applies M rho M^dag; returns the unnormalized result and the success
/// probability Tr{M^dag M rho}.
std::pair<TwoQubitDensity, double> apply_m_gate(const TwoQubitDensity& rho,
                                                double phi = 0.0);

/// Round-0 track: f = (1+x)/2, g = (1-x)/2; h is defined by the first step
/// as y^2/(2+2x^2).
PurificationTrack purify_track_init(double x, double y);

/// One recurrence round: f' = f^2/(f^2+g^2) etc., P = (f^2+g^2)/2 appended.
PurificationTrack purify_step(const PurificationTrack& t);

/// N rounds from the (x, y) seed; overall probability accumulated in
/// log space with the 2^{N-1-k} exponents.
PurificationTrack purify_n(double x, double y, int n_rounds);

/// Local rotation (applied at both nodes) folded into the protocol:
/// |Phi-> -> |Phi+>, |Psi-> invariant up to a global phase. Used to express
/// generated pairs in the purification basis.
TwoQubitDensity rotate_link_for_purification(const TwoQubitDensity& rho);

struct OracleStepResult {
    TwoQubitDensity rho;
    double success = 0.0;
};

/// Brute-force 16x16 implementation of one purification round on two pairs in
/// the purification basis (steps I-III: local M at both nodes, measurement of
/// the second pair, outcome-dependent single-qubit corrections, average over
/// outcomes). Zero-probability branches are skipped.
OracleStepResult purify_oracle_step(const TwoQubitDensity& pair1,
                                    const TwoQubitDensity& pair2);

}  // namespace qrep::purify
