#include "qrep/purify.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace qrep::purify {

TwoQubitDensity m_gate(double phi) {
    const Eigen::Vector4cd pm = fock::psi_minus();
    const Eigen::Vector4cd fm = fock::phi_minus(phi);
    return pm * pm.adjoint() + fm * fm.adjoint();
}

std::pair<TwoQubitDensity, double> apply_m_gate(const TwoQubitDensity& rho,
                                                double phi) {
    const TwoQubitDensity M = m_gate(phi);
    TwoQubitDensity out = M * rho * M.adjoint();
    return {out, out.trace().real()};
}

PurificationTrack purify_track_init(double x, double y) {
    if (x * x + y * y > 1.0 + 1e-12)
        throw std::invalid_argument("purify_track_init: x^2 + y^2 must be <= 1");
    PurificationTrack t;
    t.f = (1.0 + x) / 2.0;
    t.g = (1.0 - x) / 2.0;
    t.h = std::nullopt;  // h_(1) = y^2/(2+2x^2) appears after the first round
    t.round = 0;
    t.seed_x = x;
    t.seed_y = y;
    return t;
}

PurificationTrack purify_step(const PurificationTrack& t) {
    const double denom = t.f * t.f + t.g * t.g;
    if (denom <= 0.0)
        throw std::domain_error("purify_step: degenerate f = g = 0");
    PurificationTrack n = t;
    n.round = t.round + 1;
    n.f = t.f * t.f / denom;
    n.g = t.g * t.g / denom;
    if (t.h.has_value()) {
        n.h = (*t.h) * (*t.h) / denom;
    } else {
        // first round: h_(1) = y^2 / (2 + 2 x^2) from the seed
        n.h = t.seed_y * t.seed_y / (2.0 + 2.0 * t.seed_x * t.seed_x);
    }
    const double pk = denom / 2.0;
    n.per_round_probs.push_back(pk);
    return n;
}

PurificationTrack purify_n(double x, double y, int n_rounds) {
    if (n_rounds < 0) throw std::invalid_argument("purify_n: N >= 0");
    PurificationTrack t = purify_track_init(x, y);
    for (int k = 0; k < n_rounds; ++k) t = purify_step(t);
    // P_Pur = prod_k P_(k)^{2^{N-1-k}} in log space
    t.log_overall = 0.0;
    const int N = static_cast<int>(t.per_round_probs.size());
    for (int k = 0; k < N; ++k)
        t.log_overall += std::ldexp(1.0, N - 1 - k) * std::log(t.per_round_probs[k]);
    return t;
}

TwoQubitDensity rotate_link_for_purification(const TwoQubitDensity& rho) {
    Eigen::Matrix2cd V;
    V << 1.0, 0.0, 0.0, cxd(0, -1);
    const Eigen::Matrix4cd U = Eigen::kroneckerProduct(V, V);
    return U * rho * U.adjoint();
}

namespace {

using Mat16 = Eigen::Matrix<cxd, 16, 16>;

// embed a two-qubit operator on qubits (qi, qj) of four (order A1,B1,A2,B2)
Mat16 embed(const Eigen::Matrix4cd& op, int qi, int qj) {
    Mat16 out = Mat16::Zero();
    for (int r = 0; r < 16; ++r) {
        const int rb[4] = {(r >> 3) & 1, (r >> 2) & 1, (r >> 1) & 1, r & 1};
        for (int c = 0; c < 16; ++c) {
            const int cb[4] = {(c >> 3) & 1, (c >> 2) & 1, (c >> 1) & 1, c & 1};
            bool diag = true;
            for (int q = 0; q < 4; ++q)
                if (q != qi && q != qj && rb[q] != cb[q]) diag = false;
            if (!diag) continue;
            out(r, c) = op(rb[qi] * 2 + rb[qj], cb[qi] * 2 + cb[qj]);
        }
    }
    return out;
}

}  // namespace

OracleStepResult purify_oracle_step(const TwoQubitDensity& pair1,
                                    const TwoQubitDensity& pair2) {
    // qubit order (A1, B1, A2, B2); pair1 on (A1,B1), pair2 on (A2,B2)
    Mat16 rho = Eigen::kroneckerProduct(pair1, pair2);

    // step I: local M on (A1,A2) and (B1,B2)
    const Mat16 MM = embed(m_gate(), 0, 2) * embed(m_gate(), 1, 3);
    rho = (MM * rho * MM.adjoint()).eval();
    const double p_gate = rho.trace().real();
    if (p_gate <= 0.0) return {TwoQubitDensity::Zero(), 0.0};

    // steps II-III: measure (A2,B2), apply U^i on A1 and U^{j+1} on B1 with
    // U^m = (|1><1| + i|0><0|) X^m, then average the outcomes
    Eigen::Matrix2cd S, X;
    S << cxd(0, 1), 0, 0, 1;
    X << 0, 1, 1, 0;
    TwoQubitDensity out = TwoQubitDensity::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            // conditional (A1,B1) block for measurement outcome |ij> on (A2,B2)
            TwoQubitDensity cond = TwoQubitDensity::Zero();
            for (int a1 = 0; a1 < 2; ++a1)
                for (int b1 = 0; b1 < 2; ++b1)
                    for (int a1p = 0; a1p < 2; ++a1p)
                        for (int b1p = 0; b1p < 2; ++b1p)
                            cond(a1 * 2 + b1, a1p * 2 + b1p) =
                                rho(a1 * 8 + b1 * 4 + i * 2 + j,
                                    a1p * 8 + b1p * 4 + i * 2 + j);
            if (cond.trace().real() <= 1e-300) continue;
            // exponent convention fixed by the printed one-round output
            // (the equivalent i/j+1 split differs from it by a global X (x) X)
            Eigen::Matrix2cd UA = S;
            if ((i + 1) % 2 == 1) UA = (S * X).eval();
            Eigen::Matrix2cd UB = S;
            if (j % 2 == 1) UB = (S * X).eval();
            const Eigen::Matrix4cd U = Eigen::kroneckerProduct(UA, UB);
            out += U * cond * U.adjoint();
        }
    const double tr = out.trace().real();
    return {out / tr, p_gate};
}

}  // namespace qrep::purify
