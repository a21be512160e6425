// Resonant qubit-field propagators in the interaction picture: the exact
// Jaynes-Cummings-Paul solution, its coherent-branch approximation, and the
// two-qubit Tavis-Cummings solution with its three-branch approximation.
// Free e^{-i omega_c ...} phases are bookkeeping only and never enter the
// numerics; omega_c is carried for reference.
#pragma once

#include "qrep/fock.hpp"

#include <array>

namespace qrep::dyn {

using fock::cxd;
using fock::CompositeState;
using fock::FockVector;

struct JcmParams {
    double g = 1.0;      // coupling (rad/s)
    double tau = 0.0;    // interaction time (s)
    double nbar = 0.0;   // mean photon number of the driving coherent state
    double omega_c = 0.0;  // mode frequency, tracked symbolically only

    double g_tau() const { return g * tau; }
    /// Branch separation angle of the coherent-state approximation.
    double varphi() const { return nbar > 0 ? g_tau() / (2.0 * std::sqrt(nbar)) : 0.0; }
    /// Revival-avoidance condition, enforced in the g*tau << 50 sqrt(nbar) form.
    bool below_revival() const { return g_tau() < 50.0 * std::sqrt(nbar); }
    /// The equivalent g*tau/sqrt(nbar) << 16 pi reading, reported not enforced.
    bool below_revival_alt() const {
        return nbar > 0 && g_tau() / std::sqrt(nbar) < 16.0 * M_PI;
    }
};

inline JcmParams jcm_from_gtau(double g_tau, double nbar) {
    return JcmParams{1.0, g_tau, nbar, 0.0};
}

struct TcmParams {
    double g = 1.0;
    double nbar = 0.0;
    double tau_dimless = 0.0;  // gt / (pi sqrt(4 nbar + 2))

    double g_t() const { return M_PI * tau_dimless * std::sqrt(4.0 * nbar + 2.0); }
    bool collapse_regime() const { return tau_dimless >= 0.25 && tau_dimless <= 0.75; }
};

// ---------------------------------------------------------------------------
// low-level in-place propagators; state viewed as (lead, 2 or 4, mid, D)

/// Exact resonant JCM: |0,n> -> cos(g sqrt(n) t)|0,n> - i sin(..)|1,n-1>,
/// |1,n> -> cos(g sqrt(n+1) t)|1,n> - i sin(..)|0,n+1>.
void jcm_evolve(cxd* a, int lead, int mid, int dim, double g_t);

/// Coherent-branch JCM propagator: the unitary
///   e^{-i g sqrt(nbar) tau / 2} |+><+| R(-varphi) + e^{+i ...} |-><-| R(+varphi)
/// with |pm> = (|0> pm |1>)/sqrt(2) and R(theta) = e^{i theta n_hat}. This is
/// the operator form of the two-branch solution for real-axis coherent fields.
void jcm_branch_evolve(cxd* a, int lead, int mid, int dim, double g_tau, double nbar);

/// Exact resonant symmetric TCM on (4, D): singlet sector invariant, triplet
/// sectors diagonalized per excitation block (3x3 closed form).
void tcm_evolve(cxd* a, int dim, double g_t);

// ---------------------------------------------------------------------------

/// Exact JCM on qubit (x) field. Errors on cutoff overflow (top two Fock
/// levels of the input above the configured occupancy).
CompositeState jcm_exact(const Eigen::Vector2cd& qubit, const FockVector& field,
                         const JcmParams& p);

struct JcmBranch {
    Eigen::Vector2cd qubit;  // overlap-weighted branch, as printed (norm 1/2 each
                             // for basis-state inputs)
    cxd alpha;               // coherent amplitude alpha e^{-/+ i varphi}
    cxd phase;               // scalar e^{-/+ i g sqrt(nbar) tau / 2}
};

struct JcmBranches {
    std::array<JcmBranch, 2> branch;  // [0] = "-", [1] = "+"
    double varphi = 0.0;
    bool regime_ok = true;

    /// Dense reconstruction for fidelity checks against jcm_exact.
    CompositeState materialize(int dim) const;
};

/// Two-branch coherent-state approximation of the JCM evolution.
JcmBranches jcm_approx(const Eigen::Vector2cd& qubit, cxd field_amp,
                       const JcmParams& p);

/// Exact TCM on two qubits (x) field.
CompositeState tcm_exact(const Eigen::Vector4cd& two_qubits,
                         const FockVector& field, const TcmParams& p);

/// Field state |alpha_pm>: coherent amplitudes with the quadratic phase
/// e^{pm i 2 pi tau [nbar + 1 + n - (n - nbar)^2 / (4 nbar + 2)]}.
FockVector alpha_pm_state(double nbar, double tau_dimless, int dim, int sign);

struct BellCoeffs {
    cxd a_minus, a_plus, b_minus, b_plus;
};

enum class TcmField { Alpha, AlphaPlus, AlphaMinus };

struct TcmBranch {
    Eigen::Vector4cd qubits;
    TcmField field;
};

struct TcmBranches {
    std::array<TcmBranch, 3> branch;
    double tau_dimless = 0.0;
    double nbar = 0.0;
    bool collapse_regime = true;

    CompositeState materialize(int dim) const;
};

/// Three-branch approximation of the TCM evolution of
/// (a- |Psi-> + a+ |Psi+> + b- |Phi-> + b+ |Phi+>) |alpha>, alpha = sqrt(nbar).
TcmBranches tcm_approx(const BellCoeffs& c, const TcmParams& p);

}  // namespace qrep::dyn
