// Fiber-plus-mirror channel acting on coherent branches: amplitude
// attenuation, mirror transmittance eta, the decoherence factor F(T,eta,phi),
// length <-> loss conversions, and a Kraus pure-loss oracle channel.
#pragma once

#include "qrep/fock.hpp"

namespace qrep::channel {

using fock::cxd;

struct ChannelParams {
    double gammaT = 0.0;   // accumulated fiber loss exponent, gamma * T
    double eta = 1.0;      // mirror transmittance in [0, 1]
    double c_fiber = 2e8;  // signal speed in fiber, m/s

    double L0_km() const;  // derived from gammaT by the documented conversion
    /// Channel transmissivity chi = eta * e^{-gammaT}.
    double chi() const { return eta * std::exp(-gammaT); }
};

ChannelParams params_from_gammaT(double gammaT, double eta = 1.0);
ChannelParams params_from_length(double L0_km, double eta = 1.0);

/// sqrt(eta) e^{-gammaT/2} alpha (interaction-picture propagation phases are
/// handled by the dynamics module).
cxd attenuate(cxd alpha, const ChannelParams& p);

/// F(T,eta,phi) = exp{-nbar (1 - e^{-2 i phi}) (1 - eta e^{-gammaT})}.
/// The real/imaginary decomposition of this factor yields the link x and y.
cxd decoherence_factor(const ChannelParams& p, double phi, double nbar);

struct Fstar {
    double exact = 1.0;   // |exp{-eta e^{-gammaT} nbar (1 - e^{-2 i phi})}|
    double approx = 1.0;  // e^{-eta e^{-gammaT} g^2 tau^2 / 2}
};

/// Residual overlap of the field components to discriminate, exact modulus
/// and the small-angle approximation (valid for g tau << sqrt(nbar)).
Fstar field_overlap_fstar(const ChannelParams& p, double g_tau, double nbar);

/// L0 = 20 (gammaT) / (0.2 log 10) km, with "log" read as the natural
/// logarithm; this reading reproduces the reference x(0.3 km) = 0.913 anchor,
/// whereas the dB-power reading would halve the distances.
double length_from_gammaT(double gammaT);
double gammaT_from_length(double L0_km);

/// Pure-loss channel of transmissivity chi on the trailing field index of a
/// density matrix whose rows/cols factor as (lead x dim). In place.
void pure_loss_apply(fock::Mat& rho, int lead, int dim, double chi);

/// Kraus pure-loss channel with transmissivity eta e^{-gammaT} applied to the
/// designated field subsystem (must be the last one).
fock::CompositeState amplitude_damping_channel(const fock::CompositeState& s,
                                               const ChannelParams& p);

/// Completeness defect max|sum_k A_k^dag A_k - 1| of the truncated Kraus set.
double kraus_completeness_defect(double chi, int dim);

}  // namespace qrep::channel
