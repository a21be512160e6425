#include "qrep/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qrep::channel {

double length_from_gammaT(double gammaT) {
    if (gammaT < 0) throw std::invalid_argument("length_from_gammaT: gammaT >= 0");
    return 20.0 * gammaT / (0.2 * std::log(10.0));
}

double gammaT_from_length(double L0_km) {
    if (L0_km < 0) throw std::invalid_argument("gammaT_from_length: L0 >= 0");
    return L0_km * 0.2 * std::log(10.0) / 20.0;
}

double ChannelParams::L0_km() const { return length_from_gammaT(gammaT); }

ChannelParams params_from_gammaT(double gammaT, double eta) {
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("eta must be in [0,1]");
    if (gammaT < 0.0) throw std::invalid_argument("gammaT must be >= 0");
    return ChannelParams{gammaT, eta, 2e8};
}

ChannelParams params_from_length(double L0_km, double eta) {
    return params_from_gammaT(gammaT_from_length(L0_km), eta);
}

cxd attenuate(cxd alpha, const ChannelParams& p) {
    return std::sqrt(p.eta) * std::exp(-p.gammaT / 2.0) * alpha;
}

cxd decoherence_factor(const ChannelParams& p, double phi, double nbar) {
    const cxd one_minus = 1.0 - std::polar(1.0, -2.0 * phi);
    return std::exp(-nbar * one_minus * (1.0 - p.chi()));
}

Fstar field_overlap_fstar(const ChannelParams& p, double g_tau, double nbar) {
    Fstar f;
    const double phi = nbar > 0 ? g_tau / (2.0 * std::sqrt(nbar)) : 0.0;
    const cxd one_minus = 1.0 - std::polar(1.0, -2.0 * phi);
    f.exact = std::abs(std::exp(-p.chi() * nbar * one_minus));
    f.approx = std::exp(-p.chi() * g_tau * g_tau / 2.0);
    return f;
}

namespace {

// Kraus amplitudes c_k[n] = sqrt(C(n,k) chi^{n-k} (1-chi)^k); A_k|n> = c_k[n]|n-k>.
// Filled in log space.
void kraus_column(int k, int dim, double logchi, double log1m, std::vector<double>& c) {
    c.assign(dim, 0.0);
    double lbinom = 0.0;  // log C(n,k) built incrementally over n
    for (int n = k; n < dim; ++n) {
        if (n > k) lbinom += std::log(static_cast<double>(n)) -
                             std::log(static_cast<double>(n - k));
        const double lw = 0.5 * (lbinom + (n - k) * logchi + k * log1m);
        c[n] = std::exp(lw);
    }
}

}  // namespace

void pure_loss_apply(fock::Mat& rho, int lead, int dim, double chi) {
    if (chi >= 1.0) return;
    if (chi < 0.0) throw std::invalid_argument("pure_loss_apply: chi in [0,1]");
    const double logchi = chi > 0 ? std::log(chi) : -1e300;
    const double log1m = std::log1p(-chi);
    fock::Mat out = fock::Mat::Zero(rho.rows(), rho.cols());
    std::vector<double> c;
    for (int k = 0; k < dim; ++k) {
        kraus_column(k, dim, logchi, log1m, c);
        double wsum = 0.0;
        for (int n = k; n < dim; ++n) wsum += c[n] * c[n];
        if (wsum < 1e-18) continue;
        for (int li = 0; li < lead; ++li)
            for (int lj = 0; lj < lead; ++lj)
                for (int n = k; n < dim; ++n)
                    for (int m = k; m < dim; ++m)
                        out(li * dim + n - k, lj * dim + m - k) +=
                            c[n] * c[m] * rho(li * dim + n, lj * dim + m);
    }
    rho = std::move(out);
}

fock::CompositeState amplitude_damping_channel(const fock::CompositeState& s,
                                               const ChannelParams& p) {
    const int dim = s.dims.back();
    const int lead = s.total_dim() / dim;
    fock::Mat rho = s.density();
    pure_loss_apply(rho, lead, dim, p.chi());
    return fock::make_mixed(s.dims, std::move(rho));
}

double kraus_completeness_defect(double chi, int dim) {
    if (chi >= 1.0) return 0.0;
    const double logchi = chi > 0 ? std::log(chi) : -1e300;
    const double log1m = std::log1p(-chi);
    std::vector<double> tot(dim, 0.0);
    std::vector<double> c;
    for (int k = 0; k < dim; ++k) {
        kraus_column(k, dim, logchi, log1m, c);
        for (int n = k; n < dim; ++n) tot[n] += c[n] * c[n];
    }
    double worst = 0.0;
    for (int n = 0; n < dim; ++n) worst = std::max(worst, std::abs(tot[n] - 1.0));
    return worst;
}

}  // namespace qrep::channel
