#include "qrep/entgen.hpp"

#include <cmath>
#include <sstream>

namespace qrep::entgen {

InteractionWindow interaction_window(const channel::ChannelParams& p, double nbar) {
    if (p.eta <= 0.0)
        throw std::domain_error("interaction_window: eta = 0 leaves no window");
    InteractionWindow w;
    w.gtau_min = 4.0 * std::sqrt(std::exp(p.gammaT) / p.eta);
    w.gtau_max = 50.0 * std::sqrt(nbar);
    w.empty = w.gtau_min >= w.gtau_max;
    return w;
}

LinkState link_state(const channel::ChannelParams& p, double nbar, double g_tau,
                     double phi_qubit) {
    LinkState s;
    s.nbar = nbar;
    s.g_tau = g_tau;
    s.phi_qubit = phi_qubit;
    s.params = p;
    const double phi = nbar > 0 ? g_tau / (2.0 * std::sqrt(nbar)) : 0.0;
    const double chi = p.chi();
    const double damp = std::exp(-nbar * (1.0 - std::cos(2.0 * phi)) * (1.0 - chi));
    const double angle = nbar * std::sin(2.0 * phi) * (1.0 - chi);
    s.x = damp * std::cos(angle);
    s.y = damp * std::sin(angle);
    if (p.eta > 0.0) {
        const auto w = interaction_window(p, nbar);
        s.gtau_in_window = !w.empty && g_tau >= w.gtau_min && g_tau < w.gtau_max;
    } else {
        s.gtau_in_window = false;
    }
    return s;
}

double success_probability_gen() { return 0.5; }

TwoQubitDensity link_density(double x, double y, double phi_qubit) {
    const Eigen::Vector4cd pm = fock::psi_minus();
    const Eigen::Vector4cd fm = fock::phi_minus(phi_qubit);
    TwoQubitDensity rho =
        0.5 * ((1.0 + x) * pm * pm.adjoint() + (1.0 - x) * fm * fm.adjoint() +
               cxd(0, 1) * y * fm * pm.adjoint() - cxd(0, 1) * y * pm * fm.adjoint());
    return rho;
}

XYExtract extract_xy(const TwoQubitDensity& rho, double phi_qubit,
                     double max_residual) {
    const Eigen::Vector4cd pm = fock::psi_minus();
    const Eigen::Vector4cd fm = fock::phi_minus(phi_qubit);
    const double p_pm = (pm.adjoint() * rho * pm)(0).real();
    const double p_fm = (fm.adjoint() * rho * fm)(0).real();
    const cxd coh = (fm.adjoint() * rho * pm)(0);
    XYExtract r;
    r.residual = 1.0 - p_pm - p_fm;
    if (r.residual > max_residual) {
        std::ostringstream os;
        os << "extract_xy: weight outside span is " << r.residual;
        throw std::invalid_argument(os.str());
    }
    r.x = p_pm - p_fm;
    r.y = 2.0 * coh.imag();
    return r;
}

namespace {

// Projection of a (2A x 2B x D) density matrix onto |target> in the field slot.
TwoQubitDensity project_field(const fock::Mat& rho, int dim,
                              const fock::FockVector& target, double* prob) {
    TwoQubitDensity q = TwoQubitDensity::Zero();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            cxd acc = 0.0;
            for (int n = 0; n < dim; ++n) {
                cxd row = 0.0;
                for (int m = 0; m < dim; ++m)
                    row += rho(a * dim + n, b * dim + m) * target.amps(m);
                acc += std::conj(target.amps(n)) * row;
            }
            q(a, b) = acc;
        }
    *prob = q.trace().real();
    return q;
}

}  // namespace

GenOracleResult generation_oracle(const channel::ChannelParams& p, double nbar,
                                  double g_tau, int dim, GenMode mode) {
    const cxd alpha = std::sqrt(nbar);
    const double chi = p.chi();

    // stage A: |0>_A (x) |alpha>
    fock::FockVector field = fock::make_coherent(alpha, dim, 1e-9);
    fock::Vec psi = fock::Vec::Zero(2 * dim);
    for (int n = 0; n < dim; ++n) psi(n) = field.amps(n);
    if (mode == GenMode::ExactJcm)
        dyn::jcm_evolve(psi.data(), 1, 1, dim, g_tau);
    else
        dyn::jcm_branch_evolve(psi.data(), 1, 1, dim, g_tau, nbar);

    // fiber + mirror as a pure-loss channel on the field
    fock::Mat rho = psi * psi.adjoint();
    channel::pure_loss_apply(rho, 2, dim, chi);

    // insert qubit B in |1>: order (A, B, field)
    fock::Mat rho3 = fock::Mat::Zero(4 * dim, 4 * dim);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            rho3.block((a * 2 + 1) * dim, (b * 2 + 1) * dim, dim, dim) =
                rho.block(a * dim, b * dim, dim, dim);

    // stage B on the (B, field) sector of every A row/column
    auto evolve_all = [&](fock::Mat& m) {
        for (int col = 0; col < m.cols(); ++col) {
            // column is a (2,2,D) vector; evolve the middle qubit
            if (mode == GenMode::ExactJcm)
                dyn::jcm_evolve(m.col(col).data(), 2, 1, dim, g_tau);
            else
                dyn::jcm_branch_evolve(m.col(col).data(), 2, 1, dim, g_tau, nbar);
        }
    };
    evolve_all(rho3);
    rho3 = rho3.adjoint().eval();
    evolve_all(rho3);
    rho3 = rho3.adjoint().eval();

    // postselective field measurement of |alpha_F>
    const fock::FockVector aF = fock::make_coherent(std::sqrt(chi) * alpha, dim);
    GenOracleResult r;
    double prob = 0.0;
    TwoQubitDensity q = project_field(rho3, dim, aF, &prob);
    if (prob < 1e-6) {
        std::ostringstream os;
        os << "generation_oracle: near-zero success probability " << prob;
        throw std::runtime_error(os.str());
    }
    r.success = prob;
    r.rho = q / prob;
    // symmetrize away numerical skew before extraction
    r.rho = 0.5 * (r.rho + r.rho.adjoint()).eval();
    const XYExtract xy = extract_xy(r.rho, 0.0, 1.0);
    r.x = xy.x;
    r.y = xy.y;
    r.residual = xy.residual;
    return r;
}

}  // namespace qrep::entgen
