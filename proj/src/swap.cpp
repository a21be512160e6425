#include "qrep/swap.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace qrep::swapping {

const char* to_string(BellLabel l) {
    switch (l) {
        case BellLabel::PsiMinus: return "Psi-";
        case BellLabel::PhiMinus: return "Phi-";
        case BellLabel::PhiPlus: return "Phi+";
        case BellLabel::PsiPlus: return "Psi+";
    }
    return "?";
}

std::array<SwapOutcome, 4> bell_measurement_analytic(const dyn::BellCoeffs& c) {
    const double norm = std::norm(c.a_minus) + std::norm(c.a_plus) +
                        std::norm(c.b_minus) + std::norm(c.b_plus);
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument("bell_measurement_analytic: coefficients not normalized");
    std::array<SwapOutcome, 4> out;
    out[0] = {true, true, BellLabel::PsiMinus, cxd(-1.0, 0.0), std::norm(c.a_minus)};
    out[1] = {true, false, BellLabel::PhiMinus, cxd(0.0, 1.0), std::norm(c.b_minus)};
    out[2] = {false, true, BellLabel::PhiPlus, cxd(0.0, -1.0), std::norm(c.b_plus)};
    out[3] = {false, false, BellLabel::PsiPlus, cxd(1.0, 0.0), std::norm(c.a_plus)};
    return out;
}

namespace {

Eigen::Vector4cd label_state(BellLabel l) {
    switch (l) {
        case BellLabel::PsiMinus: return fock::psi_minus();
        case BellLabel::PhiMinus: return fock::phi_minus();
        case BellLabel::PhiPlus: return fock::phi_plus();
        case BellLabel::PsiPlus: return fock::psi_plus();
    }
    return fock::psi_minus();
}

BellLabel table_label(bool s1, bool s2) {
    if (s1 && s2) return BellLabel::PsiMinus;
    if (s1 && !s2) return BellLabel::PhiMinus;
    if (!s1 && s2) return BellLabel::PhiPlus;
    return BellLabel::PsiPlus;
}

// trace out the field of a pure (4, D) state restricted by a field projector
TwoQubitDensity project_and_trace(const fock::Vec& psi, const fock::Mat& proj,
                                  int dim, double* prob) {
    fock::Vec cut(4 * dim);
    for (int q = 0; q < 4; ++q)
        cut.segment(q * dim, dim) = proj * psi.segment(q * dim, dim);
    TwoQubitDensity rho = TwoQubitDensity::Zero();
    for (int q = 0; q < 4; ++q)
        for (int r = 0; r < 4; ++r) {
            cxd acc = 0.0;
            for (int n = 0; n < dim; ++n)
                acc += cut(q * dim + n) * std::conj(cut(r * dim + n));
            rho(q, r) = acc;
        }
    *prob = rho.trace().real();
    return rho;
}

}  // namespace

BellOracleResult bell_measurement_oracle(const Eigen::Vector4cd& input,
                                         double nbar, int dim, double tau) {
    const double gt = M_PI * tau * std::sqrt(4.0 * nbar + 2.0);
    const cxd alpha = std::sqrt(nbar);

    // cavity 1: field |alpha>, keep/reject the alpha-side half plane
    const fock::FockVector f1 = fock::make_coherent(alpha, dim, 1e-9);
    fock::Vec psi(4 * dim);
    for (int q = 0; q < 4; ++q)
        for (int n = 0; n < dim; ++n) psi(q * dim + n) = input(q) * f1.amps(n);
    dyn::tcm_evolve(psi.data(), dim, gt);

    const fock::FockOperator P1 =
        fock::quad_halfline_projector(0.0, fock::HalfLine::NonNegative, dim);
    const fock::FockOperator P2 =
        fock::quad_halfline_projector(M_PI / 2.0, fock::HalfLine::NonNegative, dim);
    const fock::Mat id = fock::Mat::Identity(dim, dim);
    const fock::FockVector f2 = fock::make_coherent(alpha * cxd(0, 1), dim);

    BellOracleResult res;
    int slot = 0;
    for (bool s1 : {true, false}) {
        double p1 = 0.0;
        const TwoQubitDensity rho_q =
            project_and_trace(psi, s1 ? P1.m : fock::Mat(id - P1.m), dim, &p1);
        // rank decomposition of the conditional two-qubit state
        Eigen::SelfAdjointEigenSolver<TwoQubitDensity> es(
            0.5 * (rho_q + rho_q.adjoint()));
        for (bool s2 : {true, false}) {
            BellOracleOutcome& o = res.outcomes[slot++];
            o.signal1 = s1;
            o.signal2 = s2;
            o.conditional = TwoQubitDensity::Zero();
            double p = 0.0;
            if (p1 > 1e-14) {
                for (int k = 0; k < 4; ++k) {
                    const double w = es.eigenvalues()(k);
                    if (w < 1e-14) continue;
                    fock::Vec branch(4 * dim);
                    for (int q = 0; q < 4; ++q)
                        for (int n = 0; n < dim; ++n)
                            branch(q * dim + n) = es.eigenvectors()(q, k) * f2.amps(n);
                    dyn::tcm_evolve(branch.data(), dim, gt);
                    double pb = 0.0;
                    const TwoQubitDensity c = project_and_trace(
                        branch, s2 ? P2.m : fock::Mat(id - P2.m), dim, &pb);
                    o.conditional += w * c;
                    p += w * pb;
                }
            }
            o.probability = p;
            if (p > 1e-14) {
                o.conditional /= p;
                const Eigen::Vector4cd target = label_state(table_label(s1, s2));
                o.fidelity = (target.adjoint() * o.conditional * target)(0).real();
            }
        }
    }

    // analytic comparison for the same input
    dyn::BellCoeffs c;
    c.a_minus = (fock::psi_minus().adjoint() * input)(0);
    c.a_plus = (fock::psi_plus().adjoint() * input)(0);
    c.b_minus = (fock::phi_minus().adjoint() * input)(0);
    c.b_plus = (fock::phi_plus().adjoint() * input)(0);
    const auto table = bell_measurement_analytic(c);
    double tv = 0.0;
    for (const auto& t : table)
        for (const auto& o : res.outcomes)
            if (o.signal1 == t.signal1 && o.signal2 == t.signal2)
                tv += std::abs(o.probability - t.probability);
    res.tv_distance = 0.5 * tv;
    return res;
}

double swap_fidelity_map(double F) {
    if (F < 0.5 - 1e-12 || F > 1.0 + 1e-12)
        throw std::domain_error("swap_fidelity_map: F must be in [1/2, 1]");
    return 1.0 - 2.0 * F * (1.0 - F);
}

double iterate_swaps(double F0, int k) {
    if (k < 0) throw std::invalid_argument("iterate_swaps: k >= 0");
    double F = F0;
    for (int i = 0; i < k; ++i) F = swap_fidelity_map(F);
    return F;
}

}  // namespace qrep::swapping
