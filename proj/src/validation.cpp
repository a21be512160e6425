#include "qrep/validation.hpp"

#include "qrep/channel.hpp"
#include "qrep/dynamics.hpp"
#include "qrep/entgen.hpp"
#include "qrep/fock.hpp"
#include "qrep/purify.hpp"
#include "qrep/swap.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace qrep::validation {

using fock::cxd;

namespace {

Check make(const std::string& name, double measured, double threshold,
           bool larger_is_better = false, std::string note = "") {
    Check c;
    c.name = name;
    c.measured = measured;
    c.threshold = threshold;
    c.larger_is_better = larger_is_better;
    c.pass = larger_is_better ? measured >= threshold : measured <= threshold;
    c.note = std::move(note);
    return c;
}

double overlap(const fock::CompositeState& a, const fock::CompositeState& b) {
    const cxd ip = a.psi.adjoint() * b.psi;
    return std::abs(ip) / (a.psi.norm() * b.psi.norm());
}

}  // namespace

std::vector<Check> check_jcm(double nbar, double g_tau, int dim) {
    std::vector<Check> out;
    const dyn::JcmParams p = dyn::jcm_from_gtau(g_tau, nbar);
    Eigen::Vector2cd ground; ground << 1.0, 0.0;
    const fock::FockVector field = fock::make_coherent(std::sqrt(nbar), dim, 1e-9);
    const auto exact = dyn::jcm_exact(ground, field, p);
    const auto approx = dyn::jcm_approx(ground, std::sqrt(nbar), p).materialize(dim);
    out.push_back(make("jcm.exact_vs_approx_overlap", overlap(exact, approx), 0.99, true));
    out.push_back(make("jcm.norm_preservation", std::abs(exact.psi.norm() - 1.0), 1e-10));
    // excitation conservation: <n_phot + n_qubit> before and after
    double exc = 0.0;
    for (int q = 0; q < 2; ++q)
        for (int n = 0; n < dim; ++n) exc += (n + q) * std::norm(exact.psi(q * dim + n));
    out.push_back(make("jcm.excitation_conservation", std::abs(exc - nbar), 1e-8 * nbar));
    return out;
}

std::vector<Check> check_tcm(double nbar, int dim) {
    std::vector<Check> out;
    dyn::TcmParams p{1.0, nbar, 0.5};
    const fock::FockVector field = fock::make_coherent(std::sqrt(nbar), dim, 1e-9);
    // singlet sector pointwise invariant
    {
        const auto ev = dyn::tcm_exact(fock::psi_minus(), field, p);
        fock::Vec ref(4 * dim);
        for (int q = 0; q < 4; ++q)
            for (int n = 0; n < dim; ++n)
                ref(q * dim + n) = fock::psi_minus()(q) * field.amps(n);
        out.push_back(make("tcm.singlet_invariance",
                           (ev.psi - ref).cwiseAbs().maxCoeff(), 1e-12));
    }
    // Psi+ at tau = 1/2: field branches on the far side of phase space
    {
        const auto ev = dyn::tcm_exact(fock::psi_plus(), field, p);
        double ov = 0.0;
        for (int q = 0; q < 4; ++q) {
            cxd a = 0.0;
            for (int n = 0; n < dim; ++n)
                a += std::conj(field.amps(n)) * ev.psi(q * dim + n);
            ov += std::abs(a);
        }
        out.push_back(make("tcm.psiplus_field_displaced", ov, 0.02));
    }
    // three-branch reconstruction fidelity for the four Bell inputs
    const std::array<std::pair<const char*, Eigen::Vector4cd>, 4> inputs = {
        std::make_pair("psim", fock::psi_minus()), std::make_pair("psip", fock::psi_plus()),
        std::make_pair("phim", fock::phi_minus()), std::make_pair("phip", fock::phi_plus())};
    double worst = 1.0;
    for (const auto& [nm, in] : inputs) {
        dyn::BellCoeffs c;
        c.a_minus = (fock::psi_minus().adjoint() * in)(0);
        c.a_plus = (fock::psi_plus().adjoint() * in)(0);
        c.b_minus = (fock::phi_minus().adjoint() * in)(0);
        c.b_plus = (fock::phi_plus().adjoint() * in)(0);
        const auto approx = dyn::tcm_approx(c, p).materialize(dim);
        const auto exact = dyn::tcm_exact(in, field, p);
        worst = std::min(worst, overlap(exact, approx));
    }
    out.push_back(make("tcm.approx_fidelity_worst_bell", worst, 0.98, true));
    return out;
}

std::vector<Check> check_channel(double nbar, int dim) {
    std::vector<Check> out;
    const auto p = channel::params_from_gammaT(0.1, 0.9);
    const double chi = p.chi();
    out.push_back(make("channel.kraus_completeness",
                       channel::kraus_completeness_defect(chi, dim), 1e-12));
    // coherence of the Kraus output vs F(T,eta,phi) x attenuated overlap
    const double phi = 0.2;
    const cxd a_plus = std::sqrt(nbar) * std::polar(1.0, phi);
    const cxd a_minus = std::sqrt(nbar) * std::polar(1.0, -phi);
    const fock::FockVector fp = fock::make_coherent(a_plus, dim, 1e-10);
    const fock::FockVector fm = fock::make_coherent(a_minus, dim, 1e-10);
    fock::Mat rho = fm.amps * fp.amps.adjoint();  // |alpha e^{-i phi}><alpha e^{+i phi}|
    channel::pure_loss_apply(rho, 1, dim, chi);
    const fock::FockVector gp = fock::make_coherent(std::sqrt(chi) * a_plus, dim);
    const fock::FockVector gm = fock::make_coherent(std::sqrt(chi) * a_minus, dim);
    const cxd measured = (gm.amps.adjoint() * rho * gp.amps)(0, 0) /
                         cxd(gm.amps.squaredNorm() * gp.amps.squaredNorm());
    // E(|a+><a-|) = F |sqrt(chi) a+><sqrt(chi) a-| with F from the closed form
    const cxd F = channel::decoherence_factor(p, phi, nbar);
    out.push_back(make("channel.kraus_vs_closed_form_coherence",
                       std::abs(measured - F), 1e-6));
    // fixed family: coherent in, attenuated coherent out
    fock::Mat rho2 = fp.amps * fp.amps.adjoint();
    channel::pure_loss_apply(rho2, 1, dim, chi);
    const double fid = ((gp.amps.adjoint() * rho2 * gp.amps)(0, 0).real()) /
                       std::pow(gp.amps.squaredNorm(), 2);
    out.push_back(make("channel.coherent_fixed_family", std::abs(fid - 1.0), 1e-8));
    return out;
}

std::vector<Check> check_entgen(double nbar, double g_tau, int dim) {
    std::vector<Check> out;
    double worst_branch = 0.0, worst_exact = 0.0, worst_p = 0.0;
    for (double eta : {1.0, 0.85, 0.7}) {
        for (int i = 0; i < 5; ++i) {
            const double gT = 0.15 * i / 4.0;
            const auto p = channel::params_from_gammaT(gT, eta);
            const auto ls = entgen::link_state(p, nbar, g_tau);
            const auto br = entgen::generation_oracle(p, nbar, g_tau, dim,
                                                      entgen::GenMode::CoherentBranch);
            worst_branch = std::max({worst_branch, std::abs(br.x - ls.x),
                                     std::abs(br.y - ls.y)});
            const auto fstar = channel::field_overlap_fstar(p, g_tau, nbar);
            if (fstar.exact <= 1e-3)
                worst_p = std::max(worst_p, std::abs(br.success - 0.5));
            const auto ex = entgen::generation_oracle(p, nbar, g_tau, dim,
                                                      entgen::GenMode::ExactJcm);
            worst_exact = std::max({worst_exact, std::abs(ex.x - ls.x),
                                    std::abs(ex.y - ls.y)});
        }
    }
    out.push_back(make("entgen.branch_oracle_xy_grid", worst_branch, 0.02));
    out.push_back(make("entgen.success_prob_dev_where_fstar_small", worst_p, 0.01));
    out.push_back(make(
        "entgen.exact_oracle_xy_grid", worst_exact, 0.25, false,
        "exact pipeline exposes the O(varphi) branch-alignment gap of the closed "
        "form; reported, bounded loosely"));
    // fidelity of the exact pipeline's lossless state with the ideal Bell pair
    {
        const auto p = channel::params_from_gammaT(0.0, 1.0);
        const auto ex =
            entgen::generation_oracle(p, nbar, g_tau, dim, entgen::GenMode::ExactJcm);
        const Eigen::Vector4cd pm = fock::psi_minus();
        const double fid = (pm.adjoint() * ex.rho * pm)(0).real();
        out.push_back(make("entgen.exact_lossless_bell_fidelity", fid, 0.98, true));
        out.push_back(make("entgen.exact_lossless_success",
                           std::abs(ex.success - 0.5), 0.01));
    }
    return out;
}

std::vector<Check> check_purify(unsigned seed) {
    std::vector<Check> out;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_c = 0.0, worst_p = 0.0;
    for (int it = 0; it < 20; ++it) {
        double x, y;
        do {
            x = u(rng);
            y = u(rng);
        } while (x * x + y * y > 1.0 || std::abs(x) < 1e-3);
        const auto rho = purify::rotate_link_for_purification(entgen::link_density(x, y));
        const auto res = purify::purify_oracle_step(rho, rho);
        const double f = (fock::psi_minus().adjoint() * res.rho * fock::psi_minus())(0).real();
        const double g = (fock::psi_plus().adjoint() * res.rho * fock::psi_plus())(0).real();
        const double h = (fock::psi_minus().adjoint() * res.rho * fock::psi_plus())(0).real();
        const double fp = (1 + x) * (1 + x) / (2 + 2 * x * x);
        const double gp = (1 - x) * (1 - x) / (2 + 2 * x * x);
        const double hp = y * y / (2 + 2 * x * x);
        worst_c = std::max({worst_c, std::abs(f - fp), std::abs(g - gp), std::abs(h - hp)});
        worst_p = std::max(worst_p, std::abs(res.success - (1 + x * x) / 4.0));
    }
    out.push_back(make("purify.oracle_vs_printed_coefficients", worst_c, 1e-10));
    out.push_back(make("purify.oracle_vs_printed_success", worst_p, 1e-12));
    return out;
}

std::vector<Check> check_swap(double nbar, int dim) {
    std::vector<Check> out;
    const std::array<std::pair<const char*, Eigen::Vector4cd>, 4> inputs = {
        std::make_pair("psim", fock::psi_minus()), std::make_pair("phim", fock::phi_minus()),
        std::make_pair("phip", fock::phi_plus()), std::make_pair("psip", fock::psi_plus())};
    for (const auto& [nm, in] : inputs) {
        const auto res = swapping::bell_measurement_oracle(in, nbar, dim);
        out.push_back(make(std::string("swap.tv_") + nm, res.tv_distance, 0.05));
    }
    // sanity anchors for the Psi- input
    const auto res = swapping::bell_measurement_oracle(fock::psi_minus(), nbar, dim);
    out.push_back(make("swap.psim_signal_signal_prob", res.outcomes[0].probability,
                       0.98, true));
    out.push_back(make("swap.psim_conditional_fidelity", res.outcomes[0].fidelity,
                       0.98, true));
    // three-node composition: maximally mixed B1B2-equivalent input
    {
        double tv = 0.0;
        std::array<double, 4> acc{0, 0, 0, 0};
        for (const auto& [nm, in] : inputs) {
            const auto r = swapping::bell_measurement_oracle(in, nbar, dim);
            for (int k = 0; k < 4; ++k) acc[k] += 0.25 * r.outcomes[k].probability;
        }
        for (int k = 0; k < 4; ++k) tv += std::abs(acc[k] - 0.25);
        out.push_back(make("swap.three_node_uniform_tv", 0.5 * tv, 0.05));
    }
    return out;
}

std::vector<Check> check_homodyne(int dim) {
    std::vector<Check> out;
    const auto P = fock::quad_halfline_projector(0.0, fock::HalfLine::NonNegative, dim);
    const auto Pneg = fock::quad_halfline_projector(0.0, fock::HalfLine::Negative, dim);
    out.push_back(make("homodyne.idempotence",
                       (P.m * P.m - P.m).cwiseAbs().maxCoeff(), 1e-10));
    out.push_back(make("homodyne.self_adjoint",
                       (P.m - P.m.adjoint()).cwiseAbs().maxCoeff(), 1e-10));
    out.push_back(make("homodyne.completeness",
                       (P.m + Pneg.m - fock::Mat::Identity(dim, dim)).cwiseAbs().maxCoeff(),
                       1e-10));
    out.push_back(make("homodyne.vacuum_halved", std::abs(P.m(0, 0).real() - 0.5), 1e-10));
    // quadrature element oracle on the low block (both discretizations of the
    // same operator; agreement limited by the truncation, not the quadrature)
    const int probe = std::min(dim / 2, 60);
    const auto M = fock::halfline_quadrature_matrix(probe + 20, 1e-9);
    double worst = 0.0;
    for (int m = 0; m < probe; ++m)
        for (int n = 0; n < probe; ++n)
            worst = std::max(worst, std::abs(P.m(m, n).real() - M(m, n)));
    out.push_back(make("homodyne.spectral_vs_quadrature_low_block", worst, 0.02));
    // coherent state recovery and alpha_pm rejection
    const fock::FockVector a = fock::make_coherent(cxd(0, 10.0), dim, 1e-6);
    const auto P2 = fock::quad_halfline_projector(M_PI / 2, fock::HalfLine::NonNegative, dim);
    out.push_back(make("homodyne.coherent_recovery",
                       (P2.m * a.amps).norm(), 0.999, true));
    const fock::FockVector ap = dyn::alpha_pm_state(100.0, 0.5, dim, +1);
    out.push_back(make("homodyne.alpha_pm_residual", (P.m * ap.amps).norm(), 0.01));
    return out;
}

std::vector<Check> check_all() {
    std::vector<Check> all;
    for (auto f : {check_jcm(100.0, 4.0, 256), check_tcm(100.0, 230),
                   check_channel(50.0, 140), check_entgen(100.0, 4.0, 208),
                   check_purify(12345u), check_swap(100.0, 230), check_homodyne(210)})
        all.insert(all.end(), f.begin(), f.end());
    return all;
}

}  // namespace qrep::validation
