#include "qrep/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace qrep::dyn {

namespace {

void check_cutoff(const FockVector& field) {
    const double occ = (field.dim >= 2)
                           ? std::norm(field.amps(field.dim - 1)) +
                                 std::norm(field.amps(field.dim - 2))
                           : std::norm(field.amps(field.dim - 1));
    if (occ > fock::tolerances().cutoff_occupancy) {
        std::ostringstream os;
        os << "fock cutoff overflow: top-level occupancy " << occ;
        throw std::domain_error(os.str());
    }
}

}  // namespace

void jcm_evolve(cxd* a, int lead, int mid, int dim, double g_t) {
    // layout: a[(((l*2)+q)*mid + m)*dim + n]
    std::vector<cxd> v0(dim), v1(dim);
    for (int l = 0; l < lead; ++l)
        for (int m = 0; m < mid; ++m) {
            cxd* q0 = a + ((l * 2 + 0) * mid + m) * static_cast<long>(dim);
            cxd* q1 = a + ((l * 2 + 1) * mid + m) * static_cast<long>(dim);
            for (int n = 0; n < dim; ++n) { v0[n] = q0[n]; v1[n] = q1[n]; }
            // U|0,n> = cos(g sqrt(n) t)|0,n> - i sin(g sqrt(n) t)|1,n-1>
            // U|1,n> = cos(g sqrt(n+1) t)|1,n> - i sin(g sqrt(n+1) t)|0,n+1>
            for (int n = 0; n < dim; ++n) {
                const double rn = g_t * std::sqrt(static_cast<double>(n));
                const double rp = g_t * std::sqrt(n + 1.0);
                cxd o0 = std::cos(rn) * v0[n];
                if (n > 0) o0 += cxd(0, -1) * std::sin(rn) * v1[n - 1];
                cxd o1 = std::cos(rp) * v1[n];
                if (n + 1 < dim) o1 += cxd(0, -1) * std::sin(rp) * v0[n + 1];
                q0[n] = o0;
                q1[n] = o1;
            }
        }
}

void jcm_branch_evolve(cxd* a, int lead, int mid, int dim, double g_tau, double nbar) {
    const double varphi = nbar > 0 ? g_tau / (2.0 * std::sqrt(nbar)) : 0.0;
    const cxd sm = std::polar(1.0, -g_tau * std::sqrt(nbar) / 2.0);
    const cxd sp = std::conj(sm);
    std::vector<cxd> v0(dim), v1(dim);
    for (int l = 0; l < lead; ++l)
        for (int m = 0; m < mid; ++m) {
            cxd* q0 = a + ((l * 2 + 0) * mid + m) * static_cast<long>(dim);
            cxd* q1 = a + ((l * 2 + 1) * mid + m) * static_cast<long>(dim);
            for (int n = 0; n < dim; ++n) { v0[n] = q0[n]; v1[n] = q1[n]; }
            for (int n = 0; n < dim; ++n) {
                // |+><+| (x) e^{-i varphi n} branch and |-><-| (x) e^{+i varphi n}
                const cxd rotm = std::polar(1.0, -varphi * n);
                const cxd rotp = std::polar(1.0, +varphi * n);
                const cxd plus = 0.5 * (v0[n] + v1[n]);
                const cxd minus = 0.5 * (v0[n] - v1[n]);
                const cxd bm = sm * rotm * plus;
                const cxd bp = sp * rotp * minus;
                q0[n] = bm + bp;
                q1[n] = bm - bp;
            }
        }
}

void tcm_evolve(cxd* a, int dim, double g_t) {
    // basis (4, D): |00>,|01>,|10>,|11>; H = g [a S+ + a^dag S-].
    // Invariant singlet S = (|01>-|10>)/sqrt2; triplet blocks per excitation E:
    // {|00,E>, |T0,E-1>, |11,E-2>} with couplings sqrt(2E), sqrt(2(E-1)).
    const double s2 = 1.0 / std::sqrt(2.0);
    std::vector<cxd> t0(dim), sg(dim), v00(dim), v11(dim);
    for (int n = 0; n < dim; ++n) {
        t0[n] = s2 * (a[1 * dim + n] + a[2 * dim + n]);
        sg[n] = s2 * (a[1 * dim + n] - a[2 * dim + n]);
        v00[n] = a[0 * dim + n];
        v11[n] = a[3 * dim + n];
    }
    std::vector<cxd> o00(dim, cxd(0)), oT0(dim, cxd(0)), o11(dim, cxd(0));
    for (int E = 0; E <= dim + 1; ++E) {
        const bool has00 = E <= dim - 1;
        const bool hasT0 = E >= 1 && E - 1 <= dim - 1;
        const bool has11 = E >= 2 && E - 2 <= dim - 1;
        if (!has00 && !hasT0 && !has11) continue;
        const cxd c00 = has00 ? v00[E] : cxd(0);
        const cxd cT0 = hasT0 ? t0[E - 1] : cxd(0);
        const cxd c11 = has11 ? v11[E - 2] : cxd(0);
        const double k1 = std::sqrt(2.0 * E);
        const double k2 = E >= 1 ? std::sqrt(2.0 * (E - 1)) : 0.0;
        if (has00 && hasT0 && has11) {
            // [[0,k1,0],[k1,0,k2],[0,k2,0]]: eigenvalues 0, +-mu;
            // dark (k2,0,-k1)/mu, bright (k1, +-mu, k2)/(mu sqrt2)
            const double mu = std::sqrt(k1 * k1 + k2 * k2);
            const double u1 = k1 / mu, u2 = k2 / mu;
            const cxd dark_amp = u2 * c00 - u1 * c11;
            const cxd bp_amp = (k1 * c00 + mu * cT0 + k2 * c11) / (mu * std::sqrt(2.0));
            const cxd bm_amp = (k1 * c00 - mu * cT0 + k2 * c11) / (mu * std::sqrt(2.0));
            const cxd rp = std::polar(1.0, -mu * g_t) * bp_amp;
            const cxd rm = std::polar(1.0, +mu * g_t) * bm_amp;
            o00[E] = u2 * dark_amp + (k1 / (mu * std::sqrt(2.0))) * (rp + rm);
            oT0[E - 1] = (rp - rm) / std::sqrt(2.0);
            o11[E - 2] = -u1 * dark_amp + (k2 / (mu * std::sqrt(2.0))) * (rp + rm);
        } else if (has00 && hasT0) {  // E == 1 when dim == 1, or E == 1 generally
            const double c = std::cos(k1 * g_t), s = std::sin(k1 * g_t);
            o00[E] = c * c00 - cxd(0, 1) * s * cT0;
            oT0[E - 1] = c * cT0 - cxd(0, 1) * s * c00;
        } else if (hasT0 && has11) {  // E == dim (top clipped block)
            const double c = std::cos(k2 * g_t), s = std::sin(k2 * g_t);
            oT0[E - 1] = c * cT0 - cxd(0, 1) * s * c11;
            o11[E - 2] = c * c11 - cxd(0, 1) * s * cT0;
        } else {
            if (has00) o00[E] = c00;
            if (hasT0) oT0[E - 1] = cT0;
            if (has11) o11[E - 2] = c11;
        }
    }
    for (int n = 0; n < dim; ++n) {
        a[0 * dim + n] = o00[n];
        a[3 * dim + n] = o11[n];
        a[1 * dim + n] = s2 * (oT0[n] + sg[n]);
        a[2 * dim + n] = s2 * (oT0[n] - sg[n]);
    }
}

CompositeState jcm_exact(const Eigen::Vector2cd& qubit, const FockVector& field,
                         const JcmParams& p) {
    check_cutoff(field);
    const int D = field.dim;
    fock::Vec psi(2 * D);
    for (int q = 0; q < 2; ++q)
        for (int n = 0; n < D; ++n) psi(q * D + n) = qubit(q) * field.amps(n);
    jcm_evolve(psi.data(), 1, 1, D, p.g_tau());
    auto out = fock::make_pure({2, D}, std::move(psi));
    // output-side cutoff guard
    double occ = 0.0;
    for (int q = 0; q < 2; ++q)
        occ += std::norm(out.psi(q * D + D - 1)) + std::norm(out.psi(q * D + D - 2));
    if (occ > fock::tolerances().cutoff_occupancy)
        throw std::domain_error("fock cutoff overflow after JCM evolution");
    return out;
}

JcmBranches jcm_approx(const Eigen::Vector2cd& qubit, cxd field_amp,
                       const JcmParams& p) {
    JcmBranches out;
    out.varphi = p.varphi();
    out.regime_ok = p.below_revival();
    const double th = std::arg(field_amp == cxd(0) ? cxd(1) : field_amp);
    Eigen::Vector2cd plus, minus;
    plus << 1.0, std::polar(1.0, th);
    minus << 1.0, -std::polar(1.0, th);
    plus /= std::sqrt(2.0);
    minus /= std::sqrt(2.0);
    const cxd a_p = plus.adjoint() * qubit;
    const cxd a_m = minus.adjoint() * qubit;
    out.branch[0] = JcmBranch{a_p * plus, field_amp * std::polar(1.0, -out.varphi),
                              std::polar(1.0, -p.g_tau() * std::sqrt(p.nbar) / 2.0)};
    out.branch[1] = JcmBranch{a_m * minus, field_amp * std::polar(1.0, +out.varphi),
                              std::polar(1.0, +p.g_tau() * std::sqrt(p.nbar) / 2.0)};
    return out;
}

CompositeState JcmBranches::materialize(int dim) const {
    fock::Vec psi = fock::Vec::Zero(2 * dim);
    for (const auto& b : branch) {
        const FockVector f = fock::make_coherent(b.alpha, dim);
        for (int q = 0; q < 2; ++q)
            for (int n = 0; n < dim; ++n)
                psi(q * dim + n) += b.phase * b.qubit(q) * f.amps(n);
    }
    return fock::make_pure({2, dim}, std::move(psi));
}

CompositeState tcm_exact(const Eigen::Vector4cd& two_qubits,
                         const FockVector& field, const TcmParams& p) {
    check_cutoff(field);
    const int D = field.dim;
    fock::Vec psi(4 * D);
    for (int q = 0; q < 4; ++q)
        for (int n = 0; n < D; ++n) psi(q * D + n) = two_qubits(q) * field.amps(n);
    tcm_evolve(psi.data(), D, p.g_t() / p.g);
    double occ = 0.0;
    for (int q = 0; q < 4; ++q)
        occ += std::norm(psi(q * D + D - 1)) + std::norm(psi(q * D + D - 2));
    if (occ > fock::tolerances().cutoff_occupancy)
        throw std::domain_error("fock cutoff overflow after TCM evolution");
    return fock::make_pure({4, D}, std::move(psi));
}

FockVector alpha_pm_state(double nbar, double tau_dimless, int dim, int sign) {
    FockVector v = fock::make_coherent(std::sqrt(nbar), dim);
    for (int n = 0; n < dim; ++n) {
        const double d = n - nbar;
        const double th = 2.0 * M_PI * tau_dimless *
                          (nbar + 1.0 + n - d * d / (4.0 * nbar + 2.0));
        v.amps(n) *= std::polar(1.0, sign >= 0 ? th : -th);
    }
    return v;
}

TcmBranches tcm_approx(const BellCoeffs& c, const TcmParams& p) {
    TcmBranches out;
    out.tau_dimless = p.tau_dimless;
    out.nbar = p.nbar;
    out.collapse_regime = p.collapse_regime();
    const double th = 2.0 * M_PI * p.tau_dimless;
    // branch 0: (a- Psi- + b- Phi-) with |alpha>
    out.branch[0].field = TcmField::Alpha;
    out.branch[0].qubits = c.a_minus * fock::psi_minus() + c.b_minus * fock::phi_minus();
    // branch 1: (a+ - b+)/2 (Psi+ - Phi+_{2 pi tau}) with |alpha_+>
    out.branch[1].field = TcmField::AlphaPlus;
    out.branch[1].qubits =
        (c.a_plus - c.b_plus) / 2.0 * (fock::psi_plus() - fock::phi_plus(th));
    // branch 2: (a+ + b+)/2 (Psi+ + Phi+_{-2 pi tau}) with |alpha_->
    out.branch[2].field = TcmField::AlphaMinus;
    out.branch[2].qubits =
        (c.a_plus + c.b_plus) / 2.0 * (fock::psi_plus() + fock::phi_plus(-th));
    return out;
}

CompositeState TcmBranches::materialize(int dim) const {
    fock::Vec psi = fock::Vec::Zero(4 * dim);
    for (const auto& b : branch) {
        FockVector f;
        switch (b.field) {
            case TcmField::Alpha: f = fock::make_coherent(std::sqrt(nbar), dim); break;
            case TcmField::AlphaPlus: f = alpha_pm_state(nbar, tau_dimless, dim, +1); break;
            case TcmField::AlphaMinus: f = alpha_pm_state(nbar, tau_dimless, dim, -1); break;
        }
        for (int q = 0; q < 4; ++q)
            for (int n = 0; n < dim; ++n)
                psi(q * dim + n) += b.qubits(q) * f.amps(n);
    }
    return fock::make_pure({4, dim}, std::move(psi));
}

}  // namespace qrep::dyn
