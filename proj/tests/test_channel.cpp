#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrep/channel.hpp"

#include <cmath>

using namespace qrep;
using fock::cxd;

TEST_CASE("attenuate") {
    const auto lossless = channel::params_from_gammaT(0.0, 1.0);
    CHECK(std::abs(channel::attenuate(cxd(2.0, 1.0), lossless) - cxd(2.0, 1.0)) < 1e-15);

    const auto half = channel::params_from_gammaT(std::log(4.0), 1.0);
    CHECK(std::abs(channel::attenuate(std::sqrt(100.0), half) - 5.0) < 1e-12);

    // reference field amplitude: |alpha_F| = sqrt(nbar eta e^{-gammaT})
    const auto fig = channel::params_from_gammaT(0.0461, 0.8);
    const double aF = std::abs(channel::attenuate(std::sqrt(100.0), fig));
    CHECK(aF == doctest::Approx(std::sqrt(100.0 * 0.8 * std::exp(-0.0461))).epsilon(1e-12));
    CHECK(aF == doctest::Approx(8.74).epsilon(1e-3));
}

TEST_CASE("decoherence factor") {
    const auto lossless = channel::params_from_gammaT(0.0, 1.0);
    CHECK(std::abs(channel::decoherence_factor(lossless, 0.37, 100.0) - 1.0) < 1e-14);

    const auto lossy = channel::params_from_gammaT(0.2, 0.9);
    CHECK(std::abs(channel::decoherence_factor(lossy, 0.0, 100.0) - 1.0) < 1e-14);
    CHECK(std::abs(channel::decoherence_factor(lossy, 0.1, 100.0)) < 1.0);

    // the real part construction reproduces the x = 0.913 anchor
    const auto p03 = channel::params_from_gammaT(0.006908, 1.0);
    const cxd F = channel::decoherence_factor(p03, 0.2, 100.0);
    CHECK(F.real() == doctest::Approx(0.913).epsilon(0.002 / 0.913));
}

TEST_CASE("field overlap F*") {
    const auto p = channel::params_from_gammaT(0.0, 1.0);
    const auto f = channel::field_overlap_fstar(p, 4.0, 100.0);
    CHECK(f.approx == doctest::Approx(std::exp(-8.0)).epsilon(1e-12));
    CHECK(f.exact == doctest::Approx(std::exp(-100.0 * (1 - std::cos(0.4)))).epsilon(1e-12));
    // exact and small-angle branch differ by a few e-5 at this working point
    CHECK(std::abs(f.exact - f.approx) < 1e-4);

    const auto z = channel::field_overlap_fstar(p, 0.0, 100.0);
    CHECK(z.exact == doctest::Approx(1.0));
    CHECK(z.approx == doctest::Approx(1.0));
}

TEST_CASE("length and loss conversions") {
    CHECK(channel::length_from_gammaT(0.0) == 0.0);
    CHECK(channel::length_from_gammaT(0.006908) == doctest::Approx(0.300).epsilon(1e-4));
    CHECK(channel::gammaT_from_length(3.5) == doctest::Approx(0.0806).epsilon(1e-3));
    for (double gT : {0.001, 0.3, 2.0, 11.0})
        CHECK(channel::gammaT_from_length(channel::length_from_gammaT(gT)) ==
              doctest::Approx(gT).epsilon(1e-12));
    CHECK_THROWS_AS(channel::length_from_gammaT(-0.1), std::invalid_argument);
}

TEST_CASE("pure-loss Kraus channel") {
    const int dim = 140;
    const double nbar = 50.0;
    const auto p = channel::params_from_gammaT(0.1, 0.9);
    const double chi = p.chi();

    CHECK(channel::kraus_completeness_defect(chi, dim) < 1e-12);
    CHECK(channel::kraus_completeness_defect(1.0, dim) == 0.0);

    // transmissivity one is the identity
    const auto a = fock::make_coherent(std::sqrt(nbar), dim, 1e-8);
    fock::Mat rho = a.amps * a.amps.adjoint();
    fock::Mat copy = rho;
    channel::pure_loss_apply(copy, 1, dim, 1.0);
    CHECK((copy - rho).cwiseAbs().maxCoeff() == 0.0);

    // coherent states are a fixed family: |alpha> -> |sqrt(chi) alpha>
    channel::pure_loss_apply(rho, 1, dim, chi);
    CHECK(std::abs(rho.trace().real() - a.amps.squaredNorm()) < 1e-10);
    const auto out = fock::make_coherent(std::sqrt(chi * nbar), dim);
    const double fid = (out.amps.adjoint() * rho * out.amps)(0, 0).real() /
                       std::pow(out.amps.squaredNorm(), 2);
    CHECK(fid == doctest::Approx(1.0).epsilon(1e-8));

    // coherences reproduce F(T,eta,phi) exactly (closed-form equivalence)
    const double phi = 0.2;
    const auto fp = fock::make_coherent(std::sqrt(nbar) * std::polar(1.0, +phi), dim, 1e-8);
    const auto fm = fock::make_coherent(std::sqrt(nbar) * std::polar(1.0, -phi), dim, 1e-8);
    fock::Mat dyad = fm.amps * fp.amps.adjoint();
    channel::pure_loss_apply(dyad, 1, dim, chi);
    const auto gp = fock::make_coherent(std::sqrt(chi * nbar) * std::polar(1.0, +phi), dim);
    const auto gm = fock::make_coherent(std::sqrt(chi * nbar) * std::polar(1.0, -phi), dim);
    const cxd measured = (gm.amps.adjoint() * dyad * gp.amps)(0, 0) /
                         cxd(gm.amps.squaredNorm() * gp.amps.squaredNorm());
    const cxd F = channel::decoherence_factor(p, phi, nbar);
    CHECK(std::abs(measured - F) < 1e-6);

    // CompositeState wrapper acts on the trailing field subsystem
    fock::Mat joint = fock::Mat::Zero(2 * dim, 2 * dim);
    joint.block(0, 0, dim, dim) = a.amps * a.amps.adjoint();
    auto st = fock::make_mixed({2, dim}, joint);
    const auto damped = channel::amplitude_damping_channel(st, p);
    CHECK(std::abs(damped.trace() - st.trace()) < 1e-10);
}

TEST_CASE("channel parameter validation") {
    CHECK_THROWS_AS(channel::params_from_gammaT(0.1, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(channel::params_from_gammaT(-0.1, 0.5), std::invalid_argument);
    const auto p = channel::params_from_length(0.3, 1.0);
    CHECK(p.gammaT == doctest::Approx(0.0069078).epsilon(1e-4));
    CHECK(p.L0_km() == doctest::Approx(0.3).epsilon(1e-12));
}
