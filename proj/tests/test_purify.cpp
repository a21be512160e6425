#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrep/entgen.hpp"
#include "qrep/purify.hpp"

#include <cmath>
#include <random>

using namespace qrep;
using fock::cxd;

TEST_CASE("m gate") {
    const auto M = purify::m_gate();
    const Eigen::Vector4cd pm = fock::psi_minus();
    const Eigen::Vector4cd pp = fock::psi_plus();

    // eigenvector: |Psi-> passes untouched with probability one
    auto [r1, p1] = purify::apply_m_gate(fock::TwoQubitDensity(pm * pm.adjoint()));
    CHECK(p1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((r1 - pm * pm.adjoint()).cwiseAbs().maxCoeff() < 1e-14);

    // orthogonal complement is annihilated
    auto [r2, p2] = purify::apply_m_gate(fock::TwoQubitDensity(pp * pp.adjoint()));
    CHECK(p2 < 1e-14);
    CHECK(r2.cwiseAbs().maxCoeff() < 1e-14);

    // maximally mixed: trace of the rank-2 projector over 4 dimensions
    auto [r3, p3] = purify::apply_m_gate(fock::TwoQubitDensity::Identity() / 4.0);
    CHECK(p3 == doctest::Approx(0.5).epsilon(1e-14));
    (void)r3;
    CHECK((M * M - M).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("track init") {
    const auto a = purify::purify_track_init(0.5, 0.0);
    CHECK(a.f == doctest::Approx(0.75));
    CHECK(a.g == doctest::Approx(0.25));
    CHECK(!a.h.has_value());
    CHECK(a.round == 0);

    const auto b = purify::purify_track_init(0.0, 0.3);
    CHECK(b.f == doctest::Approx(0.5));
    CHECK(b.g == doctest::Approx(0.5));

    const auto c = purify::purify_track_init(0.913, 0.0);
    CHECK(c.f == doctest::Approx(0.9565).epsilon(1e-12));

    CHECK_THROWS_AS(purify::purify_track_init(0.9, 0.9), std::invalid_argument);
}

TEST_CASE("recurrence step") {
    auto t = purify::purify_track_init(0.5, 0.0);
    t = purify::purify_step(t);
    CHECK(t.f == doctest::Approx(0.9).epsilon(1e-14));
    CHECK(t.per_round_probs.back() == doctest::Approx(0.3125).epsilon(1e-14));
    CHECK(*t.h == doctest::Approx(0.0));

    // fixed point f = g
    auto fp = purify::purify_track_init(0.0, 0.0);
    fp = purify::purify_step(fp);
    CHECK(fp.f == doctest::Approx(0.5));
    CHECK(fp.g == doctest::Approx(0.5));

    // absorbing state f = 1
    auto ab = purify::purify_track_init(1.0, 0.0);
    ab = purify::purify_step(ab);
    CHECK(ab.f == doctest::Approx(1.0));
    CHECK(ab.per_round_probs.back() == doctest::Approx(0.5));
}

TEST_CASE("purify_n") {
    const auto t2 = purify::purify_n(0.5, 0.0, 2);
    CHECK(t2.f == doctest::Approx(0.98780488).epsilon(1e-7));
    CHECK(t2.overall_prob() == doctest::Approx(0.3125 * 0.3125 * 0.41).epsilon(1e-12));
    CHECK(t2.overall_prob() == doctest::Approx(0.04003906).epsilon(1e-6));

    // N = 4 at the low-x end lands in the 1e-8..1e-9 decade
    const auto t4 = purify::purify_n(0.05, 0.0, 4);
    CHECK(t4.overall_prob() >= 1e-9);
    CHECK(t4.overall_prob() <= 1e-8);

    // x = 0 stays on the fixed line for any depth
    const auto t0 = purify::purify_n(0.0, 0.0, 6);
    CHECK(t0.f == doctest::Approx(0.5));
    CHECK(t0.g == doctest::Approx(0.5));

    // log-space accumulation equals the direct product where representable
    const auto t3 = purify::purify_n(0.3, 0.1, 3);
    double direct = 1.0;
    const int N = 3;
    for (int k = 0; k < N; ++k)
        direct *= std::pow(t3.per_round_probs[k], std::ldexp(1.0, N - 1 - k));
    CHECK(t3.overall_prob() == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("h tends to zero, f monotone toward the dominant state") {
    auto t = purify::purify_track_init(0.4, 0.55);
    double prev_f = t.f;
    double prev_h = 1.0;
    for (int k = 0; k < 8; ++k) {
        t = purify::purify_step(t);
        CHECK(t.f >= prev_f);
        if (t.h.has_value() && k > 0) {
            CHECK(*t.h <= prev_h + 1e-15);
            prev_h = *t.h;
        }
        prev_f = t.f;
    }
    CHECK(t.f > 1.0 - 1e-6);
    CHECK(*t.h < 1e-8);
    CHECK(t.fidelity() == t.f);
    CHECK(t.direction_defined());
}

TEST_CASE("oracle step reproduces the printed round") {
    // two copies of the generated state: printed weights and success
    const double x = 0.3, y = 0.4;
    const auto rho = purify::rotate_link_for_purification(entgen::link_density(x, y));
    const auto res = purify::purify_oracle_step(rho, rho);
    CHECK(res.success == doctest::Approx((1 + x * x) / 4.0).epsilon(1e-13));
    const double f = (fock::psi_minus().adjoint() * res.rho * fock::psi_minus())(0).real();
    const double g = (fock::psi_plus().adjoint() * res.rho * fock::psi_plus())(0).real();
    const cxd h = (fock::psi_minus().adjoint() * res.rho * fock::psi_plus())(0);
    CHECK(f == doctest::Approx((1 + x) * (1 + x) / (2 + 2 * x * x)).epsilon(1e-12));
    CHECK(g == doctest::Approx((1 - x) * (1 - x) / (2 + 2 * x * x)).epsilon(1e-12));
    CHECK(h.real() == doctest::Approx(y * y / (2 + 2 * x * x)).epsilon(1e-12));
    CHECK(std::abs(h.imag()) < 1e-14);

    // two ideal pairs: unchanged, success (1+1)/4
    const Eigen::Vector4cd pm = fock::psi_minus();
    const fock::TwoQubitDensity bell = pm * pm.adjoint();
    const auto ideal = purify::purify_oracle_step(bell, bell);
    CHECK(ideal.success == doctest::Approx(0.5).epsilon(1e-14));
    const double fb = (pm.adjoint() * ideal.rho * pm)(0).real();
    CHECK(fb == doctest::Approx(1.0).epsilon(1e-13));

    // x = 0: unpurifiable point, output fidelity one half
    const auto flat = purify::rotate_link_for_purification(entgen::link_density(0.0, 0.0));
    const auto r0 = purify::purify_oracle_step(flat, flat);
    const double f0 = (pm.adjoint() * r0.rho * pm)(0).real();
    CHECK(f0 == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("oracle equals recurrence for random seeds") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int it = 0; it < 20; ++it) {
        double x, y;
        do {
            x = u(rng);
            y = u(rng);
        } while (x * x + y * y > 1.0 || std::abs(x) < 1e-3);
        const auto rho = purify::rotate_link_for_purification(entgen::link_density(x, y));
        const auto res = purify::purify_oracle_step(rho, rho);
        auto track = purify::purify_track_init(x, y);
        track = purify::purify_step(track);
        const double f = (fock::psi_minus().adjoint() * res.rho * fock::psi_minus())(0).real();
        const double g = (fock::psi_plus().adjoint() * res.rho * fock::psi_plus())(0).real();
        const double h = (fock::psi_minus().adjoint() * res.rho * fock::psi_plus())(0).real();
        CHECK(std::abs(f - track.f) < 1e-10);
        CHECK(std::abs(g - track.g) < 1e-10);
        CHECK(std::abs(h - *track.h) < 1e-10);
        CHECK(std::abs(res.success - track.per_round_probs.back()) < 1e-12);
    }
}

TEST_CASE("degenerate input") {
    purify::PurificationTrack t;
    t.f = 0.0;
    t.g = 0.0;
    CHECK_THROWS_AS(purify::purify_step(t), std::domain_error);
}
