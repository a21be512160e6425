#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrep/dynamics.hpp"
#include "qrep/entgen.hpp"
#include "qrep/fock.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <random>

using namespace qrep;
using fock::cxd;

namespace {

// independent Poisson tail sum in long double
long double poisson_tail(double lambda, int from) {
    long double logp = -lambda;  // log P(0)
    for (int n = 1; n <= from - 1; ++n)
        logp += std::log((long double)lambda) - std::log((long double)n);
    long double tail = 0.0L, lp = logp;
    for (int n = from; n < from + 2000; ++n) {
        lp += std::log((long double)lambda) - std::log((long double)n);
        tail += std::exp(lp);
    }
    return tail;
}

std::mt19937 rng(7);

Eigen::Matrix2cd random_unitary2() {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::Matrix2cd a;
    a << cxd(g(rng), g(rng)), cxd(g(rng), g(rng)), cxd(g(rng), g(rng)), cxd(g(rng), g(rng));
    const Eigen::HouseholderQR<Eigen::Matrix2cd> qr(a);
    return Eigen::Matrix2cd(qr.householderQ());
}

}  // namespace

TEST_CASE("coherent state: vacuum and truncation tail") {
    const auto vac = fock::make_coherent(0.0, 8);
    CHECK(std::abs(vac.amps(0) - 1.0) < 1e-15);
    CHECK(vac.norm() == doctest::Approx(1.0));

    const auto big = fock::make_coherent(std::sqrt(100.0), 256);
    CHECK(big.truncation_tail() < 1e-12);
    const long double tail = poisson_tail(100.0, 256);
    CHECK(std::abs(big.truncation_tail() - (double)tail) < 1e-13);

    CHECK_THROWS_AS(fock::make_coherent(std::sqrt(100.0), 64, 1e-12),
                    std::invalid_argument);
    CHECK_THROWS_AS(fock::make_coherent(1.0, 0), std::invalid_argument);
}

TEST_CASE("coherent overlap closed form") {
    CHECK(std::abs(fock::coherent_overlap(2.0, 2.0) - 1.0) < 1e-14);
    const cxd beta(0.3, -0.4);
    CHECK(std::abs(fock::coherent_overlap(0.0, beta)) ==
          doctest::Approx(std::exp(-std::norm(beta) / 2)));

    // modulus at the reference working point, exact exponential
    const cxd a = std::sqrt(100.0);
    const cxd b = std::sqrt(100.0) * std::polar(1.0, 0.4);
    const double expect = std::exp(-100.0 * (1.0 - std::cos(0.4)));
    CHECK(std::abs(fock::coherent_overlap(a, b)) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::abs(fock::coherent_overlap(a, b)) ==
          doctest::Approx(3.7251e-4).epsilon(1e-4));

    // truncated Fock inner product reproduces the closed form
    const auto va = fock::make_coherent(a, 256);
    const auto vb = fock::make_coherent(b, 256);
    const cxd fockip = (vb.amps.adjoint() * va.amps)(0, 0);
    CHECK(std::abs(fockip - fock::coherent_overlap(a, b)) < 1e-8);
}

TEST_CASE("half-line projector algebra and action") {
    const int dim = 128;
    const auto P = fock::quad_halfline_projector(0.0, fock::HalfLine::NonNegative, dim);
    const auto Q = fock::quad_halfline_projector(0.0, fock::HalfLine::Negative, dim);
    CHECK((P.m * P.m - P.m).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((P.m - P.m.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((P.m + Q.m - fock::Mat::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(P.m(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));

    // coherent state ten standard deviations inside the measured half plane
    const int big = 220;
    const auto P2 =
        fock::quad_halfline_projector(M_PI / 2, fock::HalfLine::NonNegative, big);
    const auto a = fock::make_coherent(cxd(0.0, 10.0), big, 1e-6);
    CHECK((P2.m * a.amps).norm() >= 0.999);

    // |alpha_pm> of the swapping scheme at tau = 1/2 sit on the far side
    const auto P0 = fock::quad_halfline_projector(0.0, fock::HalfLine::NonNegative, big);
    const auto ap = dyn::alpha_pm_state(100.0, 0.5, big, +1);
    const auto am = dyn::alpha_pm_state(100.0, 0.5, big, -1);
    CHECK((P0.m * ap.amps).norm() <= 0.01);
    CHECK((P0.m * am.amps).norm() <= 0.01);
}

TEST_CASE("quadrature element oracle agrees with the spectral projector") {
    const int dim = 90;
    const auto M = fock::halfline_quadrature_matrix(dim, 1e-9);
    const auto P = fock::quad_halfline_projector(0.0, fock::HalfLine::NonNegative, 140);
    double worst = 0.0;
    for (int m = 0; m < 40; ++m)
        for (int n = 0; n < 40; ++n)
            worst = std::max(worst, std::abs(M(m, n) - P.m(m, n).real()));
    // the two discretizations converge to the same operator
    CHECK(worst < 0.01);
    for (int n = 0; n < 40; ++n) CHECK(M(n, n) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("partial trace") {
    Eigen::Matrix2cd rq;
    rq << 0.7, cxd(0.1, 0.2), cxd(0.1, -0.2), 0.3;
    const auto f = fock::make_coherent(1.5, 24);
    fock::Mat rho = fock::Mat::Zero(48, 48);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            rho.block(a * 24, b * 24, 24, 24) = rq(a, b) * f.amps * f.amps.adjoint();
    const auto red = fock::partial_trace(fock::make_mixed({2, 24}, rho), {0});
    const double fnorm = f.amps.squaredNorm();
    CHECK((fock::Mat(red.rho - fnorm * rq)).cwiseAbs().maxCoeff() < 1e-12);

    const Eigen::Vector4cd pm = fock::psi_minus();
    const auto bell = fock::make_pure({2, 2}, pm);
    const auto one = fock::partial_trace(bell, {1});
    CHECK(std::abs(one.rho(0, 0).real() - 0.5) < 1e-14);
    CHECK(std::abs(one.rho(1, 1).real() - 0.5) < 1e-14);
    CHECK(std::abs(one.rho(0, 1)) < 1e-14);

    std::normal_distribution<double> g(0.0, 1.0);
    for (int it = 0; it < 5; ++it) {
        fock::Vec psi(2 * 2 * 6);
        for (int i = 0; i < psi.size(); ++i) psi(i) = cxd(g(rng), g(rng));
        psi /= psi.norm();
        const auto s = fock::make_pure({2, 2, 6}, psi);
        for (const auto& keep :
             {std::vector<int>{0}, {1}, {2}, {0, 2}, {1, 2}}) {
            const auto r = fock::partial_trace(s, keep);
            CHECK(std::abs(r.trace() - 1.0) < 1e-12);
            CHECK((fock::Mat(r.rho - r.rho.adjoint())).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    CHECK_THROWS_AS(fock::partial_trace(bell, {2}), std::out_of_range);
    CHECK_THROWS_AS(fock::partial_trace(bell, {}), std::invalid_argument);
}

TEST_CASE("concurrence") {
    const Eigen::Vector4cd pm = fock::psi_minus();
    fock::TwoQubitDensity bell = pm * pm.adjoint();
    CHECK(fock::concurrence(bell) == doctest::Approx(1.0).epsilon(1e-12));

    fock::TwoQubitDensity mixed = fock::TwoQubitDensity::Identity() / 4.0;
    CHECK(fock::concurrence(mixed) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK(fock::concurrence(entgen::link_density(0.3, 0.4)) ==
          doctest::Approx(0.5).epsilon(1e-10));

    for (int it = 0; it < 20; ++it) {
        std::uniform_real_distribution<double> u(-0.7, 0.7);
        double x = u(rng), y = u(rng);
        if (x * x + y * y > 1) { x /= 2; y /= 2; }
        const auto rho = entgen::link_density(x, y);
        const Eigen::Matrix4cd U =
            Eigen::Matrix4cd(Eigen::kroneckerProduct(random_unitary2(), random_unitary2()));
        const fock::TwoQubitDensity rot = U * rho * U.adjoint();
        CHECK(std::abs(fock::concurrence(rot) - fock::concurrence(rho)) < 1e-10);
    }

    fock::TwoQubitDensity bad = bell;
    bad(3, 3) = -0.2;
    bad(0, 0) = 0.2;
    CHECK_THROWS_AS(fock::concurrence(bad), std::invalid_argument);
}
