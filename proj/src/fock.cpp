#include "qrep/fock.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qrep::fock {

const Tolerances& tolerances() {
    static const Tolerances t{};
    return t;
}

FockVector make_coherent(cxd alpha, int dim, std::optional<double> tail_tol) {
    if (dim < 1) throw std::invalid_argument("make_coherent: dim must be >= 1");
    FockVector v;
    v.dim = dim;
    v.amps = Vec::Zero(dim);
    if (alpha == cxd(0.0, 0.0)) {
        v.amps(0) = 1.0;
    } else {
        // log-space magnitudes to survive large |alpha|^2
        const double la = std::log(std::abs(alpha));
        const double th = std::arg(alpha);
        double lgam = 0.0;  // log n!
        for (int n = 0; n < dim; ++n) {
            if (n > 0) lgam += std::log(static_cast<double>(n));
            const double logmag = -0.5 * std::norm(alpha) + n * la - 0.5 * lgam;
            v.amps(n) = std::exp(cxd(logmag, n * th));
        }
    }
    if (tail_tol && v.truncation_tail() > *tail_tol) {
        std::ostringstream os;
        os << "make_coherent: dim " << dim << " leaves tail "
           << v.truncation_tail() << " > " << *tail_tol;
        throw std::invalid_argument(os.str());
    }
    return v;
}

cxd coherent_overlap(cxd alpha, cxd beta) {
    return std::exp(-0.5 * (std::norm(alpha) + std::norm(beta)) +
                    std::conj(beta) * alpha);
}

FockOperator quad_halfline_projector(double phase, HalfLine sign, int dim) {
    if (dim < 1) throw std::invalid_argument("quad_halfline_projector: dim >= 1");
    // x_0 is tridiagonal with <n|x|n+1> = sqrt((n+1)/2); diagonalize and keep
    // the spectral half. Finite-dim eigenvalues are Hermite roots, never zero
    // for even dim; ties at 0 go to the NonNegative side.
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) {
        const double c = std::sqrt((n + 1) / 2.0);
        x(n, n + 1) = c;
        x(n + 1, n) = c;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
    Eigen::MatrixXd p0 = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const bool keep = (sign == HalfLine::NonNegative) ? es.eigenvalues()(k) >= 0.0
                                                          : es.eigenvalues()(k) < 0.0;
        if (keep) p0 += es.eigenvectors().col(k) * es.eigenvectors().col(k).transpose();
    }
    FockOperator P;
    P.dim = dim;
    P.m = Mat::Zero(dim, dim);
    for (int mrow = 0; mrow < dim; ++mrow)
        for (int ncol = 0; ncol < dim; ++ncol)
            P.m(mrow, ncol) = std::polar(p0(mrow, ncol), phase * (mrow - ncol));
    return P;
}

namespace {

// psi_n(x) for n = 0..dim-1 by the stable two-term recurrence.
void oscillator_eigenfunctions(double xval, int dim, std::vector<double>& out) {
    out.resize(dim);
    out[0] = std::pow(M_PI, -0.25) * std::exp(-0.5 * xval * xval);
    if (dim > 1) out[1] = std::sqrt(2.0) * xval * out[0];
    for (int n = 2; n < dim; ++n)
        out[n] = std::sqrt(2.0 / n) * xval * out[n - 1] -
                 std::sqrt((n - 1.0) / n) * out[n - 2];
}

// 12-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGL = 12;
constexpr double kGLx[kGL] = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
    -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
    0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
    0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
constexpr double kGLw[kGL] = {
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
    0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

Eigen::MatrixXd quadrature_pass(int dim, double xmax, int panels) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<double> psi;
    const double h = xmax / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = p * h;
        for (int q = 0; q < kGL; ++q) {
            const double xv = a + 0.5 * h * (kGLx[q] + 1.0);
            const double wv = 0.5 * h * kGLw[q];
            oscillator_eigenfunctions(xv, dim, psi);
            for (int mrow = 0; mrow < dim; ++mrow) {
                const double f = wv * psi[mrow];
                for (int ncol = mrow; ncol < dim; ++ncol)
                    M(mrow, ncol) += f * psi[ncol];
            }
        }
    }
    for (int mrow = 0; mrow < dim; ++mrow)
        for (int ncol = 0; ncol < mrow; ++ncol) M(mrow, ncol) = M(ncol, mrow);
    return M;
}

}  // namespace

Eigen::MatrixXd halfline_quadrature_matrix(int dim, double tol, int max_panels) {
    if (dim < 1) throw std::invalid_argument("halfline_quadrature_matrix: dim >= 1");
    // psi_{dim-1} lives inside |x| < sqrt(2 dim); add tail room.
    const double xmax = std::sqrt(2.0 * dim) + 10.0;
    int panels = std::max(64, dim / 2);
    Eigen::MatrixXd coarse = quadrature_pass(dim, xmax, panels);
    while (true) {
        panels *= 2;
        Eigen::MatrixXd fine = quadrature_pass(dim, xmax, panels);
        double worst = 0.0;
        int wm = 0, wn = 0;
        for (int mrow = 0; mrow < dim; ++mrow)
            for (int ncol = 0; ncol < dim; ++ncol) {
                const double d = std::abs(fine(mrow, ncol) - coarse(mrow, ncol));
                if (d > worst) { worst = d; wm = mrow; wn = ncol; }
            }
        if (worst < tol) return fine;
        if (panels >= max_panels) {
            std::ostringstream os;
            os << "halfline_quadrature_matrix: no convergence at element (" << wm
               << ", " << wn << "), residual " << worst;
            throw std::runtime_error(os.str());
        }
        coarse = std::move(fine);
    }
}

int CompositeState::total_dim() const {
    return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
}

Mat CompositeState::density() const {
    if (pure) return psi * psi.adjoint();
    return rho;
}

double CompositeState::trace() const {
    if (pure) return psi.squaredNorm();
    return rho.trace().real();
}

CompositeState make_pure(std::vector<int> dims, Vec psi) {
    CompositeState s;
    s.dims = std::move(dims);
    s.pure = true;
    s.psi = std::move(psi);
    if (s.psi.size() != s.total_dim())
        throw std::invalid_argument("make_pure: dimension mismatch");
    return s;
}

CompositeState make_mixed(std::vector<int> dims, Mat rho) {
    CompositeState s;
    s.dims = std::move(dims);
    s.pure = false;
    s.rho = std::move(rho);
    if (s.rho.rows() != s.total_dim() || s.rho.cols() != s.total_dim())
        throw std::invalid_argument("make_mixed: dimension mismatch");
    return s;
}

CompositeState partial_trace(const CompositeState& s, const std::vector<int>& keep) {
    const int ns = static_cast<int>(s.dims.size());
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep is empty");
    std::vector<bool> kept(ns, false);
    for (int k : keep) {
        if (k < 0 || k >= ns) throw std::out_of_range("partial_trace: bad index");
        kept[k] = true;
    }
    std::vector<int> traced;
    for (int i = 0; i < ns; ++i)
        if (!kept[i]) traced.push_back(i);

    std::vector<int> kdims, tdims;
    for (int k : keep) kdims.push_back(s.dims[k]);
    for (int t : traced) tdims.push_back(s.dims[t]);
    const int kd = std::accumulate(kdims.begin(), kdims.end(), 1, std::multiplies<int>());
    const int td = std::accumulate(tdims.begin(), tdims.end(), 1, std::multiplies<int>());

    // strides in the original flat index
    std::vector<int> stride(ns, 1);
    for (int i = ns - 2; i >= 0; --i) stride[i] = stride[i + 1] * s.dims[i + 1];

    auto flat = [&](int kidx, int tidx) {
        int off = 0;
        for (int i = static_cast<int>(keep.size()) - 1; i >= 0; --i) {
            off += (kidx % kdims[i]) * stride[keep[i]];
            kidx /= kdims[i];
        }
        for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
            off += (tidx % tdims[i]) * stride[traced[i]];
            tidx /= tdims[i];
        }
        return off;
    };

    Mat out = Mat::Zero(kd, kd);
    const Mat full = s.density();
    for (int a = 0; a < kd; ++a)
        for (int b = 0; b < kd; ++b) {
            cxd acc = 0.0;
            for (int t = 0; t < td; ++t) acc += full(flat(a, t), flat(b, t));
            out(a, b) = acc;
        }
    CompositeState r;
    r.dims = kdims;
    r.pure = false;
    r.rho = std::move(out);
    return r;
}

void validate_two_qubit_density(const TwoQubitDensity& rho) {
    const auto& tol = tolerances();
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-10)
        throw std::invalid_argument("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<TwoQubitDensity> es(rho);
    if (es.eigenvalues().minCoeff() < tol.eigenvalue_floor * 10)
        throw std::invalid_argument("density matrix is not positive semidefinite");
}

double concurrence(const TwoQubitDensity& rho) {
    validate_two_qubit_density(rho);
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    // sigma_y (x) sigma_y in |00>,|01>,|10>,|11>
    yy(0, 3) = -1.0; yy(1, 2) = 1.0; yy(2, 1) = 1.0; yy(3, 0) = -1.0;
    const Eigen::Matrix4cd r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i)
        lam[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

namespace {
Eigen::Vector4cd bell(double a0, double a1, double a2, double a3) {
    Eigen::Vector4cd v;
    v << a0, a1, a2, a3;
    return v / std::sqrt(2.0);
}
}  // namespace

Eigen::Vector4cd psi_minus() { return bell(0, 1, -1, 0); }
Eigen::Vector4cd psi_plus() { return bell(0, 1, 1, 0); }

Eigen::Vector4cd phi_minus(double phi) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    v(0) = std::polar(1.0, -phi);
    v(3) = -std::polar(1.0, phi);
    return v / std::sqrt(2.0);
}

Eigen::Vector4cd phi_plus(double phi) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    v(0) = std::polar(1.0, -phi);
    v(3) = std::polar(1.0, phi);
    return v / std::sqrt(2.0);
}

}  // namespace qrep::fock
