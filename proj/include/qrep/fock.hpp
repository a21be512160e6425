// Truncated Fock-space linear algebra: states, operators, coherent states,
// composite systems, partial trace, concurrence, and homodyne half-plane
// projectors. Substrate for every oracle computation in this toolkit.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qrep::fock {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Numerical tolerances shared by the module (one place, see docs).
struct Tolerances {
    double state_norm = 1e-12;        // max excess norm of a physical branch
    double projector = 1e-10;         // idempotence / self-adjointness / completeness
    double hermiticity = 1e-12;
    double density_trace = 1e-10;
    double eigenvalue_floor = -1e-10; // least admissible density eigenvalue
    double cutoff_occupancy = 1e-8;   // population allowed in the top two Fock levels
};
const Tolerances& tolerances();

/// State vector on the photon-number basis |0..dim-1>.
/// Physical branches may be subnormalized; norm must not exceed 1 + 1e-12.
struct FockVector {
    int dim = 0;
    Vec amps;

    double norm() const { return amps.norm(); }
    /// Mass lost to truncation when this vector represents a clipped
    /// normalized state: 1 - sum |amps|^2.
    double truncation_tail() const { return 1.0 - amps.squaredNorm(); }
};

/// Dense operator on the truncated Fock space.
struct FockOperator {
    int dim = 0;
    Mat m;
};

/// Coherent state |alpha> clipped to `dim` levels (amplitudes not renormalized).
/// If `tail_tol` is given, throws std::invalid_argument when the truncated
/// Poisson tail exceeds it.
FockVector make_coherent(cxd alpha, int dim,
                         std::optional<double> tail_tol = std::nullopt);

/// <beta|alpha> in closed form (no truncation).
cxd coherent_overlap(cxd alpha, cxd beta);

enum class HalfLine { NonNegative, Negative };

/// Projector onto the half of phase space on the `sign` side of the
/// quadrature x_phase = (a e^{-i phase} + a^dag e^{i phase})/sqrt(2).
/// For sign = NonNegative it keeps coherent states pointing along e^{i phase}.
/// Built spectrally from the truncated quadrature operator, so it is
/// idempotent, self-adjoint and complementary to machine precision.
FockOperator quad_halfline_projector(double phase, HalfLine sign, int dim);

/// Independent element-level oracle for the projector: M[m][n] =
/// int_0^inf psi_m(x) psi_n(x) dx with psi_n the real oscillator
/// eigenfunctions, by panel Gauss-Legendre quadrature with refinement.
/// Throws std::runtime_error naming the offending (m, n) when the
/// refinement fails to converge.
Eigen::MatrixXd halfline_quadrature_matrix(int dim, double tol = 1e-9,
                                           int max_panels = 16384);

/// Pure or mixed state over a list of subsystems (material qubits first by
/// convention, field mode last).
struct CompositeState {
    std::vector<int> dims;
    bool pure = true;
    Vec psi;  // valid when pure
    Mat rho;  // valid when !pure

    int total_dim() const;
    Mat density() const;  // outer product when pure
    double trace() const;
};

CompositeState make_pure(std::vector<int> dims, Vec psi);
CompositeState make_mixed(std::vector<int> dims, Mat rho);

/// Partial trace keeping the listed subsystem indices (order preserved).
/// Always returns a density form.
CompositeState partial_trace(const CompositeState& s,
                             const std::vector<int>& keep);

using TwoQubitDensity = Eigen::Matrix4cd;

/// Validates Hermiticity, unit trace and eigenvalue floor of a two-qubit
/// density matrix. Throws std::invalid_argument on violation.
void validate_two_qubit_density(const TwoQubitDensity& rho);

/// Wootters concurrence of a two-qubit density matrix.
double concurrence(const TwoQubitDensity& rho);

// Bell states in the computational basis |00>,|01>,|10>,|11>.
// |Phi^pm_phi> = (e^{-i phi}|00> pm e^{i phi}|11>)/sqrt(2).
Eigen::Vector4cd psi_minus();
Eigen::Vector4cd psi_plus();
Eigen::Vector4cd phi_minus(double phi = 0.0);
Eigen::Vector4cd phi_plus(double phi = 0.0);

}  // namespace qrep::fock
