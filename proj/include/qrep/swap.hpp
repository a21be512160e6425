// Deterministic unambiguous Bell measurement via two sequential symmetric
// qubit-pair/field interactions with half-plane homodyne postselection, plus
// the swap fidelity map used by the rate model.
#pragma once

#include "qrep/dynamics.hpp"
#include "qrep/fock.hpp"

#include <array>

namespace qrep::swapping {

using fock::cxd;
using fock::TwoQubitDensity;

enum class BellLabel { PsiMinus, PhiMinus, PhiPlus, PsiPlus };

const char* to_string(BellLabel l);

/// One Bell-measurement outcome: the two detector signals, the heralded Bell
/// state, and the deterministic phase the classical-communication consumer
/// must correct (never silently dropped).
struct SwapOutcome {
    bool signal1 = false;
    bool signal2 = false;
    BellLabel label = BellLabel::PsiMinus;
    cxd phase = 1.0;
    double probability = 0.0;
};

/// Outcome distribution for input a-|Psi-> + a+|Psi+> + b-|Phi-> + b+|Phi+>:
///   {P1, P2}       -> -|Psi->        with |a-|^2
///   {P1, 1-P2}     -> e^{+i pi/2}|Phi->  with |b-|^2
///   {1-P1, P2}     -> e^{-i pi/2}|Phi+>  with |b+|^2
///   {1-P1, 1-P2}   -> |Psi+>         with |a+|^2
/// Throws std::invalid_argument for non-normalized coefficients.
std::array<SwapOutcome, 4> bell_measurement_analytic(const dyn::BellCoeffs& c);

struct BellOracleOutcome {
    bool signal1 = false;
    bool signal2 = false;
    double probability = 0.0;
    double fidelity = 0.0;  // conditional fidelity with the table's Bell label
    TwoQubitDensity conditional;
};

struct BellOracleResult {
    std::array<BellOracleOutcome, 4> outcomes;  // (T,T),(T,F),(F,T),(F,F)
    /// Total variation distance to the analytic outcome distribution for the
    /// same input coefficients.
    double tv_distance = 0.0;
};

/// Exact-pipeline Bell measurement: resonant two-qubit interaction at
/// dimensionless time tau with field |alpha>, half-plane measurement, fresh
/// field |alpha e^{i pi/2}>, second interaction, complementary half-plane
/// measurement. Reports outcome probabilities and conditional fidelities,
/// quantifying the finite-nbar error of the ideal table.
BellOracleResult bell_measurement_oracle(const Eigen::Vector4cd& input,
                                         double nbar, int dim, double tau = 0.5);

/// F' = 1 - 2F(1 - F) = f(F) with f(x) = 1 - 2x + 2x^2.
/// Domain [1/2, 1]; throws std::domain_error outside.
double swap_fidelity_map(double F);

/// k-fold application of the swap fidelity map.
double iterate_swaps(double F0, int k);

}  // namespace qrep::swapping
