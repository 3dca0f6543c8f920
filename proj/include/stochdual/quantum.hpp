#pragma once

// Matrix C*-algebras: density matrices and the states tr(rho .), Kraus
// channels in both pictures, Choi-matrix complete-positivity checks,
// spectral decomposition of Hermitian observables, measurement maps, and
// closed-system evolution (exact conjugation and a fourth-order integrator
// for the Liouville equation). hbar = 1 throughout.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "stochdual/calgebra.hpp"
#include "stochdual/errors.hpp"
#include "stochdual/finstoch.hpp"

namespace stochdual {

inline constexpr double kHermTol = 1e-9;   // Hermiticity / trace checks
inline constexpr double kPsdTol = 1e-8;    // eigenvalue-based positivity checks
inline constexpr double kSpecTol = 1e-8;   // spectral reconstruction tolerance
inline constexpr double kClusterTol = 1e-8;

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

bool is_hermitian(const CMatrix& a, double tol = kHermTol);

// A quantum state: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix matrix);

    static DensityMatrix pure(const CVector& psi);  // normalizes psi
    static DensityMatrix maximally_mixed(Eigen::Index dim);

    Eigen::Index dim() const { return matrix_.rows(); }
    const CMatrix& matrix() const { return matrix_; }

private:
    CMatrix matrix_;
};

// The state tr(rho .) tabulated on matrix units: unit_values(i, j) = omega(E_ij).
class MatrixState {
public:
    MatrixState(CMatrix unit_values);

    std::complex<double> value(const CMatrix& a) const;

    Eigen::Index dim() const { return unit_values_.rows(); }
    const CMatrix& unit_values() const { return unit_values_; }

private:
    CMatrix unit_values_;
};

MatrixState state_from_density(const DensityMatrix& rho);
// Recovers rho_ji = omega(E_ij); throws NotAState when the recovered matrix
// is not a density matrix.
DensityMatrix density_from_state(const MatrixState& omega);

// A CP map given by Kraus operators K_i (all out_dim x in_dim).
// Schroedinger action: rho |-> sum K_i rho K_i*.
// Heisenberg dual:     A   |-> sum K_i* A K_i.
class KrausChannel {
public:
    explicit KrausChannel(std::vector<CMatrix> operators);

    static KrausChannel identity(Eigen::Index dim);

    Eigen::Index in_dim() const { return in_dim_; }
    Eigen::Index out_dim() const { return out_dim_; }
    const std::vector<CMatrix>& operators() const { return operators_; }

    // sum K_i* K_i = I, i.e. the Heisenberg dual is unital and the
    // Schroedinger action preserves trace.
    bool is_heisenberg_unital(double tol = kHermTol) const;

private:
    Eigen::Index in_dim_ = 0;
    Eigen::Index out_dim_ = 0;
    std::vector<CMatrix> operators_;
};

// Schroedinger action on an arbitrary matrix (no density validation).
CMatrix apply_schrodinger_raw(const KrausChannel& k, const CMatrix& m);
DensityMatrix apply_channel_schrodinger(const KrausChannel& k, const DensityMatrix& rho);
CMatrix apply_channel_heisenberg(const KrausChannel& k, const CMatrix& a);

// Kraus pair {sqrt(p) I, sqrt(1-p) X}: keeps a spin with probability p,
// flips it with probability 1-p.
KrausChannel bit_flip_channel(double p);

// The (in*out) x (in*out) witness for complete positivity,
// C = sum_ij E_ij (x) Phi(E_ij). Hermitian by construction for any map
// Phi with Phi(A*) = Phi(A)*.
class ChoiMatrix {
public:
    ChoiMatrix(Eigen::Index in_dim, Eigen::Index out_dim, CMatrix matrix);

    Eigen::Index in_dim() const { return in_dim_; }
    Eigen::Index out_dim() const { return out_dim_; }
    const CMatrix& matrix() const { return matrix_; }

    double min_eigenvalue() const;

private:
    Eigen::Index in_dim_;
    Eigen::Index out_dim_;
    CMatrix matrix_;
};

ChoiMatrix choi_matrix(const KrausChannel& k);
// Choi matrix of an arbitrary linear action on matrix units; covers maps,
// like the transpose, that have no Kraus form.
ChoiMatrix choi_from_action(Eigen::Index in_dim, Eigen::Index out_dim,
                            const std::function<CMatrix(const CMatrix&)>& action);
bool is_completely_positive(const ChoiMatrix& c, double tol = kPsdTol);
// Eigendecomposes the Choi matrix, keeps eigenpairs above tol, and rebuilds
// Kraus operators. Throws NotCompletelyPositive on a genuinely negative
// eigenvalue.
KrausChannel kraus_from_choi(const ChoiMatrix& c, double tol = kPsdTol);

// Eigenvalues clustered by gap, one orthogonal projection per cluster.
// Invariants: sum P = I, P_l P_m = 0 for l != m, sum lambda P reconstructs
// the operator.
class SpectralDecomposition {
public:
    SpectralDecomposition(std::vector<double> eigenvalues, std::vector<CMatrix> projections);

    const std::vector<double>& eigenvalues() const { return eigenvalues_; }  // ascending
    const std::vector<CMatrix>& projections() const { return projections_; }
    Eigen::Index dim() const { return projections_.front().rows(); }
    CMatrix reconstruct() const;

private:
    std::vector<double> eigenvalues_;
    std::vector<CMatrix> projections_;
};

SpectralDecomposition spectral_decomposition(const CMatrix& a, double cluster_tol = kClusterTol);

// The measurement map m : C^{sigma(A)} -> M_n with m(e_lambda) = P_lambda.
class MeasurementMap {
public:
    explicit MeasurementMap(SpectralDecomposition decomposition);

    // One label per distinct eigenvalue, in ascending order.
    const FiniteSpace& spectrum() const { return spectrum_; }
    const SpectralDecomposition& decomposition() const { return decomposition_; }
    CMatrix apply(const DiagElement& v) const;  // sum v_lambda P_lambda

private:
    SpectralDecomposition decomposition_;
    FiniteSpace spectrum_;
};

MeasurementMap measurement_map(const CMatrix& a, double cluster_tol = kClusterTol);

// Born probabilities p_lambda = tr(rho P_lambda) on the spectrum of A;
// always a probability distribution because the projections sum to I.
ProbDist measure(const CMatrix& a, const DensityMatrix& rho, double cluster_tol = kClusterTol);

// exp(-iHt) rho exp(iHt) via the spectral decomposition of H (exact for
// Hermitian generators).
DensityMatrix unitary_evolution(const CMatrix& h, double t, const DensityMatrix& rho);

// One classical fourth-order Runge-Kutta step of drho/dt = -i[H, rho].
DensityMatrix liouville_step(const CMatrix& h, const DensityMatrix& rho, double dt);

}  // namespace stochdual
