#include "stochdual/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace stochdual {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

std::string format_eigenvalue(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}
}  // namespace

bool is_hermitian(const CMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix::DensityMatrix(CMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw NotADensityMatrix("DensityMatrix: matrix must be square and nonempty");
    }
    if (!is_hermitian(matrix_, kHermTol)) {
        throw NotADensityMatrix("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - std::complex<double>(1.0)) > kHermTol) {
        throw NotADensityMatrix("DensityMatrix: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kPsdTol) {
        throw NotADensityMatrix("DensityMatrix: negative eigenvalue " +
                                std::to_string(solver.eigenvalues().minCoeff()));
    }
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
    const double norm = psi.norm();
    if (norm == 0.0) {
        throw NotADensityMatrix("DensityMatrix::pure: zero vector");
    }
    CVector unit = psi / norm;
    return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    if (dim < 1) throw BadSize("DensityMatrix::maximally_mixed: dim must be positive");
    return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

MatrixState::MatrixState(CMatrix unit_values) : unit_values_(std::move(unit_values)) {
    if (unit_values_.rows() == 0 || unit_values_.rows() != unit_values_.cols()) {
        throw NotAState("MatrixState: matrix-unit table must be square and nonempty");
    }
}

std::complex<double> MatrixState::value(const CMatrix& a) const {
    if (a.rows() != dim() || a.cols() != dim()) {
        throw DimensionMismatch("MatrixState::value: observable has the wrong dimension");
    }
    // A = sum_ij A_ij E_ij, so omega(A) = sum_ij A_ij omega(E_ij).
    return a.cwiseProduct(unit_values_).sum();
}

MatrixState state_from_density(const DensityMatrix& rho) {
    // omega(E_ij) = tr(rho E_ij) = rho_ji.
    return MatrixState(rho.matrix().transpose());
}

DensityMatrix density_from_state(const MatrixState& omega) {
    try {
        return DensityMatrix(omega.unit_values().transpose());
    } catch (const NotADensityMatrix& e) {
        throw NotAState(std::string("density_from_state: ") + e.what());
    }
}

KrausChannel::KrausChannel(std::vector<CMatrix> operators) : operators_(std::move(operators)) {
    if (operators_.empty()) {
        throw BadSize("KrausChannel: need at least one operator");
    }
    out_dim_ = operators_.front().rows();
    in_dim_ = operators_.front().cols();
    if (in_dim_ < 1 || out_dim_ < 1) {
        throw BadSize("KrausChannel: operators must be nonempty matrices");
    }
    for (const auto& k : operators_) {
        if (k.rows() != out_dim_ || k.cols() != in_dim_) {
            throw DimensionMismatch("KrausChannel: operators must share one shape");
        }
    }
}

KrausChannel KrausChannel::identity(Eigen::Index dim) {
    return KrausChannel({CMatrix::Identity(dim, dim)});
}

bool KrausChannel::is_heisenberg_unital(double tol) const {
    CMatrix sum = CMatrix::Zero(in_dim_, in_dim_);
    for (const auto& k : operators_) sum += k.adjoint() * k;
    return (sum - CMatrix::Identity(in_dim_, in_dim_)).cwiseAbs().maxCoeff() <= tol;
}

CMatrix apply_schrodinger_raw(const KrausChannel& k, const CMatrix& m) {
    if (m.rows() != k.in_dim() || m.cols() != k.in_dim()) {
        throw DimensionMismatch("apply_schrodinger_raw: matrix has the wrong dimension");
    }
    CMatrix out = CMatrix::Zero(k.out_dim(), k.out_dim());
    for (const auto& op : k.operators()) out += op * m * op.adjoint();
    return out;
}

DensityMatrix apply_channel_schrodinger(const KrausChannel& k, const DensityMatrix& rho) {
    return DensityMatrix(apply_schrodinger_raw(k, rho.matrix()));
}

CMatrix apply_channel_heisenberg(const KrausChannel& k, const CMatrix& a) {
    if (a.rows() != k.out_dim() || a.cols() != k.out_dim()) {
        throw DimensionMismatch("apply_channel_heisenberg: observable has the wrong dimension");
    }
    CMatrix out = CMatrix::Zero(k.in_dim(), k.in_dim());
    for (const auto& op : k.operators()) out += op.adjoint() * a * op;
    return out;
}

KrausChannel bit_flip_channel(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw BadProbability("bit_flip_channel: p must lie in [0, 1]");
    }
    CMatrix keep = std::sqrt(p) * CMatrix::Identity(2, 2);
    CMatrix flip(2, 2);
    flip << 0.0, 1.0, 1.0, 0.0;
    flip *= std::sqrt(1.0 - p);
    return KrausChannel({std::move(keep), std::move(flip)});
}

ChoiMatrix::ChoiMatrix(Eigen::Index in_dim, Eigen::Index out_dim, CMatrix matrix)
    : in_dim_(in_dim), out_dim_(out_dim), matrix_(std::move(matrix)) {
    if (matrix_.rows() != in_dim_ * out_dim_ || matrix_.cols() != in_dim_ * out_dim_) {
        throw DimensionMismatch("ChoiMatrix: matrix must be (in*out) x (in*out)");
    }
    if (!is_hermitian(matrix_, kHermTol)) {
        throw NotHermitian("ChoiMatrix: matrix is not Hermitian");
    }
}

double ChoiMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

ChoiMatrix choi_from_action(Eigen::Index in_dim, Eigen::Index out_dim,
                            const std::function<CMatrix(const CMatrix&)>& action) {
    const Eigen::Index n = in_dim * out_dim;
    CMatrix choi = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < in_dim; ++i) {
        for (Eigen::Index j = 0; j < in_dim; ++j) {
            CMatrix unit = CMatrix::Zero(in_dim, in_dim);
            unit(i, j) = 1.0;
            const CMatrix image = action(unit);
            if (image.rows() != out_dim || image.cols() != out_dim) {
                throw DimensionMismatch("choi_from_action: action output has the wrong shape");
            }
            // Block (i, j) of E_ij (x) Phi(E_ij) is Phi(E_ij).
            choi.block(i * out_dim, j * out_dim, out_dim, out_dim) += image;
        }
    }
    return ChoiMatrix(in_dim, out_dim, std::move(choi));
}

ChoiMatrix choi_matrix(const KrausChannel& k) {
    return choi_from_action(k.in_dim(), k.out_dim(),
                            [&k](const CMatrix& m) { return apply_schrodinger_raw(k, m); });
}

bool is_completely_positive(const ChoiMatrix& c, double tol) {
    return c.min_eigenvalue() >= -tol;
}

KrausChannel kraus_from_choi(const ChoiMatrix& c, double tol) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(c.matrix());
    if (solver.eigenvalues().minCoeff() < -tol) {
        throw NotCompletelyPositive("kraus_from_choi: Choi matrix has eigenvalue " +
                                    std::to_string(solver.eigenvalues().minCoeff()));
    }
    std::vector<CMatrix> operators;
    for (Eigen::Index e = 0; e < solver.eigenvalues().size(); ++e) {
        const double lambda = solver.eigenvalues()(e);
        if (lambda <= tol) continue;
        const CVector v = solver.eigenvectors().col(e);
        // Choi column index (i, a) = i*out + a carries K(a, i).
        CMatrix op(c.out_dim(), c.in_dim());
        for (Eigen::Index i = 0; i < c.in_dim(); ++i) {
            for (Eigen::Index a = 0; a < c.out_dim(); ++a) {
                op(a, i) = std::sqrt(lambda) * v(i * c.out_dim() + a);
            }
        }
        operators.push_back(std::move(op));
    }
    if (operators.empty()) {
        // The zero map; represent it with a single zero operator.
        operators.push_back(CMatrix::Zero(c.out_dim(), c.in_dim()));
    }
    return KrausChannel(std::move(operators));
}

SpectralDecomposition::SpectralDecomposition(std::vector<double> eigenvalues,
                                             std::vector<CMatrix> projections)
    : eigenvalues_(std::move(eigenvalues)), projections_(std::move(projections)) {
    if (eigenvalues_.empty() || eigenvalues_.size() != projections_.size()) {
        throw DimensionMismatch("SpectralDecomposition: need one projection per eigenvalue");
    }
}

CMatrix SpectralDecomposition::reconstruct() const {
    CMatrix out = CMatrix::Zero(dim(), dim());
    for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
        out += eigenvalues_[i] * projections_[i];
    }
    return out;
}

SpectralDecomposition spectral_decomposition(const CMatrix& a, double cluster_tol) {
    if (!is_hermitian(a, kHermTol)) {
        throw NotHermitian("spectral_decomposition: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a);
    const Eigen::VectorXd values = solver.eigenvalues();  // ascending
    const CMatrix vectors = solver.eigenvectors();

    std::vector<double> cluster_values;
    std::vector<CMatrix> projections;
    Eigen::Index begin = 0;
    while (begin < values.size()) {
        Eigen::Index end = begin + 1;
        while (end < values.size() && values(end) - values(end - 1) < cluster_tol) ++end;

        // Re-orthonormalize the cluster block to absorb solver drift in
        // degenerate subspaces.
        CMatrix block = vectors.middleCols(begin, end - begin);
        Eigen::HouseholderQR<CMatrix> qr(block);
        CMatrix q = qr.householderQ() * CMatrix::Identity(block.rows(), block.cols());

        cluster_values.push_back(values.segment(begin, end - begin).mean());
        projections.push_back(q * q.adjoint());
        begin = end;
    }
    return SpectralDecomposition(std::move(cluster_values), std::move(projections));
}

namespace {
FiniteSpace spectrum_labels(const SpectralDecomposition& d) {
    std::vector<std::string> labels;
    labels.reserve(d.eigenvalues().size());
    for (double v : d.eigenvalues()) labels.push_back(format_eigenvalue(v));
    return FiniteSpace(std::move(labels));
}
}  // namespace

MeasurementMap::MeasurementMap(SpectralDecomposition decomposition)
    : decomposition_(std::move(decomposition)), spectrum_(spectrum_labels(decomposition_)) {}

CMatrix MeasurementMap::apply(const DiagElement& v) const {
    if (!(v.space() == spectrum_)) {
        throw DimensionMismatch("MeasurementMap::apply: element lives on the wrong spectrum");
    }
    CMatrix out = CMatrix::Zero(decomposition_.dim(), decomposition_.dim());
    for (std::size_t i = 0; i < decomposition_.projections().size(); ++i) {
        out += v[i] * decomposition_.projections()[i];
    }
    return out;
}

MeasurementMap measurement_map(const CMatrix& a, double cluster_tol) {
    return MeasurementMap(spectral_decomposition(a, cluster_tol));
}

ProbDist measure(const CMatrix& a, const DensityMatrix& rho, double cluster_tol) {
    const MeasurementMap m = measurement_map(a, cluster_tol);
    if (rho.dim() != m.decomposition().dim()) {
        throw DimensionMismatch("measure: state and observable dimensions differ");
    }
    Eigen::VectorXd p(static_cast<Eigen::Index>(m.decomposition().projections().size()));
    for (std::size_t i = 0; i < m.decomposition().projections().size(); ++i) {
        p(static_cast<Eigen::Index>(i)) =
            (rho.matrix() * m.decomposition().projections()[i]).trace().real();
    }
    return ProbDist(m.spectrum(), std::move(p));
}

DensityMatrix unitary_evolution(const CMatrix& h, double t, const DensityMatrix& rho) {
    if (h.rows() != rho.dim() || h.cols() != rho.dim()) {
        throw DimensionMismatch("unitary_evolution: Hamiltonian and state dimensions differ");
    }
    const SpectralDecomposition d = spectral_decomposition(h);
    CMatrix u = CMatrix::Zero(rho.dim(), rho.dim());
    for (std::size_t i = 0; i < d.eigenvalues().size(); ++i) {
        u += std::exp(-kI * d.eigenvalues()[i] * t) * d.projections()[i];
    }
    return DensityMatrix(u * rho.matrix() * u.adjoint());
}

DensityMatrix liouville_step(const CMatrix& h, const DensityMatrix& rho, double dt) {
    if (!is_hermitian(h, kHermTol)) {
        throw NotHermitian("liouville_step: Hamiltonian is not Hermitian");
    }
    if (h.rows() != rho.dim()) {
        throw DimensionMismatch("liouville_step: Hamiltonian and state dimensions differ");
    }
    const auto flow = [&h](const CMatrix& m) -> CMatrix { return -kI * (h * m - m * h); };
    const CMatrix& r = rho.matrix();
    const CMatrix k1 = flow(r);
    const CMatrix k2 = flow(r + 0.5 * dt * k1);
    const CMatrix k3 = flow(r + 0.5 * dt * k2);
    const CMatrix k4 = flow(r + dt * k3);
    return DensityMatrix(r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace stochdual
