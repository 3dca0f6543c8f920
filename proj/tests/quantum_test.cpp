#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "stochdual/quantum.hpp"
#include "stochdual/random.hpp"

using namespace stochdual;
using namespace std::complex_literals;

namespace {

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

CMatrix pauli_z() {
    CMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

DensityMatrix spin_up() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    return DensityMatrix(m);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("DensityMatrix validation") {
    CHECK_NOTHROW(DensityMatrix::maximally_mixed(3));
    CHECK_NOTHROW(spin_up());

    CMatrix not_hermitian(2, 2);
    not_hermitian << 0.5, 1.0i, 1.0i, 0.5;
    CHECK_THROWS_AS(DensityMatrix(not_hermitian), NotADensityMatrix);

    CMatrix wrong_trace = 0.7 * CMatrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix(wrong_trace), NotADensityMatrix);

    CMatrix indefinite(2, 2);
    indefinite << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(DensityMatrix(indefinite), NotADensityMatrix);
}

TEST_CASE("state_from_density and density_from_state") {
    // Maximally mixed qubit: sigma_z is traceless, so its expectation is 0.
    const MatrixState mixed = state_from_density(DensityMatrix::maximally_mixed(2));
    CHECK(std::abs(mixed.value(pauli_z())) <= 1e-15);
    CHECK(std::abs(mixed.value(CMatrix::Identity(2, 2)) - 1.0) <= 1e-15);

    CMatrix diag = CMatrix::Zero(2, 2);
    diag(0, 0) = 0.3;
    diag(1, 1) = 0.7;
    const MatrixState omega = state_from_density(DensityMatrix(diag));
    CMatrix e11 = CMatrix::Zero(2, 2);
    e11(0, 0) = 1.0;
    CHECK(std::abs(omega.value(e11) - 0.3) <= 1e-15);

    Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho = random_density(rng, 3);
        const DensityMatrix back = density_from_state(state_from_density(rho));
        CHECK(max_abs_diff(back.matrix(), rho.matrix()) < 1e-12);
    }

    CHECK_THROWS_AS(density_from_state(MatrixState(pauli_x())), NotAState);
}

TEST_CASE("bit flip channel matches the stated action") {
    // rho_up |-> p rho_up + (1-p) rho_down.
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const DensityMatrix out = apply_channel_schrodinger(bit_flip_channel(p), spin_up());
        CMatrix expected = CMatrix::Zero(2, 2);
        expected(0, 0) = p;
        expected(1, 1) = 1.0 - p;
        CHECK(max_abs_diff(out.matrix(), expected) <= 1e-14);
    }

    // p = 1 keeps every state; p = 0 flips the basis projectors.
    Rng rng(2);
    const DensityMatrix rho = random_density(rng, 2);
    CHECK(max_abs_diff(apply_channel_schrodinger(bit_flip_channel(1.0), rho).matrix(),
                       rho.matrix()) <= 1e-15);
    const DensityMatrix flipped = apply_channel_schrodinger(bit_flip_channel(0.0), spin_up());
    CHECK(std::abs(flipped.matrix()(1, 1) - 1.0) <= 1e-15);

    // p = 1/2 sends both basis projectors to the maximally mixed state.
    const DensityMatrix half = apply_channel_schrodinger(bit_flip_channel(0.5), spin_up());
    CHECK(max_abs_diff(half.matrix(), 0.5 * CMatrix::Identity(2, 2)) <= 1e-15);

    CHECK(bit_flip_channel(0.75).is_heisenberg_unital());
    CHECK_THROWS_AS(bit_flip_channel(1.5), BadProbability);
    CHECK_THROWS_AS(bit_flip_channel(-0.1), BadProbability);
}

TEST_CASE("identity channel and Heisenberg/Schrodinger duality") {
    Rng rng(3);
    const DensityMatrix rho = random_density(rng, 2);
    CHECK(max_abs_diff(apply_channel_schrodinger(KrausChannel::identity(2), rho).matrix(),
                       rho.matrix()) == 0.0);

    // tr(f'(rho) A) = tr(rho f(A)) for random channel/state/observable.
    for (int trial = 0; trial < 50; ++trial) {
        const KrausChannel channel(
            {random_complex_matrix(rng, 2, 2) / 2.0, random_complex_matrix(rng, 2, 2) / 2.0});
        const CMatrix a = random_complex_matrix(rng, 2, 2);
        const DensityMatrix state = random_density(rng, 2);
        const std::complex<double> lhs =
            (apply_schrodinger_raw(channel, state.matrix()) * a).trace();
        const std::complex<double> rhs =
            (state.matrix() * apply_channel_heisenberg(channel, a)).trace();
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }

    CHECK_THROWS_AS(apply_channel_heisenberg(bit_flip_channel(0.5), CMatrix::Identity(3, 3)),
                    DimensionMismatch);
}

TEST_CASE("trace preservation under unital Heisenberg duals") {
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const KrausChannel channel = bit_flip_channel(rng.uniform());
        CHECK(channel.is_heisenberg_unital());
        const DensityMatrix rho = random_density(rng, 2);
        const DensityMatrix out = apply_channel_schrodinger(channel, rho);
        CHECK(std::abs(out.matrix().trace().real() - 1.0) <= 1e-12);
    }
}

TEST_CASE("choi matrix of the identity channel") {
    const ChoiMatrix c = choi_matrix(KrausChannel::identity(2));
    // Twice the projector onto the maximally entangled vector; by direct
    // construction the entries are 1 exactly at pairs of diagonal units.
    CMatrix expected = CMatrix::Zero(4, 4);
    for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 2; ++j) {
            expected(i * 2 + i, j * 2 + j) = 1.0;
        }
    }
    CHECK(max_abs_diff(c.matrix(), expected) == 0.0);
    CHECK(is_completely_positive(c));
    CHECK(std::abs(c.min_eigenvalue()) <= 1e-12);
    CHECK(std::abs(c.matrix().trace().real() - 2.0) <= 1e-15);
}

TEST_CASE("transpose map is positive but not completely positive") {
    const ChoiMatrix c =
        choi_from_action(2, 2, [](const CMatrix& m) { return CMatrix(m.transpose()); });

    // The Choi matrix of the transpose is the swap; frozen 4x4 form.
    CMatrix swap = CMatrix::Zero(4, 4);
    swap(0, 0) = 1.0;
    swap(1, 2) = 1.0;
    swap(2, 1) = 1.0;
    swap(3, 3) = 1.0;
    CHECK(max_abs_diff(c.matrix(), swap) == 0.0);

    // Oracle without an eigensolver: swap is symmetric and squares to the
    // identity, so its eigenvalues are +-1, and the antisymmetric vector
    // (e01 - e10)/sqrt(2) realizes -1.
    CHECK(max_abs_diff(swap * swap, CMatrix::Identity(4, 4)) == 0.0);
    CVector anti = CVector::Zero(4);
    anti(1) = 1.0 / std::sqrt(2.0);
    anti(2) = -1.0 / std::sqrt(2.0);
    CHECK((swap * anti + anti).cwiseAbs().maxCoeff() == 0.0);

    CHECK(c.min_eigenvalue() == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(!is_completely_positive(c));
    CHECK_THROWS_AS(kraus_from_choi(c), NotCompletelyPositive);
}

TEST_CASE("kraus_from_choi reproduces the channel") {
    Rng rng(5);
    const KrausChannel original = bit_flip_channel(0.75);
    const KrausChannel rebuilt = kraus_from_choi(choi_matrix(original));
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = random_density(rng, 2);
        CHECK(max_abs_diff(apply_schrodinger_raw(original, rho.matrix()),
                           apply_schrodinger_raw(rebuilt, rho.matrix())) <= 1e-10);
    }
}

TEST_CASE("composition of CP channels stays CP") {
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const KrausChannel a = bit_flip_channel(rng.uniform());
        const KrausChannel b = bit_flip_channel(rng.uniform());
        // Kraus operators of the composite are the pairwise products.
        std::vector<CMatrix> ops;
        for (const auto& ka : a.operators()) {
            for (const auto& kb : b.operators()) ops.push_back(ka * kb);
        }
        CHECK(is_completely_positive(choi_matrix(KrausChannel(ops))));
    }
}

TEST_CASE("spectral decomposition: hand-solved and degenerate cases") {
    // sigma_x has eigenvalues -+1 with projections (I -+ sigma_x)/2.
    const SpectralDecomposition sx = spectral_decomposition(pauli_x());
    REQUIRE(sx.eigenvalues().size() == 2);
    CHECK(sx.eigenvalues()[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sx.eigenvalues()[1] == doctest::Approx(+1.0).epsilon(1e-12));
    CMatrix p_minus(2, 2), p_plus(2, 2);
    p_minus << 0.5, -0.5, -0.5, 0.5;
    p_plus << 0.5, 0.5, 0.5, 0.5;
    CHECK(max_abs_diff(sx.projections()[0], p_minus) <= 1e-12);
    CHECK(max_abs_diff(sx.projections()[1], p_plus) <= 1e-12);

    const SpectralDecomposition ident = spectral_decomposition(CMatrix::Identity(3, 3));
    REQUIRE(ident.eigenvalues().size() == 1);
    CHECK(ident.eigenvalues()[0] == doctest::Approx(1.0));
    CHECK(max_abs_diff(ident.projections()[0], CMatrix::Identity(3, 3)) <= 1e-12);

    CMatrix degenerate = CMatrix::Zero(3, 3);
    degenerate(0, 0) = 2.0;
    degenerate(1, 1) = 2.0;
    degenerate(2, 2) = 5.0;
    const SpectralDecomposition d = spectral_decomposition(degenerate, 1e-8);
    REQUIRE(d.eigenvalues().size() == 2);
    CHECK(d.eigenvalues()[0] == doctest::Approx(2.0));
    CHECK(d.eigenvalues()[1] == doctest::Approx(5.0));
    CHECK(d.projections()[0].trace().real() == doctest::Approx(2.0));  // rank 2
    CHECK(d.projections()[1].trace().real() == doctest::Approx(1.0));  // rank 1

    CHECK_THROWS_AS(spectral_decomposition(pauli_x() + 1.0i * CMatrix::Identity(2, 2)),
                    NotHermitian);
}

TEST_CASE("spectral decomposition invariants on random Hermitian matrices") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng.index(4));
        const CMatrix a = random_hermitian(rng, dim);
        const SpectralDecomposition d = spectral_decomposition(a);

        CMatrix sum = CMatrix::Zero(dim, dim);
        for (std::size_t i = 0; i < d.projections().size(); ++i) {
            const CMatrix& p = d.projections()[i];
            sum += p;
            CHECK(max_abs_diff(p, p.adjoint()) <= 1e-9);  // Hermitian
            CHECK(max_abs_diff(p * p, p) <= 1e-9);        // idempotent
            for (std::size_t j = i + 1; j < d.projections().size(); ++j) {
                CHECK((p * d.projections()[j]).cwiseAbs().maxCoeff() <= 1e-9);
            }
        }
        CHECK(max_abs_diff(sum, CMatrix::Identity(dim, dim)) <= 1e-9);
        CHECK(max_abs_diff(d.reconstruct(), a) <= 1e-8);
    }
}

TEST_CASE("measurement: Born probabilities") {
    CMatrix rho_diag = CMatrix::Zero(2, 2);
    rho_diag(0, 0) = 0.3;
    rho_diag(1, 1) = 0.7;
    const DensityMatrix rho(rho_diag);

    // sigma_z spectrum is listed ascending (-1, +1); the +1 eigenspace is
    // spanned by spin up, so p(+1) = 0.3.
    const ProbDist pz = measure(pauli_z(), rho);
    REQUIRE(pz.size() == 2);
    CHECK(pz[0] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(pz[1] == doctest::Approx(0.3).epsilon(1e-12));

    const ProbDist pid = measure(CMatrix::Identity(2, 2), rho);
    REQUIRE(pid.size() == 1);
    CHECK(pid[0] == doctest::Approx(1.0));

    const ProbDist px = measure(pauli_x(), spin_up());
    REQUIRE(px.size() == 2);
    CHECK(px[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(px[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("measurement map sends basis elements to projections") {
    const MeasurementMap m = measurement_map(pauli_x());
    REQUIRE(m.spectrum().size() == 2);
    const CMatrix p0 = m.apply(DiagElement::basis(m.spectrum(), 0));
    CHECK(max_abs_diff(p0, m.decomposition().projections()[0]) == 0.0);
    // The unit goes to the identity: completeness of the projections.
    CHECK(max_abs_diff(m.apply(DiagElement::unit(m.spectrum())), CMatrix::Identity(2, 2)) <=
          1e-12);
}

TEST_CASE("measure always yields a probability distribution") {
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng.index(4));
        const CMatrix a = random_hermitian(rng, dim);
        const DensityMatrix rho = random_density(rng, dim);
        const ProbDist p = measure(a, rho);
        CHECK(std::abs(p.weights().sum() - 1.0) <= 1e-12);
        CHECK(p.weights().minCoeff() >= -1e-12);
    }
}

TEST_CASE("unitary evolution: trivial time, spin precession, spectrum") {
    Rng rng(9);
    const DensityMatrix rho = random_density(rng, 2);
    CHECK(max_abs_diff(unitary_evolution(pauli_z(), 0.0, rho).matrix(), rho.matrix()) <= 1e-15);

    // Under H = sigma_z the +x eigenstate precesses with angular frequency 2
    // (the spectral gap): U rho U* = [[1, e^{-2it}], [e^{2it}, 1]] / 2 by
    // exact 2x2 conjugation. It reaches the -x eigenstate at t = pi/2 and
    // returns to itself at t = pi.
    CMatrix plus(2, 2), minus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    minus << 0.5, -0.5, -0.5, 0.5;
    const double pi = std::acos(-1.0);
    const DensityMatrix quarter = unitary_evolution(pauli_z(), pi / 2.0, DensityMatrix(plus));
    CHECK(max_abs_diff(quarter.matrix(), minus) <= 1e-12);
    const DensityMatrix half_period = unitary_evolution(pauli_z(), pi, DensityMatrix(plus));
    CHECK(max_abs_diff(half_period.matrix(), plus) <= 1e-12);

    // Conjugation preserves the eigenvalue multiset.
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix h = random_hermitian(rng, 3);
        const DensityMatrix state = random_density(rng, 3);
        const DensityMatrix out = unitary_evolution(h, rng.uniform(0.0, 3.0), state);
        Eigen::SelfAdjointEigenSolver<CMatrix> before(state.matrix(), Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<CMatrix> after(out.matrix(), Eigen::EigenvaluesOnly);
        CHECK((before.eigenvalues() - after.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("liouville integrator matches the exact propagator") {
    Rng rng(10);
    const CMatrix h = random_hermitian(rng, 3);
    const DensityMatrix rho0 = random_density(rng, 3);

    const int steps = 1000;
    const double t = 1.0;
    DensityMatrix rho = rho0;
    for (int i = 0; i < steps; ++i) {
        rho = liouville_step(h, rho, t / steps);
    }
    const DensityMatrix exact = unitary_evolution(h, t, rho0);
    CHECK(max_abs_diff(rho.matrix(), exact.matrix()) <= 1e-8);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) <= 1e-10);
    CHECK(max_abs_diff(rho.matrix(), rho.matrix().adjoint()) <= 1e-10);

    CHECK_THROWS_AS(liouville_step(pauli_x() + 1.0i * CMatrix::Identity(2, 2), rho0, 0.1),
                    NotHermitian);
}
