#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "stochdual/calgebra.hpp"
#include "stochdual/random.hpp"

using namespace stochdual;
using namespace std::complex_literals;

namespace {

FiniteSpace die_space() { return FiniteSpace({"1", "2", "3", "4", "5", "6"}); }
FiniteSpace parity_space() { return FiniteSpace({"O", "E"}); }

StochMatrix parity_matrix() {
    return from_function(
        LabelMap::from_labels(die_space(), parity_space(), [](const std::string& face) {
            return std::stoi(face) % 2 == 1 ? std::string("O") : std::string("E");
        }));
}

DiagElement element(FiniteSpace space, std::vector<std::complex<double>> values) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
    return DiagElement(std::move(space), std::move(v));
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("pointwise algebra operations") {
    FiniteSpace s({"a", "b"});
    const DiagElement u = element(s, {1.0, 2.0i});
    const DiagElement v = element(s, {3.0, -1.0i});

    const DiagElement prod = u * v;
    CHECK(prod[0] == 3.0 + 0.0i);
    CHECK(prod[1] == 2.0 + 0.0i);

    const DiagElement w = element(s, {3.0, -4.0i});
    CHECK(w.involution()[1] == 4.0i);
    CHECK(w.sup_norm() == 4.0);

    CHECK((u + v)[0] == 4.0 + 0.0i);
    CHECK((u - v)[1] == 3.0i);
    CHECK((2.0i * v)[0] == 6.0i);

    CHECK_THROWS_AS(u * element(FiniteSpace({"z"}), {1.0}), DimensionMismatch);
}

TEST_CASE("sup norm satisfies the C*-identity") {
    Rng rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        const FiniteSpace s = FiniteSpace::indexed(1 + rng.index(8));
        Eigen::VectorXcd v(static_cast<Eigen::Index>(s.size()));
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            v(i) = std::complex<double>(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        }
        const DiagElement a(s, v);
        const double lhs = (a.involution() * a).sup_norm();
        const double rhs = a.sup_norm() * a.sup_norm();
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("functor_C: identity, contravariance, basis action") {
    const FiniteSpace die = die_space();
    CHECK(max_abs_diff(functor_C(StochMatrix::identity(die)).matrix(),
                       DiagMap::identity(die).matrix()) == 0.0);

    Rng rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        const FiniteSpace xs = FiniteSpace::indexed(2 + rng.index(6));
        const FiniteSpace ys = FiniteSpace::indexed(2 + rng.index(6), "y");
        const FiniteSpace zs = FiniteSpace::indexed(2 + rng.index(6), "z");
        const StochMatrix f = random_stoch_matrix(rng, xs, ys);
        const StochMatrix g = random_stoch_matrix(rng, ys, zs);
        CHECK(max_abs_diff(functor_C(compose(g, f)).matrix(),
                           compose(functor_C(f), functor_C(g)).matrix()) <= 1e-12);
        CHECK(functor_C(f).is_positive());
        CHECK(functor_C(f).is_unital());
    }

    // C^parity applied to e_O indicates the odd faces.
    const DiagMap cf = functor_C(parity_matrix());
    const DiagElement image = cf.apply(DiagElement::basis(parity_space(), 0));
    for (std::size_t face = 0; face < 6; ++face) {
        CHECK(image[face] == (face % 2 == 0 ? 1.0 + 0.0i : 0.0 + 0.0i));
    }
}

TEST_CASE("stochastic_spectrum_fd inverts functor_C") {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const FiniteSpace xs = FiniteSpace::indexed(1 + rng.index(8));
        const FiniteSpace ys = FiniteSpace::indexed(1 + rng.index(8), "y");
        const StochMatrix f = random_stoch_matrix(rng, xs, ys);
        const StochMatrix back = stochastic_spectrum_fd(functor_C(f));
        CHECK((back.entries() - f.entries()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(back.domain() == f.domain());
        CHECK(back.codomain() == f.codomain());
    }

    const FiniteSpace s = FiniteSpace::indexed(3);
    const StochMatrix id = stochastic_spectrum_fd(DiagMap::identity(s));
    CHECK((id.entries() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("stochastic_spectrum_fd rejects non-positive and non-unital maps") {
    const FiniteSpace s = FiniteSpace::indexed(2);
    Eigen::MatrixXcd with_negative(2, 2);
    with_negative << -0.1, 1.1, 1.1, -0.1;
    CHECK_THROWS_AS(stochastic_spectrum_fd(DiagMap(s, s, with_negative)), NotPositive);

    Eigen::MatrixXcd with_imag(2, 2);
    with_imag << 0.5 + 0.1i, 0.5 - 0.1i, 0.5 - 0.1i, 0.5 + 0.1i;
    CHECK_THROWS_AS(stochastic_spectrum_fd(DiagMap(s, s, with_imag)), NotPositive);

    Eigen::MatrixXcd not_unital(2, 2);
    not_unital << 0.5, 0.4, 0.5, 0.4;
    CHECK_THROWS_AS(stochastic_spectrum_fd(DiagMap(s, s, not_unital)), NotUnital);
}

TEST_CASE("star homomorphism detection") {
    CHECK(is_star_homomorphism(functor_C(parity_matrix())));
    CHECK(!is_star_homomorphism(functor_C(random_walk_circle(4))));
    CHECK(is_star_homomorphism(DiagMap::identity(FiniteSpace::indexed(3))));

    // Agrees with the 0/1-entry characterization on random instances.
    Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const FiniteSpace xs = FiniteSpace::indexed(2 + rng.index(6));
        const FiniteSpace ys = FiniteSpace::indexed(2 + rng.index(6), "y");
        const StochMatrix f = trial % 2 == 0 ? from_function(random_label_map(rng, xs, ys))
                                             : random_stoch_matrix(rng, xs, ys);
        CHECK(is_star_homomorphism(functor_C(f)) == f.is_deterministic());
        CHECK(is_star_homomorphism(functor_C(f)) ==
              stochastic_spectrum_fd(functor_C(f)).is_deterministic());
    }
}

TEST_CASE("characters match the brute-force enumeration") {
    CHECK(characters(FiniteSpace::indexed(1)).size() == 1);
    const auto two = characters(FiniteSpace::indexed(2));
    REQUIRE(two.size() == 2);
    CHECK(two[0].point_index == 0);
    CHECK(two[1].point_index == 1);

    for (std::size_t n = 1; n <= 8; ++n) {
        const FiniteSpace s = FiniteSpace::indexed(n);
        const auto fast = characters(s);
        auto slow = brute_force_characters(s);
        REQUIRE(fast.size() == n);
        REQUIRE(slow.size() == n);
        std::sort(slow.begin(), slow.end(), [](const Character& a, const Character& b) {
            return a.point_index < b.point_index;
        });
        for (std::size_t i = 0; i < n; ++i) CHECK(fast[i] == slow[i]);
    }
    CHECK_THROWS_AS(brute_force_characters(FiniteSpace::indexed(13)), BadSize);
}

TEST_CASE("character evaluation and unitality") {
    const FiniteSpace s = FiniteSpace::indexed(3);
    for (const Character& chi : characters(s)) {
        CHECK(chi(DiagElement::unit(s)) == 1.0 + 0.0i);
        const DiagElement a = element(s, {1.0, 2.0, 3.0});
        CHECK(chi(a) == std::complex<double>(static_cast<double>(chi.point_index) + 1.0));
    }
}

TEST_CASE("gelfand transform: unit, isometry, homomorphism, naturality") {
    const FiniteSpace s({"a", "b"});
    const DiagElement unit_image = gelfand_transform(DiagElement::unit(s));
    CHECK(unit_image.space() == spectrum_space(s));
    CHECK(unit_image[0] == 1.0 + 0.0i);
    CHECK(unit_image[1] == 1.0 + 0.0i);

    const DiagElement a = element(s, {3.0, -4.0i});
    CHECK(gelfand_transform(a).sup_norm() == a.sup_norm());
    CHECK(gelfand_transform(a).sup_norm() == 4.0);

    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const FiniteSpace t = FiniteSpace::indexed(1 + rng.index(6));
        Eigen::VectorXcd u(static_cast<Eigen::Index>(t.size()));
        Eigen::VectorXcd v(static_cast<Eigen::Index>(t.size()));
        for (Eigen::Index i = 0; i < u.size(); ++i) {
            u(i) = std::complex<double>(rng.uniform(-1, 1), rng.uniform(-1, 1));
            v(i) = std::complex<double>(rng.uniform(-1, 1), rng.uniform(-1, 1));
        }
        const DiagElement x(t, u), y(t, v);
        CHECK((gelfand_transform(x * y).values() -
               (gelfand_transform(x) * gelfand_transform(y)).values())
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
        CHECK((gelfand_transform(x.involution()).values() -
               gelfand_transform(x).involution().values())
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
        CHECK(gelfand_transform(x).sup_norm() == x.sup_norm());
    }

    // Naturality: Gamma_X o C^f = C^{sigma(f)} o Gamma_Y on all basis
    // elements, with sigma(f) the same matrix transported along h.
    for (int trial = 0; trial < 30; ++trial) {
        const FiniteSpace xs = FiniteSpace::indexed(2 + rng.index(5));
        const FiniteSpace ys = FiniteSpace::indexed(2 + rng.index(5), "y");
        const StochMatrix f = random_stoch_matrix(rng, xs, ys);
        const StochMatrix sigma_f(spectrum_space(xs), spectrum_space(ys), f.entries());
        const DiagMap lhs_map = functor_C(f);
        const DiagMap rhs_map = functor_C(sigma_f);
        for (std::size_t y = 0; y < ys.size(); ++y) {
            const DiagElement lhs = gelfand_transform(lhs_map.apply(DiagElement::basis(ys, y)));
            const DiagElement rhs = rhs_map.apply(gelfand_transform(DiagElement::basis(ys, y)));
            CHECK((lhs.values() - rhs.values()).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("h_map is the canonical bijection onto the spectrum") {
    const FiniteSpace s({"a", "b", "c"});
    const LabelMap h = h_map(s);
    CHECK(h.codomain() == spectrum_space(s));
    CHECK(h.codomain().labels() == std::vector<std::string>{"ev_a", "ev_b", "ev_c"});
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(h.image_index(i) == i);
    CHECK(from_function(h).is_deterministic());
    CHECK((from_function(h).entries() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() ==
          0.0);
}

TEST_CASE("pullback_state") {
    const FiniteSpace die = die_space();
    const DiagElement uniform = dist_to_state(ProbDist::uniform(die));

    const DiagElement same = pullback_state(DiagMap::identity(die), uniform);
    CHECK((same.values() - uniform.values()).cwiseAbs().maxCoeff() == 0.0);

    // Pulling the uniform die state through C^parity lands on (1/2, 1/2),
    // matching the pushforward of the distribution itself.
    const StochMatrix parity = parity_matrix();
    const DiagElement pulled = pullback_state(functor_C(parity), uniform);
    CHECK(pulled.space() == parity_space());
    CHECK(std::abs(pulled[0] - 0.5) <= 1e-15);
    CHECK(std::abs(pulled[1] - 0.5) <= 1e-15);
    const ProbDist pushed = push(parity, ProbDist::uniform(die));
    CHECK((state_to_dist(pulled).weights() - pushed.weights()).cwiseAbs().maxCoeff() <= 1e-15);

    // Positive unital maps preserve the unit mass of a state.
    Rng rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        const FiniteSpace xs = FiniteSpace::indexed(2 + rng.index(5));
        const FiniteSpace ys = FiniteSpace::indexed(2 + rng.index(5), "y");
        const StochMatrix f = random_stoch_matrix(rng, xs, ys);
        const DiagElement omega = dist_to_state(random_prob_dist(rng, xs));
        const DiagElement pull = pullback_state(functor_C(f), omega);
        CHECK(std::abs(pull.values().sum() - 1.0) <= 1e-12);
        CHECK_NOTHROW(state_to_dist(pull));
    }

    const DiagElement not_state = element(die, {2.0, -1.0, 0.0, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(pullback_state(functor_C(parity), not_state), NotAState);
    CHECK_THROWS_AS(pullback_state(DiagMap::identity(parity_space()), uniform),
                    DimensionMismatch);
}
