#include "stochdual/choquet.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace stochdual {

ConvexDecomposition decompose_state(const ProbDist& omega) {
    ConvexDecomposition d;
    for (std::size_t x = 0; x < omega.size(); ++x) {
        if (omega[x] == 0.0) continue;
        d.weights.push_back(omega[x]);
        d.characters.push_back(Character{omega.space(), x});
    }
    return d;
}

ConvexDecomposition decompose_state(const DiagElement& omega) {
    return decompose_state(state_to_dist(omega));
}

ProbDist reconstruct_state(const ConvexDecomposition& d) {
    if (d.characters.empty()) {
        throw NotAState("reconstruct_state: empty decomposition");
    }
    const FiniteSpace& space = d.characters.front().space;
    if (d.weights.size() != d.characters.size()) {
        throw DimensionMismatch("reconstruct_state: one weight per character required");
    }
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.size()));
    for (std::size_t i = 0; i < d.weights.size(); ++i) {
        if (!(d.characters[i].space == space)) {
            throw SpaceMismatch("reconstruct_state: characters live on different spaces");
        }
        // omega(e_x) picks up weight_i exactly when chi_i = ev_x.
        coeffs(static_cast<Eigen::Index>(d.characters[i].point_index)) += d.weights[i];
    }
    return ProbDist(space, std::move(coeffs));
}

MeasureOverMeasures::MeasureOverMeasures(
    std::vector<std::pair<double, AtomicMeasure>> components)
    : components_(std::move(components)) {
    if (components_.empty()) {
        throw BadSize("MeasureOverMeasures: need at least one component");
    }
    double total = 0.0;
    for (auto& [weight, measure] : components_) {
        if (weight < 0.0) {
            if (weight <= -kStochTol) {
                throw NotStochastic("MeasureOverMeasures: negative weight");
            }
            weight = 0.0;
        }
        total += weight;
    }
    if (std::abs(total - 1.0) > kStochTol) {
        throw NotStochastic("MeasureOverMeasures: weights sum to " + std::to_string(total));
    }
}

MeasureOverMeasures mix(double alpha, const MeasureOverMeasures& a,
                        const MeasureOverMeasures& b) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw BadProbability("mix: alpha must lie in [0, 1]");
    }
    std::vector<std::pair<double, AtomicMeasure>> components;
    components.reserve(a.components().size() + b.components().size());
    for (const auto& [w, m] : a.components()) components.emplace_back(alpha * w, m);
    for (const auto& [w, m] : b.components()) components.emplace_back((1.0 - alpha) * w, m);
    return MeasureOverMeasures(std::move(components));
}

AtomicMeasure barycenter(const MeasureOverMeasures& omega) {
    std::vector<Atom> atoms;
    std::map<double, std::size_t> seen;
    for (const auto& [weight, measure] : omega.components()) {
        for (const Atom& a : measure.atoms()) {
            auto [it, fresh] = seen.try_emplace(a.location, atoms.size());
            if (fresh) {
                atoms.push_back(Atom{a.location, weight * a.mass});
            } else {
                atoms[it->second].mass += weight * a.mass;
            }
        }
    }
    return AtomicMeasure(std::move(atoms));
}

std::vector<ConvexDecomposition> stochastic_spectrum_map(const DiagMap& phi) {
    if (!phi.is_positive()) {
        throw NotPositive("stochastic_spectrum_map: map is not positive");
    }
    if (!phi.is_unital()) {
        throw NotUnital("stochastic_spectrum_map: map is not unital");
    }
    const FiniteSpace& y_space = phi.domain_space();
    const FiniteSpace& x_space = phi.codomain_space();
    std::vector<ConvexDecomposition> out;
    out.reserve(x_space.size());
    for (std::size_t x = 0; x < x_space.size(); ++x) {
        // The measure representing ev_x o phi puts weight phi(e_y)_x on ev_y.
        ConvexDecomposition d;
        for (std::size_t y = 0; y < y_space.size(); ++y) {
            double w = phi.matrix()(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y))
                           .real();
            if (w < 0.0) w = 0.0;  // positivity already verified within tolerance
            if (w == 0.0) continue;
            d.weights.push_back(w);
            d.characters.push_back(Character{y_space, y});
        }
        out.push_back(std::move(d));
    }
    return out;
}

namespace {

// Dense weight table: row y = character of the decomposition target, column
// x = source character index.
Eigen::MatrixXd decomposition_table(const std::vector<ConvexDecomposition>& decomps,
                                    std::size_t target_size) {
    Eigen::MatrixXd table =
        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(target_size),
                              static_cast<Eigen::Index>(decomps.size()));
    for (std::size_t x = 0; x < decomps.size(); ++x) {
        const auto& d = decomps[x];
        for (std::size_t i = 0; i < d.weights.size(); ++i) {
            table(static_cast<Eigen::Index>(d.characters[i].point_index),
                  static_cast<Eigen::Index>(x)) += d.weights[i];
        }
    }
    return table;
}

}  // namespace

double functoriality_check(const DiagMap& phi, const DiagMap& psi) {
    // phi : C^Y -> C^X, psi : C^Z -> C^Y; composite phi o psi : C^Z -> C^X.
    const DiagMap composite = compose(phi, psi);
    const std::size_t z_size = psi.domain_space().size();

    const Eigen::MatrixXd via_composite =
        decomposition_table(stochastic_spectrum_map(composite), z_size);

    // Kernel composition of the individual spectra:
    // weight_x(z) = sum_y sigma^phi_x(y) sigma^psi_y(z).
    const Eigen::MatrixXd sigma_phi = decomposition_table(
        stochastic_spectrum_map(phi), phi.domain_space().size());  // y by x
    const Eigen::MatrixXd sigma_psi = decomposition_table(
        stochastic_spectrum_map(psi), z_size);  // z by y
    const Eigen::MatrixXd via_kernels = sigma_psi * sigma_phi;

    return (via_composite - via_kernels).cwiseAbs().maxCoeff();
}

}  // namespace stochdual
