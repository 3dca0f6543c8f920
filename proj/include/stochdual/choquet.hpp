#pragma once

// Convex structure of states: every state on C^X decomposes uniquely over
// the characters (the extreme points of the state simplex), positive unital
// maps induce stochastic maps between spectra, and measures over measures
// collapse to their barycenter.

#include <cstddef>
#include <utility>
#include <vector>

#include "stochdual/calgebra.hpp"
#include "stochdual/errors.hpp"
#include "stochdual/finstoch.hpp"
#include "stochdual/kernels.hpp"

namespace stochdual {

// A state written as sum_i weight_i * chi_i over distinct characters.
// Zero-weight characters are omitted.
struct ConvexDecomposition {
    std::vector<double> weights;
    std::vector<Character> characters;

    bool is_dirac() const { return weights.size() == 1; }
};

// The finite-dimensional decomposition: weight of ev_x is omega(e_x).
// No limits are involved; the weights are read off the coefficients.
ConvexDecomposition decompose_state(const ProbDist& omega);
// Coefficient-vector entry point; throws NotAState on non-state input.
ConvexDecomposition decompose_state(const DiagElement& omega);

// Evaluates sum_i weight_i chi_i on the basis, recovering the coefficient
// vector. Mutually inverse with decompose_state.
ProbDist reconstruct_state(const ConvexDecomposition& d);

// A probability measure on probability measures: finitely many weighted
// component measures on a common space.
class MeasureOverMeasures {
public:
    explicit MeasureOverMeasures(std::vector<std::pair<double, AtomicMeasure>> components);

    const std::vector<std::pair<double, AtomicMeasure>>& components() const {
        return components_;
    }

private:
    std::vector<std::pair<double, AtomicMeasure>> components_;
};

// Convex mixture alpha * a + (1 - alpha) * b of measures over measures.
MeasureOverMeasures mix(double alpha, const MeasureOverMeasures& a,
                        const MeasureOverMeasures& b);

// b(Omega)(E) = integral of ev_E over Omega: the mass-weighted mixture of
// the component measures, atoms merged on exactly equal locations.
AtomicMeasure barycenter(const MeasureOverMeasures& omega);

// The stochastic spectrum of a positive unital map phi : C^Y -> C^X at
// finite dimension: each character ev_x of C^X is sent to the decomposition
// over characters of C^Y with weight phi(e_y)_x on ev_y. Entry [x] of the
// result corresponds to characters(codomain)[x].
std::vector<ConvexDecomposition> stochastic_spectrum_map(const DiagMap& phi);

// Max entrywise gap between the spectrum of the composite linear map
// phi o psi and the kernel composition of the individual spectra. Zero (up
// to rounding) by functoriality.
double functoriality_check(const DiagMap& phi, const DiagMap& psi);

}  // namespace stochdual
