#pragma once

// Finite-dimensional commutative C*-algebras: C^X with pointwise operations
// and sup norm, positive unital maps between them, the contravariant functor
// taking a stochastic map f : X ~> Y to the algebra map C^Y -> C^X, and its
// inverse recovering f from a positive unital map. Characters and the
// Gelfand transform are realized at finite dimension, where characters are
// exactly the point evaluations.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "stochdual/errors.hpp"
#include "stochdual/finstoch.hpp"

namespace stochdual {

// Tolerance for positivity/unitality classification of maps and states.
inline constexpr double kPosTol = 1e-9;

// An element of C^X: one complex value per label.
class DiagElement {
public:
    DiagElement(FiniteSpace space, Eigen::VectorXcd values);

    static DiagElement basis(FiniteSpace space, std::size_t index);  // e_x
    static DiagElement unit(FiniteSpace space);                      // 1_X

    const FiniteSpace& space() const { return space_; }
    const Eigen::VectorXcd& values() const { return values_; }
    std::complex<double> operator[](std::size_t i) const {
        return values_(static_cast<Eigen::Index>(i));
    }

    DiagElement involution() const;  // componentwise conjugate
    double sup_norm() const;

    friend DiagElement operator+(const DiagElement& a, const DiagElement& b);
    friend DiagElement operator-(const DiagElement& a, const DiagElement& b);
    friend DiagElement operator*(const DiagElement& a, const DiagElement& b);  // pointwise
    friend DiagElement operator*(std::complex<double> c, const DiagElement& a);

private:
    FiniteSpace space_;
    Eigen::VectorXcd values_;
};

// A linear map C^Y -> C^X on standard bases; column y of the matrix is the
// image of e_y. Positivity and unitality are checked, never assumed.
class DiagMap {
public:
    DiagMap(FiniteSpace domain_space, FiniteSpace codomain_space, Eigen::MatrixXcd matrix);

    static DiagMap identity(FiniteSpace space);

    const FiniteSpace& domain_space() const { return domain_space_; }      // Y
    const FiniteSpace& codomain_space() const { return codomain_space_; }  // X
    const Eigen::MatrixXcd& matrix() const { return matrix_; }

    DiagElement apply(const DiagElement& v) const;

    // Checked on the basis {e_y} only; every positive element of C^Y is a
    // nonnegative combination of basis vectors, so this suffices.
    bool is_positive(double tol = kPosTol) const;
    bool is_unital(double tol = kPosTol) const;

private:
    FiniteSpace domain_space_;
    FiniteSpace codomain_space_;
    Eigen::MatrixXcd matrix_;
};

// outer o inner: apply inner first.
DiagMap compose(const DiagMap& outer, const DiagMap& inner);

// A character of C^X; at finite dimension these are the evaluations ev_x.
struct Character {
    FiniteSpace space;
    std::size_t point_index;

    std::complex<double> operator()(const DiagElement& a) const;

    friend bool operator==(const Character& a, const Character& b) {
        return a.space == b.space && a.point_index == b.point_index;
    }
};

// The contravariant algebra functor on a stochastic map f : X ~> Y:
// C^f(e_y) = sum_x f_yx e_x, i.e. the matrix is the transpose of f's.
DiagMap functor_C(const StochMatrix& f);

// Inverse of functor_C on positive unital maps: reads f_yx off the basis
// images. Throws NotPositive / NotUnital when the map fails either check.
StochMatrix stochastic_spectrum_fd(const DiagMap& phi);

// True iff phi preserves the unit and involution and is multiplicative on
// all basis pairs. Equivalent to stochastic_spectrum_fd(phi) being a
// function embedding (0/1 entries).
bool is_star_homomorphism(const DiagMap& phi, double tol = kPosTol);

// The |X| point evaluations, in label order.
std::vector<Character> characters(const FiniteSpace& space);

// Independent enumeration: scans all {0,1}-valued functionals on the basis
// and keeps the unital multiplicative ones. Sizes up to 12 only.
std::vector<Character> brute_force_characters(const FiniteSpace& space);

// The spectrum of C^X as a label space: one label "ev_<x>" per point.
FiniteSpace spectrum_space(const FiniteSpace& space);

// The canonical bijection x |-> ev_x onto spectrum_space(space).
LabelMap h_map(const FiniteSpace& space);

// Gelfand transform: the function chi |-> chi(a) on the spectrum. At finite
// dimension this is a's value vector transported to spectrum_space.
DiagElement gelfand_transform(const DiagElement& a);

// Pulls the state omega on phi's codomain algebra back to omega o phi on
// phi's domain algebra. omega is given by its basis coefficients; throws
// NotAState if they do not form a state.
DiagElement pullback_state(const DiagMap& phi, const DiagElement& omega);

// Coefficient-vector view of a state, per the identification of states on
// C^X with probability measures on X.
ProbDist state_to_dist(const DiagElement& omega);
DiagElement dist_to_state(const ProbDist& p);

}  // namespace stochdual
