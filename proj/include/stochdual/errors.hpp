#pragma once

#include <stdexcept>
#include <string>

namespace stochdual {

// Shapes or label spaces of two operands do not line up.
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A label map refers to a label outside its codomain.
struct UnknownLabel : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A size parameter is outside the documented range.
struct BadSize : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A probability parameter lies outside [0, 1].
struct BadProbability : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A matrix fails the column-stochastic invariants.
struct NotStochastic : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A linear map sends some basis vector outside the positive cone.
struct NotPositive : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A linear map does not send the unit to the unit.
struct NotUnital : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A coefficient vector is not a state (unit-preserving positive functional).
struct NotAState : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A matrix is not Hermitian within tolerance.
struct NotHermitian : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A matrix fails the density-matrix invariants.
struct NotADensityMatrix : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A Choi matrix has a genuinely negative eigenvalue.
struct NotCompletelyPositive : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Two grids that must coincide do not.
struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Component measures of a mixture live on different spaces.
struct SpaceMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An oracle exceeds its declared bound.
struct BoundViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace stochdual
