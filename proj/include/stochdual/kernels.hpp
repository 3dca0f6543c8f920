#pragma once

// Discretized Markov kernels on compact one-dimensional spaces. Measures are
// finitely supported (atomic); absolutely continuous limits enter only as
// density oracles integrated by quadrature. Grids discretize an interval
// [a, b] or a circle of circumference L into n equal cells with one point at
// each cell midpoint.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "stochdual/errors.hpp"
#include "stochdual/finstoch.hpp"

namespace stochdual {

struct Atom {
    double location;
    double mass;
};

// A finitely supported positive measure; probability by default.
class AtomicMeasure {
public:
    explicit AtomicMeasure(std::vector<Atom> atoms, bool require_probability = true);

    static AtomicMeasure dirac(double location);

    const std::vector<Atom>& atoms() const { return atoms_; }
    double total_mass() const;
    bool is_probability(double tol = kStochTol) const;

private:
    std::vector<Atom> atoms_;
};

// sum mass * phi(location); linear in both arguments.
template <class F>
auto integrate(const AtomicMeasure& mu, F&& phi) {
    using R = std::decay_t<decltype(phi(0.0))>;
    R total{};
    for (const Atom& a : mu.atoms()) total += a.mass * phi(a.location);
    return total;
}

enum class GridKind { Interval, Circle };

class GridSpace {
public:
    static GridSpace interval(double a, double b, std::size_t n_cells);
    static GridSpace circle(double circumference, std::size_t n_cells);

    GridKind kind() const { return kind_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<double>& points() const { return points_; }
    double point(std::size_t i) const { return points_.at(i); }
    // Half-open cell [lo, hi) around point i; cells partition the space.
    std::pair<double, double> cell(std::size_t i) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }

    // Circle coordinates are reduced mod L into [0, L); interval coordinates
    // pass through unchanged.
    double canonicalize(double x) const;
    // Index of the grid point equal to x (after canonicalization); throws
    // GridMismatch when x is not a grid point.
    std::size_t index_of_point(double x, double tol = 1e-9) const;

    friend bool operator==(const GridSpace& a, const GridSpace& b);

private:
    GridSpace(GridKind kind, double lo, double hi, std::size_t n_cells);
    GridKind kind_;
    double lo_;
    double hi_;
    std::vector<double> points_;
};

// A discretized stochastic map: one probability measure on the codomain grid
// per domain point, every atom sitting on a codomain grid point.
class GridKernel {
public:
    GridKernel(GridSpace domain, GridSpace codomain, std::vector<AtomicMeasure> rows);

    static GridKernel identity(const GridSpace& space);
    // entries(z, x) = mass the row at x places on codomain point z
    // (column-stochastic, matching StochMatrix).
    static GridKernel from_matrix(GridSpace domain, GridSpace codomain,
                                  const Eigen::MatrixXd& entries);
    Eigen::MatrixXd to_matrix() const;

    const GridSpace& domain() const { return domain_; }
    const GridSpace& codomain() const { return codomain_; }
    const AtomicMeasure& row(std::size_t x) const { return rows_.at(x); }

private:
    GridSpace domain_;
    GridSpace codomain_;
    std::vector<AtomicMeasure> rows_;
};

// (nu o mu)_x(E) = integral over y of nu_y(E) d mu_x: for atomic rows the
// integral is the finite sum over mu_x's atoms.
GridKernel kernel_compose(const GridKernel& nu, const GridKernel& mu);

// Relocates atoms along f, preserving masses; images that coincide exactly
// (after canonicalization, when a target space is given) are merged.
// Near-coincident atoms are left unmerged.
AtomicMeasure pushforward(const std::function<double(double)>& f, const AtomicMeasure& mu,
                          const GridSpace* canonical_into = nullptr);

// A finite union of half-open intervals [lo, hi).
class IntervalUnion {
public:
    IntervalUnion(std::initializer_list<std::pair<double, double>> parts);
    explicit IntervalUnion(std::vector<std::pair<double, double>> parts);
    bool contains(double x) const;

private:
    std::vector<std::pair<double, double>> parts_;
};

// Total mass of the atoms lying in E.
double eval_on_set(const AtomicMeasure& mu, const IntervalUnion& e);

template <class Pred>
    requires std::predicate<Pred, double>
double eval_on_set(const AtomicMeasure& mu, Pred&& contains) {
    double total = 0.0;
    for (const Atom& a : mu.atoms()) {
        if (contains(a.location)) total += a.mass;
    }
    return total;
}

// True iff x is within tol of a fraction p/q with 1 <= q <= max_denominator
// (best rational approximation via continued fractions). The computable
// stand-in for "x is rational" in the evaluation-map discontinuity demos.
bool near_rational(double x, std::uint64_t max_denominator, double tol = 1e-9);

// mu_n = (1/n) sum_{k=1..n} dirac(k/n) on [0, 1].
AtomicMeasure uniform_dirac_sequence(std::size_t n);

// Normalized Gaussian density exp(-100 x^2)/Z on [-1, 1].
double gaussian_density(double x);

// n atoms at the midpoints of n equal bins of [-1, 1], each carrying the
// integral of gaussian_density over its bin (adaptive Simpson, abs tol 1e-10).
AtomicMeasure gaussian_dirac_approx(std::size_t n);

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10);

// Limit measure given by a density, integrated against test functions by
// composite Simpson on a fixed number of subintervals.
class DensityLimit {
public:
    DensityLimit(std::function<double(double)> density, double a, double b,
                 std::size_t quad_intervals = 10000);

    double integral(const std::function<double(double)>& phi) const;

private:
    std::function<double(double)> density_;
    double a_;
    double b_;
    std::size_t quad_intervals_;
};

using VagueLimit = std::variant<AtomicMeasure, DensityLimit>;

struct TestFunction {
    std::string id;
    std::function<double(double)> eval;
};

// x |-> x^degree, labelled for report tables.
TestFunction monomial_test(std::size_t degree);

struct VagueGap {
    std::size_t n;  // 1-based position in the sequence
    std::string test_id;
    double gap;  // | integral phi d mu_n - integral phi d limit |
};

struct VagueReport {
    std::vector<VagueGap> table;
    double final_max_gap;  // max over tests at the last sequence element
    bool converged;        // final_max_gap <= tol
    double tol;
};

VagueReport vague_convergence_report(const std::vector<AtomicMeasure>& sequence,
                                     const VagueLimit& limit,
                                     const std::vector<TestFunction>& tests, double tol);

// A nonnegative step function on grid cells: each level carries a value and
// the half-open cell-index ranges where it holds.
struct IndexRange {
    std::size_t begin;
    std::size_t end;
};

struct SimpleLevel {
    std::size_t bin;  // dyadic bin index i, value = i * bound / 2^level
    double value;
    std::vector<IndexRange> cells;
};

class SimpleFunction {
public:
    SimpleFunction(std::size_t grid_size, std::vector<SimpleLevel> levels);

    std::size_t grid_size() const { return grid_size_; }
    const std::vector<SimpleLevel>& levels() const { return levels_; }
    double value_at_cell(std::size_t cell) const;
    // Cell indices of dyadic bin i, empty when the bin is unoccupied.
    std::vector<std::size_t> cells_of_bin(std::size_t bin) const;

private:
    std::size_t grid_size_;
    std::vector<SimpleLevel> levels_;  // disjoint by construction
};

// Dyadic lower approximation of phi on the grid: bin i covers the points
// where phi lands in [i*M/2^n, (i+1)*M/2^n), the top bin being closed, and
// the level value is i*M/2^n. Guarantees s_n <= phi <= s_n + M/2^n at every
// grid point and s_n <= s_{n+1} pointwise. Throws BoundViolated when phi
// leaves [0, M] on the grid.
SimpleFunction simple_approx(const std::function<double(double)>& phi, double bound,
                             std::size_t level, const GridSpace& grid);

}  // namespace stochdual
