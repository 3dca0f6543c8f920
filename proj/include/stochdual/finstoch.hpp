#pragma once

// Finite sets, probability distributions, and stochastic maps.
//
// Convention: stochastic matrices are COLUMN-stochastic. A map f from X to Y
// is stored as the |Y| x |X| matrix with entry (y, x) = f_yx, the probability
// that x evolves to y, so every column sums to 1 and applying f to a
// distribution is a plain matrix-vector product. Most Markov-chain texts use
// the row-stochastic transpose; everything in this library follows the
// column convention.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "stochdual/errors.hpp"

namespace stochdual {

// Tolerance for stochasticity checks at construction. Entries in
// (-kStochTol, 0) are clamped to zero and the affected column renormalized.
inline constexpr double kStochTol = 1e-9;

// An ordered finite set of distinct string labels. Equality is by labels,
// not by identity, so two spaces with the same labels are interchangeable.
class FiniteSpace {
public:
    explicit FiniteSpace(std::vector<std::string> labels);

    // Labels "<prefix>0", ..., "<prefix>{n-1}".
    static FiniteSpace indexed(std::size_t n, std::string_view prefix = "x");

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    std::optional<std::size_t> find(std::string_view label) const;
    // Like find() but throws UnknownLabel.
    std::size_t index_of(std::string_view label) const;

    friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
        return a.labels_ == b.labels_;
    }

private:
    std::vector<std::string> labels_;
};

// A probability measure on a FiniteSpace, stored densely.
class ProbDist {
public:
    ProbDist(FiniteSpace space, Eigen::VectorXd weights);

    static ProbDist uniform(FiniteSpace space);
    static ProbDist dirac(FiniteSpace space, std::size_t at);

    const FiniteSpace& space() const { return space_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    double operator[](std::size_t i) const { return weights_(static_cast<Eigen::Index>(i)); }
    std::size_t size() const { return space_.size(); }

private:
    FiniteSpace space_;
    Eigen::VectorXd weights_;
};

// An ordinary function between label spaces, stored as image indices.
class LabelMap {
public:
    LabelMap(FiniteSpace domain, FiniteSpace codomain, std::vector<std::size_t> image);

    // Builds the image table by evaluating f on every domain label; throws
    // UnknownLabel if f produces a label outside the codomain.
    static LabelMap from_labels(FiniteSpace domain, FiniteSpace codomain,
                                const std::function<std::string(const std::string&)>& f);
    static LabelMap identity(FiniteSpace space);

    const FiniteSpace& domain() const { return domain_; }
    const FiniteSpace& codomain() const { return codomain_; }
    std::size_t image_index(std::size_t x) const { return image_.at(x); }

    // g.after(f) is the composite x |-> g(f(x)).
    LabelMap after(const LabelMap& f) const;

private:
    FiniteSpace domain_;
    FiniteSpace codomain_;
    std::vector<std::size_t> image_;
};

// A stochastic map X ~> Y as a column-stochastic |Y| x |X| matrix.
class StochMatrix {
public:
    // Validates entries: nonnegative up to kStochTol and unit column sums.
    StochMatrix(FiniteSpace domain, FiniteSpace codomain, Eigen::MatrixXd entries);

    static StochMatrix identity(FiniteSpace space);
    // Skips validation. For deliberately invalid instances in law checks;
    // regular construction should go through the validating constructor.
    static StochMatrix unchecked(FiniteSpace domain, FiniteSpace codomain,
                                 Eigen::MatrixXd entries);

    const FiniteSpace& domain() const { return domain_; }      // X
    const FiniteSpace& codomain() const { return codomain_; }  // Y
    const Eigen::MatrixXd& entries() const { return entries_; }
    double operator()(std::size_t y, std::size_t x) const {
        return entries_(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x));
    }

    // True iff every entry is within tol of {0, 1}, i.e. the map is the
    // embedding of an ordinary function.
    bool is_deterministic(double tol = kStochTol) const;

    // Validity probe used by law checks; regular instances always pass.
    double max_stochasticity_violation() const;

private:
    StochMatrix() = default;
    FiniteSpace domain_{std::vector<std::string>{"?"}};
    FiniteSpace codomain_{std::vector<std::string>{"?"}};
    Eigen::MatrixXd entries_;
};

// (g o f)_zx = sum_y g_zy f_yx.
StochMatrix compose(const StochMatrix& g, const StochMatrix& f);

// Embeds an ordinary function as the stochastic map f_yx = delta_{y, f(x)}.
StochMatrix from_function(const LabelMap& f);

// Recovers the label map of a deterministic matrix, or nullopt.
std::optional<LabelMap> to_label_map(const StochMatrix& f, double tol = kStochTol);

// Pushes p forward through f: q_y = sum_x f_yx p_x.
ProbDist push(const StochMatrix& f, const ProbDist& p);

// True iff q_y equals the p-mass of the preimage f^{-1}(y) for every y.
bool is_probability_preserving(const LabelMap& f, const ProbDist& p, const ProbDist& q,
                               double tol = kStochTol);

// Applies the endomorphism f to p0 n times; n = 0 returns p0.
ProbDist iterate(const StochMatrix& f, const ProbDist& p0, std::size_t n);

// Nearest-neighbour random walk on a circle of n_points >= 3 points:
// f_ji = 1/2 iff j = i +- 1 mod n.
StochMatrix random_walk_circle(std::size_t n_points);

// One-dimensional periodic heat diffusion on n_points >= 5 points: circulant
// with 0.56 on the diagonal, 0.21 one step away, 0.01 two steps away.
StochMatrix heat_matrix(std::size_t n_points = 20);

}  // namespace stochdual
