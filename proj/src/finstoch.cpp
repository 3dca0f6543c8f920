#include "stochdual/finstoch.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace stochdual {

FiniteSpace::FiniteSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw BadSize("FiniteSpace: need at least one label");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) {
            throw UnknownLabel("FiniteSpace: duplicate label '" + l + "'");
        }
    }
}

FiniteSpace FiniteSpace::indexed(std::size_t n, std::string_view prefix) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(std::string(prefix) + std::to_string(i));
    }
    return FiniteSpace(std::move(labels));
}

std::optional<std::size_t> FiniteSpace::find(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return i;
    }
    return std::nullopt;
}

std::size_t FiniteSpace::index_of(std::string_view label) const {
    if (auto i = find(label)) return *i;
    throw UnknownLabel("FiniteSpace: no label '" + std::string(label) + "'");
}

namespace {

// Clamps tiny negatives to zero. Returns true if anything was clamped.
bool clamp_small_negatives(Eigen::VectorXd& v, double tol) {
    bool clamped = false;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) < 0.0) {
            if (v(i) <= -tol) return clamped;  // left for the caller to reject
            v(i) = 0.0;
            clamped = true;
        }
    }
    return clamped;
}

}  // namespace

ProbDist::ProbDist(FiniteSpace space, Eigen::VectorXd weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
    if (static_cast<std::size_t>(weights_.size()) != space_.size()) {
        throw DimensionMismatch("ProbDist: weight count does not match space size");
    }
    bool clamped = false;
    for (Eigen::Index i = 0; i < weights_.size(); ++i) {
        if (weights_(i) < 0.0) {
            if (weights_(i) <= -kStochTol) {
                throw NotStochastic("ProbDist: negative weight at index " + std::to_string(i));
            }
            weights_(i) = 0.0;
            clamped = true;
        }
    }
    const double sum = weights_.sum();
    if (std::abs(sum - 1.0) > kStochTol) {
        throw NotStochastic("ProbDist: weights sum to " + std::to_string(sum));
    }
    if (clamped) weights_ /= sum;
}

ProbDist ProbDist::uniform(FiniteSpace space) {
    const auto n = static_cast<Eigen::Index>(space.size());
    return ProbDist(std::move(space), Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
}

ProbDist ProbDist::dirac(FiniteSpace space, std::size_t at) {
    if (at >= space.size()) {
        throw DimensionMismatch("ProbDist::dirac: index out of range");
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.size()));
    w(static_cast<Eigen::Index>(at)) = 1.0;
    return ProbDist(std::move(space), std::move(w));
}

LabelMap::LabelMap(FiniteSpace domain, FiniteSpace codomain, std::vector<std::size_t> image)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), image_(std::move(image)) {
    if (image_.size() != domain_.size()) {
        throw DimensionMismatch("LabelMap: image table does not cover the domain");
    }
    for (std::size_t v : image_) {
        if (v >= codomain_.size()) {
            throw UnknownLabel("LabelMap: image index out of codomain");
        }
    }
}

LabelMap LabelMap::from_labels(FiniteSpace domain, FiniteSpace codomain,
                               const std::function<std::string(const std::string&)>& f) {
    std::vector<std::size_t> image;
    image.reserve(domain.size());
    for (const auto& x : domain.labels()) {
        image.push_back(codomain.index_of(f(x)));
    }
    return LabelMap(std::move(domain), std::move(codomain), std::move(image));
}

LabelMap LabelMap::identity(FiniteSpace space) {
    std::vector<std::size_t> image(space.size());
    for (std::size_t i = 0; i < image.size(); ++i) image[i] = i;
    FiniteSpace copy = space;
    return LabelMap(std::move(copy), std::move(space), std::move(image));
}

LabelMap LabelMap::after(const LabelMap& f) const {
    if (!(f.codomain_ == domain_)) {
        throw DimensionMismatch("LabelMap::after: spaces do not line up");
    }
    std::vector<std::size_t> image;
    image.reserve(f.domain_.size());
    for (std::size_t x = 0; x < f.domain_.size(); ++x) {
        image.push_back(image_[f.image_[x]]);
    }
    return LabelMap(f.domain_, codomain_, std::move(image));
}

StochMatrix::StochMatrix(FiniteSpace domain, FiniteSpace codomain, Eigen::MatrixXd entries)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), entries_(std::move(entries)) {
    if (static_cast<std::size_t>(entries_.rows()) != codomain_.size() ||
        static_cast<std::size_t>(entries_.cols()) != domain_.size()) {
        throw DimensionMismatch("StochMatrix: entries must be |codomain| x |domain|");
    }
    for (Eigen::Index x = 0; x < entries_.cols(); ++x) {
        Eigen::VectorXd col = entries_.col(x);
        const bool clamped = clamp_small_negatives(col, kStochTol);
        if (col.minCoeff() < 0.0) {
            throw NotStochastic("StochMatrix: negative entry in column " + std::to_string(x));
        }
        const double sum = col.sum();
        if (std::abs(sum - 1.0) > kStochTol) {
            throw NotStochastic("StochMatrix: column " + std::to_string(x) + " sums to " +
                                std::to_string(sum));
        }
        if (clamped) col /= sum;
        entries_.col(x) = col;
    }
}

StochMatrix StochMatrix::identity(FiniteSpace space) {
    const auto n = static_cast<Eigen::Index>(space.size());
    FiniteSpace copy = space;
    return StochMatrix(std::move(copy), std::move(space), Eigen::MatrixXd::Identity(n, n));
}

StochMatrix StochMatrix::unchecked(FiniteSpace domain, FiniteSpace codomain,
                                   Eigen::MatrixXd entries) {
    StochMatrix f;
    f.domain_ = std::move(domain);
    f.codomain_ = std::move(codomain);
    f.entries_ = std::move(entries);
    return f;
}

bool StochMatrix::is_deterministic(double tol) const {
    for (Eigen::Index x = 0; x < entries_.cols(); ++x) {
        for (Eigen::Index y = 0; y < entries_.rows(); ++y) {
            const double v = entries_(y, x);
            if (std::abs(v) > tol && std::abs(v - 1.0) > tol) return false;
        }
    }
    return true;
}

double StochMatrix::max_stochasticity_violation() const {
    double worst = 0.0;
    for (Eigen::Index x = 0; x < entries_.cols(); ++x) {
        worst = std::max(worst, -entries_.col(x).minCoeff());
        worst = std::max(worst, std::abs(entries_.col(x).sum() - 1.0));
    }
    return worst;
}

StochMatrix compose(const StochMatrix& g, const StochMatrix& f) {
    if (!(f.codomain() == g.domain())) {
        throw DimensionMismatch("compose: codomain of f must equal domain of g");
    }
    return StochMatrix(f.domain(), g.codomain(), g.entries() * f.entries());
}

StochMatrix from_function(const LabelMap& f) {
    Eigen::MatrixXd entries = Eigen::MatrixXd::Zero(
        static_cast<Eigen::Index>(f.codomain().size()),
        static_cast<Eigen::Index>(f.domain().size()));
    for (std::size_t x = 0; x < f.domain().size(); ++x) {
        entries(static_cast<Eigen::Index>(f.image_index(x)), static_cast<Eigen::Index>(x)) = 1.0;
    }
    return StochMatrix(f.domain(), f.codomain(), std::move(entries));
}

std::optional<LabelMap> to_label_map(const StochMatrix& f, double tol) {
    std::vector<std::size_t> image;
    image.reserve(f.domain().size());
    for (std::size_t x = 0; x < f.domain().size(); ++x) {
        std::optional<std::size_t> hit;
        for (std::size_t y = 0; y < f.codomain().size(); ++y) {
            const double v = f(y, x);
            if (std::abs(v - 1.0) <= tol) {
                if (hit) return std::nullopt;
                hit = y;
            } else if (std::abs(v) > tol) {
                return std::nullopt;
            }
        }
        if (!hit) return std::nullopt;
        image.push_back(*hit);
    }
    return LabelMap(f.domain(), f.codomain(), std::move(image));
}

ProbDist push(const StochMatrix& f, const ProbDist& p) {
    if (!(p.space() == f.domain())) {
        throw DimensionMismatch("push: distribution lives on the wrong space");
    }
    return ProbDist(f.codomain(), f.entries() * p.weights());
}

bool is_probability_preserving(const LabelMap& f, const ProbDist& p, const ProbDist& q,
                               double tol) {
    if (!(p.space() == f.domain()) || !(q.space() == f.codomain())) return false;
    Eigen::VectorXd preimage_mass = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(q.size()));
    for (std::size_t x = 0; x < p.size(); ++x) {
        preimage_mass(static_cast<Eigen::Index>(f.image_index(x))) += p[x];
    }
    return (preimage_mass - q.weights()).cwiseAbs().maxCoeff() <= tol;
}

ProbDist iterate(const StochMatrix& f, const ProbDist& p0, std::size_t n) {
    if (!(f.domain() == f.codomain())) {
        throw DimensionMismatch("iterate: map must be an endomorphism");
    }
    ProbDist p = p0;
    for (std::size_t step = 0; step < n; ++step) {
        p = push(f, p);
    }
    return p;
}

StochMatrix random_walk_circle(std::size_t n_points) {
    if (n_points < 3) {
        throw BadSize("random_walk_circle: need at least 3 points");
    }
    const auto n = static_cast<Eigen::Index>(n_points);
    Eigen::MatrixXd entries = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        entries((i + 1) % n, i) += 0.5;
        entries((i + n - 1) % n, i) += 0.5;
    }
    FiniteSpace space = FiniteSpace::indexed(n_points);
    FiniteSpace copy = space;
    return StochMatrix(std::move(copy), std::move(space), std::move(entries));
}

StochMatrix heat_matrix(std::size_t n_points) {
    if (n_points < 5) {
        throw BadSize("heat_matrix: need at least 5 points");
    }
    const auto n = static_cast<Eigen::Index>(n_points);
    Eigen::MatrixXd entries = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        entries(i, i) = 0.56;
        entries((i + 1) % n, i) = 0.21;
        entries((i + n - 1) % n, i) = 0.21;
        entries((i + 2) % n, i) = 0.01;
        entries((i + n - 2) % n, i) = 0.01;
    }
    FiniteSpace space = FiniteSpace::indexed(n_points);
    FiniteSpace copy = space;
    return StochMatrix(std::move(copy), std::move(space), std::move(entries));
}

}  // namespace stochdual
