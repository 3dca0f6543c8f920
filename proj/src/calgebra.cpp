#include "stochdual/calgebra.hpp"

#include <cmath>
#include <cstdint>

namespace stochdual {

DiagElement::DiagElement(FiniteSpace space, Eigen::VectorXcd values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (static_cast<std::size_t>(values_.size()) != space_.size()) {
        throw DimensionMismatch("DiagElement: value count does not match space size");
    }
}

DiagElement DiagElement::basis(FiniteSpace space, std::size_t index) {
    if (index >= space.size()) {
        throw DimensionMismatch("DiagElement::basis: index out of range");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.size()));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return DiagElement(std::move(space), std::move(v));
}

DiagElement DiagElement::unit(FiniteSpace space) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(space.size()));
    return DiagElement(std::move(space), std::move(v));
}

DiagElement DiagElement::involution() const {
    return DiagElement(space_, values_.conjugate());
}

double DiagElement::sup_norm() const {
    return values_.cwiseAbs().maxCoeff();
}

namespace {
void require_same_space(const DiagElement& a, const DiagElement& b, const char* op) {
    if (!(a.space() == b.space())) {
        throw DimensionMismatch(std::string(op) + ": operands live on different spaces");
    }
}
}  // namespace

DiagElement operator+(const DiagElement& a, const DiagElement& b) {
    require_same_space(a, b, "DiagElement+");
    return DiagElement(a.space_, a.values_ + b.values_);
}

DiagElement operator-(const DiagElement& a, const DiagElement& b) {
    require_same_space(a, b, "DiagElement-");
    return DiagElement(a.space_, a.values_ - b.values_);
}

DiagElement operator*(const DiagElement& a, const DiagElement& b) {
    require_same_space(a, b, "DiagElement*");
    return DiagElement(a.space_, a.values_.cwiseProduct(b.values_));
}

DiagElement operator*(std::complex<double> c, const DiagElement& a) {
    return DiagElement(a.space_, c * a.values_);
}

DiagMap::DiagMap(FiniteSpace domain_space, FiniteSpace codomain_space, Eigen::MatrixXcd matrix)
    : domain_space_(std::move(domain_space)),
      codomain_space_(std::move(codomain_space)),
      matrix_(std::move(matrix)) {
    if (static_cast<std::size_t>(matrix_.rows()) != codomain_space_.size() ||
        static_cast<std::size_t>(matrix_.cols()) != domain_space_.size()) {
        throw DimensionMismatch("DiagMap: matrix must be |codomain| x |domain|");
    }
}

DiagMap DiagMap::identity(FiniteSpace space) {
    const auto n = static_cast<Eigen::Index>(space.size());
    FiniteSpace copy = space;
    return DiagMap(std::move(copy), std::move(space), Eigen::MatrixXcd::Identity(n, n));
}

DiagElement DiagMap::apply(const DiagElement& v) const {
    if (!(v.space() == domain_space_)) {
        throw DimensionMismatch("DiagMap::apply: element lives on the wrong space");
    }
    return DiagElement(codomain_space_, matrix_ * v.values());
}

bool DiagMap::is_positive(double tol) const {
    for (Eigen::Index y = 0; y < matrix_.cols(); ++y) {
        for (Eigen::Index x = 0; x < matrix_.rows(); ++x) {
            const auto v = matrix_(x, y);
            if (std::abs(v.imag()) > tol || v.real() < -tol) return false;
        }
    }
    return true;
}

bool DiagMap::is_unital(double tol) const {
    const Eigen::VectorXcd image_of_unit = matrix_.rowwise().sum();
    for (Eigen::Index x = 0; x < image_of_unit.size(); ++x) {
        if (std::abs(image_of_unit(x) - 1.0) > tol) return false;
    }
    return true;
}

DiagMap compose(const DiagMap& outer, const DiagMap& inner) {
    if (!(inner.codomain_space() == outer.domain_space())) {
        throw DimensionMismatch("compose(DiagMap): codomain of inner must equal domain of outer");
    }
    return DiagMap(inner.domain_space(), outer.codomain_space(),
                   outer.matrix() * inner.matrix());
}

std::complex<double> Character::operator()(const DiagElement& a) const {
    if (!(a.space() == space)) {
        throw DimensionMismatch("Character: element lives on the wrong space");
    }
    return a[point_index];
}

DiagMap functor_C(const StochMatrix& f) {
    return DiagMap(f.codomain(), f.domain(), f.entries().transpose().cast<std::complex<double>>());
}

StochMatrix stochastic_spectrum_fd(const DiagMap& phi) {
    if (!phi.is_positive()) {
        throw NotPositive("stochastic_spectrum_fd: some basis image leaves the positive cone");
    }
    if (!phi.is_unital()) {
        throw NotUnital("stochastic_spectrum_fd: map does not preserve the unit");
    }
    // phi(e_y) = sum_x f_yx e_x, so f_yx is matrix entry (x, y).
    Eigen::MatrixXd entries = phi.matrix().real().transpose();
    return StochMatrix(phi.codomain_space(), phi.domain_space(), std::move(entries));
}

bool is_star_homomorphism(const DiagMap& phi, double tol) {
    if (!phi.is_unital(tol)) return false;
    // Involution preservation on a spanning set forces a real matrix.
    if (phi.matrix().imag().cwiseAbs().maxCoeff() > tol) return false;
    // Multiplicativity on basis pairs: e_y e_y' = delta_{yy'} e_y, so the
    // images must satisfy phi(e_y) phi(e_y') = delta_{yy'} phi(e_y)
    // pointwise.
    const auto& m = phi.matrix();
    for (Eigen::Index y = 0; y < m.cols(); ++y) {
        for (Eigen::Index yp = y; yp < m.cols(); ++yp) {
            for (Eigen::Index x = 0; x < m.rows(); ++x) {
                const std::complex<double> prod = m(x, y) * m(x, yp);
                const std::complex<double> expect = (y == yp) ? m(x, y) : 0.0;
                if (std::abs(prod - expect) > tol) return false;
            }
        }
    }
    return true;
}

std::vector<Character> characters(const FiniteSpace& space) {
    std::vector<Character> out;
    out.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        out.push_back(Character{space, i});
    }
    return out;
}

std::vector<Character> brute_force_characters(const FiniteSpace& space) {
    const std::size_t n = space.size();
    if (n > 12) {
        throw BadSize("brute_force_characters: enumeration capped at 12 points");
    }
    std::vector<Character> out;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        // chi(e_x) = bit x of mask. Unitality: chi(1) = sum_x chi(e_x) = 1.
        // Multiplicativity on distinct basis pairs: chi(e_x) chi(e_x') = 0.
        // Together these hold exactly when one bit is set.
        std::size_t bits = 0;
        std::size_t hot = 0;
        bool multiplicative = true;
        for (std::size_t x = 0; x < n && multiplicative; ++x) {
            if (!(mask & (1u << x))) continue;
            ++bits;
            hot = x;
            for (std::size_t xp = x + 1; xp < n; ++xp) {
                if (mask & (1u << xp)) {
                    multiplicative = false;
                    break;
                }
            }
        }
        if (multiplicative && bits == 1) {
            out.push_back(Character{space, hot});
        }
    }
    return out;
}

FiniteSpace spectrum_space(const FiniteSpace& space) {
    std::vector<std::string> labels;
    labels.reserve(space.size());
    for (const auto& l : space.labels()) {
        labels.push_back("ev_" + l);
    }
    return FiniteSpace(std::move(labels));
}

LabelMap h_map(const FiniteSpace& space) {
    std::vector<std::size_t> image(space.size());
    for (std::size_t i = 0; i < image.size(); ++i) image[i] = i;
    return LabelMap(space, spectrum_space(space), std::move(image));
}

DiagElement gelfand_transform(const DiagElement& a) {
    return DiagElement(spectrum_space(a.space()), a.values());
}

namespace {
void require_state(const Eigen::VectorXcd& w, double tol) {
    std::complex<double> sum = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (std::abs(w(i).imag()) > tol || w(i).real() < -tol) {
            throw NotAState("state coefficients must be real and nonnegative");
        }
        sum += w(i);
    }
    if (std::abs(sum - 1.0) > tol) {
        throw NotAState("state coefficients must sum to 1");
    }
}
}  // namespace

DiagElement pullback_state(const DiagMap& phi, const DiagElement& omega) {
    if (!(omega.space() == phi.codomain_space())) {
        throw DimensionMismatch("pullback_state: state lives on the wrong algebra");
    }
    require_state(omega.values(), kPosTol);
    // (omega o phi)(e_y) = sum_x omega_x phi(e_y)_x.
    return DiagElement(phi.domain_space(), phi.matrix().transpose() * omega.values());
}

ProbDist state_to_dist(const DiagElement& omega) {
    require_state(omega.values(), kPosTol);
    return ProbDist(omega.space(), omega.values().real());
}

DiagElement dist_to_state(const ProbDist& p) {
    return DiagElement(p.space(), p.weights().cast<std::complex<double>>());
}

}  // namespace stochdual
