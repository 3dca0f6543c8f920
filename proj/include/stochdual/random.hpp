#pragma once

// Seeded builders for randomized law checks and property tests.
//
// The generator is std::mt19937_64 (Mersenne Twister, 64-bit), whose output
// sequence is fixed by the C++ standard, and uniform doubles are derived
// from the top 53 bits only, so a given seed reproduces identical instances
// on every platform.

#include <cstdint>
#include <random>

#include "stochdual/finstoch.hpp"
#include "stochdual/quantum.hpp"

namespace stochdual {

class Rng {
public:
    explicit Rng(std::uint64_t seed = 42) : engine_(seed) {}

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Uniform in {0, ..., n-1}.
    std::size_t index(std::size_t n) {
        return std::min(static_cast<std::size_t>(uniform() * static_cast<double>(n)), n - 1);
    }

private:
    std::mt19937_64 engine_;
};

// Strictly positive columns, each normalized to sum 1.
inline StochMatrix random_stoch_matrix(Rng& rng, FiniteSpace domain, FiniteSpace codomain) {
    Eigen::MatrixXd entries(static_cast<Eigen::Index>(codomain.size()),
                            static_cast<Eigen::Index>(domain.size()));
    for (Eigen::Index x = 0; x < entries.cols(); ++x) {
        for (Eigen::Index y = 0; y < entries.rows(); ++y) {
            entries(y, x) = rng.uniform(0.05, 1.0);
        }
        entries.col(x) /= entries.col(x).sum();
    }
    return StochMatrix(std::move(domain), std::move(codomain), std::move(entries));
}

inline ProbDist random_prob_dist(Rng& rng, FiniteSpace space) {
    Eigen::VectorXd w(static_cast<Eigen::Index>(space.size()));
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = rng.uniform(0.05, 1.0);
    w /= w.sum();
    return ProbDist(std::move(space), std::move(w));
}

inline LabelMap random_label_map(Rng& rng, FiniteSpace domain, FiniteSpace codomain) {
    std::vector<std::size_t> image(domain.size());
    for (auto& v : image) v = rng.index(codomain.size());
    return LabelMap(std::move(domain), std::move(codomain), std::move(image));
}

inline CMatrix random_complex_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = std::complex<double>(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
    }
    return m;
}

inline CMatrix random_hermitian(Rng& rng, Eigen::Index dim) {
    const CMatrix g = random_complex_matrix(rng, dim, dim);
    return 0.5 * (g + g.adjoint()).eval();
}

inline DensityMatrix random_density(Rng& rng, Eigen::Index dim) {
    const CMatrix g = random_complex_matrix(rng, dim, dim);
    CMatrix gram = g * g.adjoint();
    gram /= gram.trace();
    return DensityMatrix(0.5 * (gram + gram.adjoint()));
}

}  // namespace stochdual
