#include "stochdual/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace stochdual {

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms, bool require_probability)
    : atoms_(std::move(atoms)) {
    for (Atom& a : atoms_) {
        if (a.mass < 0.0) {
            if (a.mass <= -kStochTol) {
                throw NotStochastic("AtomicMeasure: negative mass");
            }
            a.mass = 0.0;
        }
        if (!std::isfinite(a.location)) {
            throw NotStochastic("AtomicMeasure: non-finite atom location");
        }
    }
    if (require_probability && !is_probability()) {
        throw NotStochastic("AtomicMeasure: masses sum to " + std::to_string(total_mass()));
    }
}

AtomicMeasure AtomicMeasure::dirac(double location) {
    return AtomicMeasure({Atom{location, 1.0}});
}

double AtomicMeasure::total_mass() const {
    double total = 0.0;
    for (const Atom& a : atoms_) total += a.mass;
    return total;
}

bool AtomicMeasure::is_probability(double tol) const {
    return std::abs(total_mass() - 1.0) <= tol;
}

GridSpace::GridSpace(GridKind kind, double lo, double hi, std::size_t n_cells)
    : kind_(kind), lo_(lo), hi_(hi) {
    if (n_cells < 2) throw BadSize("GridSpace: need at least 2 cells");
    if (!(hi > lo)) throw BadSize("GridSpace: empty coordinate range");
    const double h = (hi - lo) / static_cast<double>(n_cells);
    points_.reserve(n_cells);
    for (std::size_t i = 0; i < n_cells; ++i) {
        points_.push_back(lo + (static_cast<double>(i) + 0.5) * h);
    }
}

GridSpace GridSpace::interval(double a, double b, std::size_t n_cells) {
    return GridSpace(GridKind::Interval, a, b, n_cells);
}

GridSpace GridSpace::circle(double circumference, std::size_t n_cells) {
    return GridSpace(GridKind::Circle, 0.0, circumference, n_cells);
}

std::pair<double, double> GridSpace::cell(std::size_t i) const {
    if (i >= size()) throw BadSize("GridSpace::cell: index out of range");
    const double h = (hi_ - lo_) / static_cast<double>(size());
    return {lo_ + static_cast<double>(i) * h, lo_ + static_cast<double>(i + 1) * h};
}

double GridSpace::canonicalize(double x) const {
    if (kind_ == GridKind::Interval) return x;
    const double circumference = hi_ - lo_;
    double r = std::fmod(x, circumference);
    if (r < 0.0) r += circumference;
    return r;
}

std::size_t GridSpace::index_of_point(double x, double tol) const {
    const double c = canonicalize(x);
    const double h = (hi_ - lo_) / static_cast<double>(size());
    auto i = static_cast<long>(std::llround((c - lo_) / h - 0.5));
    if (kind_ == GridKind::Circle) {
        i = ((i % static_cast<long>(size())) + static_cast<long>(size())) %
            static_cast<long>(size());
    } else {
        i = std::clamp(i, 0L, static_cast<long>(size()) - 1L);
    }
    if (std::abs(points_[static_cast<std::size_t>(i)] - c) > tol) {
        throw GridMismatch("GridSpace: coordinate " + std::to_string(x) +
                           " is not a grid point");
    }
    return static_cast<std::size_t>(i);
}

bool operator==(const GridSpace& a, const GridSpace& b) {
    return a.kind_ == b.kind_ && a.lo_ == b.lo_ && a.hi_ == b.hi_ &&
           a.points_.size() == b.points_.size();
}

GridKernel::GridKernel(GridSpace domain, GridSpace codomain, std::vector<AtomicMeasure> rows)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), rows_(std::move(rows)) {
    if (rows_.size() != domain_.size()) {
        throw GridMismatch("GridKernel: need one row per domain point");
    }
    for (const auto& row : rows_) {
        if (!row.is_probability()) {
            throw NotStochastic("GridKernel: row is not a probability measure");
        }
        for (const Atom& a : row.atoms()) {
            codomain_.index_of_point(a.location);  // throws GridMismatch off-grid
        }
    }
}

GridKernel GridKernel::identity(const GridSpace& space) {
    std::vector<AtomicMeasure> rows;
    rows.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        rows.push_back(AtomicMeasure::dirac(space.point(i)));
    }
    return GridKernel(space, space, std::move(rows));
}

GridKernel GridKernel::from_matrix(GridSpace domain, GridSpace codomain,
                                   const Eigen::MatrixXd& entries) {
    if (static_cast<std::size_t>(entries.rows()) != codomain.size() ||
        static_cast<std::size_t>(entries.cols()) != domain.size()) {
        throw GridMismatch("GridKernel::from_matrix: entries must be |codomain| x |domain|");
    }
    std::vector<AtomicMeasure> rows;
    rows.reserve(domain.size());
    for (Eigen::Index x = 0; x < entries.cols(); ++x) {
        std::vector<Atom> atoms;
        for (Eigen::Index z = 0; z < entries.rows(); ++z) {
            if (entries(z, x) != 0.0) {
                atoms.push_back(Atom{codomain.point(static_cast<std::size_t>(z)), entries(z, x)});
            }
        }
        rows.push_back(AtomicMeasure(std::move(atoms)));
    }
    return GridKernel(std::move(domain), std::move(codomain), std::move(rows));
}

Eigen::MatrixXd GridKernel::to_matrix() const {
    Eigen::MatrixXd entries = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(codomain_.size()),
                                                    static_cast<Eigen::Index>(domain_.size()));
    for (std::size_t x = 0; x < rows_.size(); ++x) {
        for (const Atom& a : rows_[x].atoms()) {
            entries(static_cast<Eigen::Index>(codomain_.index_of_point(a.location)),
                    static_cast<Eigen::Index>(x)) += a.mass;
        }
    }
    return entries;
}

GridKernel kernel_compose(const GridKernel& nu, const GridKernel& mu) {
    if (!(mu.codomain() == nu.domain())) {
        throw GridMismatch("kernel_compose: intermediate grids differ");
    }
    const GridSpace& z_grid = nu.codomain();
    std::vector<AtomicMeasure> rows;
    rows.reserve(mu.domain().size());
    for (std::size_t x = 0; x < mu.domain().size(); ++x) {
        // (nu o mu)_x({z}) = sum_y nu_y({z}) mu_x({y}).
        std::vector<double> mass(z_grid.size(), 0.0);
        for (const Atom& y_atom : mu.row(x).atoms()) {
            const std::size_t y = nu.domain().index_of_point(y_atom.location);
            for (const Atom& z_atom : nu.row(y).atoms()) {
                mass[z_grid.index_of_point(z_atom.location)] += y_atom.mass * z_atom.mass;
            }
        }
        std::vector<Atom> atoms;
        for (std::size_t z = 0; z < mass.size(); ++z) {
            if (mass[z] != 0.0) atoms.push_back(Atom{z_grid.point(z), mass[z]});
        }
        rows.push_back(AtomicMeasure(std::move(atoms)));
    }
    return GridKernel(mu.domain(), z_grid, std::move(rows));
}

AtomicMeasure pushforward(const std::function<double(double)>& f, const AtomicMeasure& mu,
                          const GridSpace* canonical_into) {
    std::vector<Atom> atoms;
    std::map<double, std::size_t> seen;  // image location -> position in atoms
    for (const Atom& a : mu.atoms()) {
        double image = f(a.location);
        if (canonical_into != nullptr) image = canonical_into->canonicalize(image);
        auto [it, fresh] = seen.try_emplace(image, atoms.size());
        if (fresh) {
            atoms.push_back(Atom{image, a.mass});
        } else {
            atoms[it->second].mass += a.mass;
        }
    }
    return AtomicMeasure(std::move(atoms), /*require_probability=*/false);
}

IntervalUnion::IntervalUnion(std::initializer_list<std::pair<double, double>> parts)
    : parts_(parts) {}

IntervalUnion::IntervalUnion(std::vector<std::pair<double, double>> parts)
    : parts_(std::move(parts)) {}

bool IntervalUnion::contains(double x) const {
    for (const auto& [lo, hi] : parts_) {
        if (x >= lo && x < hi) return true;
    }
    return false;
}

double eval_on_set(const AtomicMeasure& mu, const IntervalUnion& e) {
    return eval_on_set(mu, [&e](double x) { return e.contains(x); });
}

bool near_rational(double x, std::uint64_t max_denominator, double tol) {
    if (max_denominator == 0 || !std::isfinite(x)) return false;
    x = std::abs(x);
    const double frac = x - std::floor(x);

    // Continued-fraction convergents p/q of the fractional part; the best
    // approximation with q <= max_denominator is either the last convergent
    // that fits or a semiconvergent of the one that overflows.
    std::uint64_t p_prev = 1, q_prev = 0;  // h_{-1}/k_{-1}
    std::uint64_t p = 0, q = 1;            // h_0/k_0 for a_0 = 0
    double best_err = std::abs(frac);      // 0/1
    double t = frac;
    for (int iter = 0; iter < 64; ++iter) {
        if (t == 0.0) break;
        t = 1.0 / t;
        if (t > 9.007199254740992e15) break;  // denominators exceed exact doubles
        const auto a = static_cast<std::uint64_t>(std::floor(t));
        t -= std::floor(t);
        const std::uint64_t p_next = a * p + p_prev;
        const std::uint64_t q_next = a * q + q_prev;
        if (q_next > max_denominator) {
            // Best semiconvergent still within the denominator bound.
            const std::uint64_t a_cap = (max_denominator - q_prev) / q;
            if (a_cap > 0) {
                const std::uint64_t ps = a_cap * p + p_prev;
                const std::uint64_t qs = a_cap * q + q_prev;
                best_err = std::min(best_err, std::abs(frac - static_cast<double>(ps) /
                                                                  static_cast<double>(qs)));
            }
            break;
        }
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        best_err = std::min(best_err,
                            std::abs(frac - static_cast<double>(p) / static_cast<double>(q)));
        if (best_err <= tol) return true;
    }
    return best_err <= tol;
}

AtomicMeasure uniform_dirac_sequence(std::size_t n) {
    if (n < 1) throw BadSize("uniform_dirac_sequence: n must be positive");
    std::vector<Atom> atoms;
    atoms.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) {
        atoms.push_back(
            Atom{static_cast<double>(k) / static_cast<double>(n), 1.0 / static_cast<double>(n)});
    }
    return AtomicMeasure(std::move(atoms));
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    struct Recurse {
        const std::function<double(double)>& f;
        double operator()(double lo, double hi, double flo, double fmid, double fhi,
                          double whole, double eps, int depth) const {
            const double mid = 0.5 * (lo + hi);
            const double lmid = 0.5 * (lo + mid);
            const double rmid = 0.5 * (mid + hi);
            const double flmid = f(lmid);
            const double frmid = f(rmid);
            const double left = (mid - lo) / 6.0 * (flo + 4.0 * flmid + fmid);
            const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frmid + fhi);
            const double delta = left + right - whole;
            if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
                return left + right + delta / 15.0;
            }
            return (*this)(lo, mid, flo, flmid, fmid, left, 0.5 * eps, depth - 1) +
                   (*this)(mid, hi, fmid, frmid, fhi, right, 0.5 * eps, depth - 1);
        }
    };
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return Recurse{f}(a, b, fa, fm, fb, whole, tol, 48);
}

double gaussian_density(double x) {
    static const double normalizer =
        adaptive_simpson([](double y) { return std::exp(-100.0 * y * y); }, -1.0, 1.0, 1e-13);
    return std::exp(-100.0 * x * x) / normalizer;
}

AtomicMeasure gaussian_dirac_approx(std::size_t n) {
    if (n < 1) throw BadSize("gaussian_dirac_approx: n must be positive");
    const double bin_tol = 1e-10 / static_cast<double>(n);
    std::vector<Atom> atoms;
    atoms.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) {
        const double lo = -1.0 + 2.0 * static_cast<double>(k - 1) / static_cast<double>(n);
        const double hi = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(n);
        const double midpoint = -1.0 + (2.0 * static_cast<double>(k) - 1.0) / static_cast<double>(n);
        atoms.push_back(Atom{midpoint, adaptive_simpson(gaussian_density, lo, hi, bin_tol)});
    }
    return AtomicMeasure(std::move(atoms));
}

DensityLimit::DensityLimit(std::function<double(double)> density, double a, double b,
                           std::size_t quad_intervals)
    : density_(std::move(density)), a_(a), b_(b), quad_intervals_(quad_intervals) {
    if (!(b_ > a_)) throw BadSize("DensityLimit: empty integration range");
    if (quad_intervals_ < 2) throw BadSize("DensityLimit: need at least 2 subintervals");
    if (quad_intervals_ % 2 == 1) ++quad_intervals_;
}

double DensityLimit::integral(const std::function<double(double)>& phi) const {
    // Composite Simpson on quad_intervals_ equal subintervals.
    const auto n = quad_intervals_;
    const double h = (b_ - a_) / static_cast<double>(n);
    auto f = [&](std::size_t i) {
        const double x = a_ + static_cast<double>(i) * h;
        return phi(x) * density_(x);
    };
    double total = f(0) + f(n);
    for (std::size_t i = 1; i < n; ++i) {
        total += (i % 2 == 1 ? 4.0 : 2.0) * f(i);
    }
    return total * h / 3.0;
}

TestFunction monomial_test(std::size_t degree) {
    return TestFunction{
        "x^" + std::to_string(degree),
        [degree](double x) { return std::pow(x, static_cast<double>(degree)); }};
}

VagueReport vague_convergence_report(const std::vector<AtomicMeasure>& sequence,
                                     const VagueLimit& limit,
                                     const std::vector<TestFunction>& tests, double tol) {
    std::vector<double> limit_integrals;
    limit_integrals.reserve(tests.size());
    for (const auto& t : tests) {
        if (const auto* atomic = std::get_if<AtomicMeasure>(&limit)) {
            limit_integrals.push_back(integrate(*atomic, t.eval));
        } else {
            limit_integrals.push_back(std::get<DensityLimit>(limit).integral(t.eval));
        }
    }

    VagueReport report;
    report.tol = tol;
    report.final_max_gap = 0.0;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        double max_gap = 0.0;
        for (std::size_t j = 0; j < tests.size(); ++j) {
            const double gap = std::abs(integrate(sequence[i], tests[j].eval) - limit_integrals[j]);
            report.table.push_back(VagueGap{i + 1, tests[j].id, gap});
            max_gap = std::max(max_gap, gap);
        }
        if (i + 1 == sequence.size()) report.final_max_gap = max_gap;
    }
    report.converged = !sequence.empty() && report.final_max_gap <= tol;
    return report;
}

SimpleFunction::SimpleFunction(std::size_t grid_size, std::vector<SimpleLevel> levels)
    : grid_size_(grid_size), levels_(std::move(levels)) {
    std::vector<bool> covered(grid_size_, false);
    for (const auto& level : levels_) {
        if (level.value < 0.0) throw BoundViolated("SimpleFunction: negative level value");
        for (const auto& range : level.cells) {
            if (range.end > grid_size_ || range.begin >= range.end) {
                throw BadSize("SimpleFunction: cell range out of bounds");
            }
            for (std::size_t c = range.begin; c < range.end; ++c) {
                if (covered[c]) {
                    throw BadSize("SimpleFunction: overlapping level sets");
                }
                covered[c] = true;
            }
        }
    }
}

double SimpleFunction::value_at_cell(std::size_t cell) const {
    for (const auto& level : levels_) {
        for (const auto& range : level.cells) {
            if (cell >= range.begin && cell < range.end) return level.value;
        }
    }
    return 0.0;
}

std::vector<std::size_t> SimpleFunction::cells_of_bin(std::size_t bin) const {
    std::vector<std::size_t> cells;
    for (const auto& level : levels_) {
        if (level.bin != bin) continue;
        for (const auto& range : level.cells) {
            for (std::size_t c = range.begin; c < range.end; ++c) cells.push_back(c);
        }
    }
    return cells;
}

SimpleFunction simple_approx(const std::function<double(double)>& phi, double bound,
                             std::size_t level, const GridSpace& grid) {
    if (!(bound > 0.0)) throw BadSize("simple_approx: bound must be positive");
    if (level > 40) throw BadSize("simple_approx: dyadic level capped at 40");
    const double scale = std::ldexp(1.0, static_cast<int>(level));  // 2^n
    const auto top = static_cast<std::size_t>(scale) - 1;

    std::vector<std::size_t> bin_of(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = phi(grid.point(i));
        if (v < 0.0 || v > bound) {
            throw BoundViolated("simple_approx: oracle leaves [0, bound] at grid point " +
                                std::to_string(i));
        }
        // v lands in F_i = [i*M/2^n, (i+1)*M/2^n); the top bin is closed.
        bin_of[i] = std::min(static_cast<std::size_t>(std::floor(v * scale / bound)), top);
    }

    // Group consecutive grid cells with equal bins into ranges.
    std::map<std::size_t, std::vector<IndexRange>> ranges_by_bin;
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= grid.size(); ++i) {
        if (i == grid.size() || bin_of[i] != bin_of[begin]) {
            ranges_by_bin[bin_of[begin]].push_back(IndexRange{begin, i});
            begin = i;
        }
    }
    std::vector<SimpleLevel> levels;
    levels.reserve(ranges_by_bin.size());
    for (auto& [bin, cells] : ranges_by_bin) {
        levels.push_back(SimpleLevel{bin, static_cast<double>(bin) * bound / scale,
                                     std::move(cells)});
    }
    return SimpleFunction(grid.size(), std::move(levels));
}

}  // namespace stochdual
